#include <gtest/gtest.h>

#include "dagger/rng.hpp"
#include "dagger/series.hpp"

using namespace dagger;

namespace {

TruncatedSeries X(std::size_t d, std::size_t i, unsigned cap = kNoTruncation) {
  return TruncatedSeries::variable(d, i, cap);
}

Scalar q(long a, long b = 1) {
  Scalar r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Series, ConstructionDropsZerosAndHighTerms) {
  TruncatedSeries::Terms t{{MultiIndex{0, 0}, q(0)}, {MultiIndex{1, 0}, q(2)}, {MultiIndex{3, 0}, q(5)}};
  const TruncatedSeries f(2, 2, t);
  EXPECT_EQ(f.terms().size(), 1U);
  EXPECT_FALSE(f.exact());
  EXPECT_EQ(f.coeff(MultiIndex{1, 0}), 2);
  EXPECT_EQ(f.degree(), 1);
  EXPECT_EQ(TruncatedSeries::zero(2).degree(), -1);
  EXPECT_THROW(TruncatedSeries(2, 2, TruncatedSeries::Terms{{MultiIndex{1}, q(1)}}), std::invalid_argument);
}

TEST(Series, BinomialSquare) {
  const auto f = X(2, 0) + X(2, 1);
  const auto sq = f * f;
  EXPECT_EQ(sq.coeff(MultiIndex{2, 0}), 1);
  EXPECT_EQ(sq.coeff(MultiIndex{1, 1}), 2);
  EXPECT_EQ(sq.coeff(MultiIndex{0, 2}), 1);
  EXPECT_EQ(power(f, 3).coeff(MultiIndex{2, 1}), 3);
  EXPECT_EQ(power(f, 0), TruncatedSeries::constant(2, q(1)));
  EXPECT_TRUE((f - f).is_zero());
}

TEST(Series, TruncationClearsExactFlag) {
  const auto f = X(1, 0, 3);
  EXPECT_TRUE(f.exact());
  const auto f3 = power(f, 3);
  EXPECT_TRUE(f3.exact());
  const auto f4 = f3 * f;
  EXPECT_TRUE(f4.is_zero());
  EXPECT_FALSE(f4.exact());
  // A product that stays below the cap keeps the flag.
  EXPECT_TRUE((X(1, 0, 3) * X(1, 0, 3)).exact());
  EXPECT_FALSE(f.as_truncated().exact());
  EXPECT_EQ(f3.with_cap(5).cap(), 5U);
  EXPECT_FALSE(power(X(1, 0), 4).with_cap(2).exact());
}

TEST(Series, SubstituteComposes) {
  // f(u, v) = u*v + u with u = X + Y, v = X*Y
  const auto f = X(2, 0) * X(2, 1) + X(2, 0);
  const std::vector<TruncatedSeries> g{X(2, 0) + X(2, 1), X(2, 0) * X(2, 1)};
  const auto h = substitute(f, g);
  const auto expected = (X(2, 0) + X(2, 1)) * (X(2, 0) * X(2, 1)) + X(2, 0) + X(2, 1);
  EXPECT_EQ(h, expected);
  const std::vector<TruncatedSeries> bad{X(2, 0) + TruncatedSeries::constant(2, q(1)), X(2, 1)};
  EXPECT_THROW(substitute(f, bad), std::invalid_argument);
}

TEST(Series, SubstituteMatchesEvaluation) {
  SampleRng rng(5);
  const auto f = q(3) * power(X(2, 0), 2) * X(2, 1) + q(1, 2) * X(2, 1) + q(-7) * X(2, 0);
  const std::vector<TruncatedSeries> g{X(3, 0) * X(3, 1) + X(3, 2), q(2) * X(3, 2) + power(X(3, 1), 2)};
  const auto h = substitute(f, g);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Scalar> x{q(rng.between(-9, 9)), q(rng.between(-9, 9), 4), q(rng.between(-9, 9))};
    const std::vector<Scalar> gx{evaluate(g[0], x), evaluate(g[1], x)};
    EXPECT_EQ(evaluate(h, x), evaluate(f, gx));
  }
}

TEST(Series, PartialEvaluate) {
  // X1*X2 + 3*X2^2 with X1 = 2 -> 2*X + 3*X^2
  const auto f = X(2, 0) * X(2, 1) + q(3) * power(X(2, 1), 2);
  const std::vector<std::optional<Scalar>> values{q(2), std::nullopt};
  const auto g = partial_evaluate(f, values);
  EXPECT_EQ(g.dimension(), 1U);
  EXPECT_EQ(g, q(2) * X(1, 0) + q(3) * power(X(1, 0), 2));
}

TEST(Series, ToString) {
  const auto f = X(2, 0) + q(3) * power(X(2, 1), 2);
  const auto s = f.to_string();
  EXPECT_NE(s.find("X1"), std::string::npos);
  EXPECT_NE(s.find("X2^2"), std::string::npos);
  EXPECT_EQ(TruncatedSeries::zero(1).to_string(), "0");
}

TEST(GaussNorm, Examples) {
  // |9 X^2 + X/3| on radius p^{1/2}, p = 3: max(3^{-2} 3^{1}, 3^{1} 3^{1/2}) = 3^{3/2}
  const auto f = q(9) * power(X(1, 0), 2) + q(1, 3) * X(1, 0);
  const auto n = gauss_norm(f, RadiusVector::uniform(1, q(1, 2)), 3);
  EXPECT_TRUE(n.exact);
  EXPECT_EQ(n.value, LogMag::power(q(3, 2)));
  EXPECT_TRUE(gauss_norm(TruncatedSeries::zero(1), RadiusVector::uniform(1, q(0)), 3).value.is_bottom());
  EXPECT_FALSE(gauss_norm(f.as_truncated(), RadiusVector::uniform(1, q(0)), 3).exact);
  EXPECT_THROW(RadiusVector({q(-1)}), std::invalid_argument);
  EXPECT_THROW(gauss_norm(f, RadiusVector::uniform(2, q(0)), 3), std::invalid_argument);
}

TEST(GaussNorm, MultiplicativeOnSamples) {
  SampleRng rng(11);
  for (unsigned p : {2U, 3U, 5U}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto sample = [&] {
        TruncatedSeries f = TruncatedSeries::zero(2);
        for (int k = 0; k < 4; ++k) {
          const MultiIndex a{static_cast<unsigned>(rng.below(4)), static_cast<unsigned>(rng.below(4))};
          const Scalar c = q(rng.between(-50, 50), static_cast<long>(rng.below(8)) + 1);
          f = f + TruncatedSeries::monomial(a, c);
        }
        return f;
      };
      const auto f = sample();
      const auto g = sample();
      const RadiusVector rho({q(static_cast<long>(rng.below(3)), 4), q(static_cast<long>(rng.below(3)), 2)});
      EXPECT_EQ(gauss_norm(f * g, rho, p).value, gauss_norm(f, rho, p).value * gauss_norm(g, rho, p).value);
    }
  }
}

TEST(BinomialPoly, AgreesWithBinomialAtIntegers) {
  const MultiIndex alpha{3, 2};
  const auto b = binomial_poly(alpha);
  for (int x = -4; x <= 6; ++x) {
    for (int y = -4; y <= 6; ++y) {
      const std::vector<Scalar> pt{q(x), q(y)};
      EXPECT_EQ(evaluate(b, pt), binomial(q(x), 3) * binomial(q(y), 2));
    }
  }
}

TEST(VariableNames, Default) {
  const auto names = variable_names(3, "Y");
  EXPECT_EQ(names, (std::vector<std::string>{"Y1", "Y2", "Y3"}));
}
