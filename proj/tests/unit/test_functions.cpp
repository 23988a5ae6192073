#include <gtest/gtest.h>

#include "dagger/functions.hpp"
#include "dagger/mahler.hpp"
#include "dagger/rng.hpp"

using namespace dagger;

namespace {

Scalar q(long a, long b = 1) {
  Scalar r(a, b);
  r.canonicalize();
  return r;
}

TruncatedSeries V(std::size_t d, std::size_t i) { return TruncatedSeries::variable(d, i); }

}  // namespace

TEST(Functions, CoordinateEvaluation) {
  const auto g = builtin_heisenberg(3);
  const auto z3 = DaggerFunction::coordinate(g, 2);
  const auto e1 = make_point(*g, {q(1), q(0), q(0)});
  const auto e2 = make_point(*g, {q(0), q(1), q(0)});
  EXPECT_EQ(eval_at(z3, multiply(*g, e1, e2)), 0);
  EXPECT_EQ(eval_at(z3, multiply(*g, e2, e1)), -3);
  EXPECT_THROW(DaggerFunction(g, V(2, 0)), std::invalid_argument);
  EXPECT_THROW(DaggerFunction(g, V(3, 0).as_truncated()), std::invalid_argument);
}

TEST(Functions, Comultiplication) {
  const auto g = builtin_heisenberg(3);
  const auto m = comul(DaggerFunction::coordinate(g, 2));
  EXPECT_EQ(m, V(6, 2) + V(6, 5) - q(3) * V(6, 3) * V(6, 1));
  // m*(Z1 Z2) = (X1 + Y1)(X2 + Y2)
  const DaggerFunction f(g, V(3, 0) * V(3, 1));
  EXPECT_EQ(comul(f), (V(6, 0) + V(6, 3)) * (V(6, 1) + V(6, 4)));
}

TEST(Functions, InversePullback) {
  const auto g = builtin_heisenberg(3);
  const auto i3 = inv_pullback(DaggerFunction::coordinate(g, 2));
  EXPECT_EQ(i3.body(), q(-1) * V(3, 2) - q(3) * V(3, 0) * V(3, 1));
  SampleRng rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_point(*g, rng, 5);
    EXPECT_EQ(eval_at(i3, x), invert(*g, x).coords[2]);
  }
  EXPECT_EQ(inv_pullback(i3).body(), V(3, 2));
}

TEST(Functions, RightTranslate) {
  const auto g = builtin_heisenberg(3);
  const auto z3 = DaggerFunction::coordinate(g, 2);
  const auto h = make_point(*g, {q(1), q(0), q(0)});
  EXPECT_EQ(right_translate(z3, h).body(), V(3, 2) - q(3) * V(3, 1));
  const auto h2 = make_point(*g, {q(0), q(2), q(5)});
  EXPECT_EQ(right_translate(z3, h2).body(), V(3, 2) + TruncatedSeries::constant(3, q(5)));
  // R_{h'} R_h = R_{h' h}
  const auto composed = right_translate(right_translate(z3, h), h2);
  EXPECT_EQ(composed.body(), right_translate(z3, multiply(*g, h2, h)).body());
}

TEST(Functions, Pairing) {
  const auto g = builtin_heisenberg(3);
  const DaggerFunction f(g, q(2) * V(3, 0) * V(3, 2) + V(3, 1));
  const auto x = make_point(*g, {q(4), q(1), q(7)});
  EXPECT_EQ(pair(dirac(g, x, 2), f), eval_at(f, x));
  // b^a(f) is the Mahler coefficient m_a.
  const auto m = taylor_to_mahler(f.body());
  for (const auto& a : indices_up_to(3, 2)) EXPECT_EQ(pair(b_monomial(g, a, 2), f), m.coeff(a));

  const auto t = Distribution::from_moments(g, {{MultiIndex{0, 0, 0}, q(1)}}, 1);
  EXPECT_THROW(pair(t, f), std::invalid_argument);
}

TEST(Functions, ConvolutionIsDualToComultiplication) {
  const auto g = builtin_heisenberg(3);
  SampleRng rng(13);
  const DaggerFunction f(g, V(3, 2) * V(3, 0) + q(5) * V(3, 1) * V(3, 1) - V(3, 2));
  for (int t = 0; t < 10; ++t) {
    const auto lambda = random_distribution(g, rng, 4);
    const auto mu = random_distribution(g, rng, 4);
    EXPECT_EQ(pair(convolve(lambda, mu, 2), f), pair_product(lambda, mu, comul(f)));
  }
}

TEST(Functions, SuiteChecks) {
  for (const char* tag : {"heisenberg:3", "abelian:2:2"}) {
    for (const auto& rec : check_function_side(builtin_group(tag), 10, 4, 6)) {
      EXPECT_EQ(rec.verdict, Verdict::Pass) << tag << " " << rec.id << " " << rec.witness.value_or("");
    }
  }
}
