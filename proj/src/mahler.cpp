#include "dagger/mahler.hpp"

#include <algorithm>
#include <stdexcept>

#include "dagger/rng.hpp"

namespace dagger {

Scalar MahlerFamily::coeff(const MultiIndex& alpha) const {
  auto it = coeffs.find(alpha);
  return it == coeffs.end() ? Scalar(0) : it->second;
}

MahlerFamily taylor_to_mahler(const TruncatedSeries& f) {
  if (!f.exact()) throw std::invalid_argument("taylor_to_mahler needs an exact polynomial");
  MahlerFamily m;
  m.dimension = f.dimension();
  m.cap = f.cap();
  const auto& table = stirling_table(static_cast<unsigned>(std::max(f.degree(), 0)));
  for (const auto& [beta, c] : f.terms()) {
    for (const MultiIndex& alpha : indices_below(beta)) {
      Integer factor = 1;
      for (std::size_t i = 0; i < beta.size(); ++i) {
        factor *= table.second(beta[i], alpha[i]) * factorial(alpha[i]);
      }
      if (factor != 0) m.coeffs[alpha] += c * Scalar(factor);
    }
  }
  std::erase_if(m.coeffs, [](const auto& kv) { return kv.second == 0; });
  return m;
}

TruncatedSeries mahler_to_taylor(const MahlerFamily& m) {
  if (!m.exact) throw std::invalid_argument("mahler_to_taylor needs a finitely supported exact family");
  unsigned top = 0;
  for (const auto& [alpha, c] : m.coeffs) top = std::max(top, *std::max_element(alpha.begin(), alpha.end()));
  const auto& table = stirling_table(top);
  TruncatedSeries::Terms terms;
  for (const auto& [alpha, c] : m.coeffs) {
    const Scalar scaled = c / Scalar(alpha.factorial());
    for (const MultiIndex& beta : indices_below(alpha)) {
      Integer factor = 1;
      for (std::size_t i = 0; i < alpha.size(); ++i) factor *= table.falling(alpha[i], beta[i]);
      if (factor != 0) terms[beta] += scaled * Scalar(factor);
    }
  }
  return TruncatedSeries(m.dimension, m.cap, std::move(terms), true);
}

NormBound mahler_norm(const MahlerFamily& m, const RadiusVector& rho, unsigned p) {
  if (rho.size() != m.dimension) throw std::invalid_argument("mahler_norm: radius vector length mismatch");
  LogMag best = LogMag::bottom();
  for (const auto& [alpha, c] : m.coeffs) {
    // |m_a| / |a!| p^{rho.a} = p^{-v(m_a) + v(a!) + rho.a}
    Scalar e = factorial_valuation(alpha, p);
    for (std::size_t i = 0; i < alpha.size(); ++i) e += rho[i] * alpha[i];
    best = max(best, LogMag::of(c, p).times_power(e));
  }
  return NormBound{best, m.exact};
}

Scalar mahler_evaluate(const MahlerFamily& m, std::span<const Scalar> x) {
  if (x.size() != m.dimension) throw std::invalid_argument("mahler_evaluate: length mismatch");
  Scalar sum = 0;
  for (const auto& [alpha, c] : m.coeffs) {
    Scalar term = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) term *= binomial(x[i], alpha[i]);
    sum += term;
  }
  return sum;
}

NormIdentityResult verify_norm_identity(const TruncatedSeries& f, const RadiusVector& rho, unsigned p) {
  for (const auto& r : rho.exponents()) {
    if (r <= 0) throw std::invalid_argument("norm identity needs radii p^rho with rho > 0");
  }
  NormIdentityResult result;
  result.gauss = gauss_norm(f, rho, p).value;
  result.mahler = mahler_norm(taylor_to_mahler(f), rho, p).value;
  result.equal = result.gauss == result.mahler;
  return result;
}

// ---------------------------------------------------------------------------

TruncatedSeries random_exact_polynomial(std::size_t d, unsigned max_degree, unsigned p, SampleRng& rng) {
  const auto choices = indices_up_to(d, max_degree);
  TruncatedSeries::Terms terms;
  const auto count = 1 + rng.below(6);
  for (std::uint64_t k = 0; k < count; ++k) {
    Scalar c(Integer(static_cast<long>(rng.between(1, 3L * p * p * p))), Integer(static_cast<long>(rng.between(1, 4))));
    c.canonicalize();
    const auto e = rng.between(-2, 3);
    if (e > 0) c *= power(Scalar(p), static_cast<unsigned>(e));
    if (e < 0) c /= power(Scalar(p), static_cast<unsigned>(-e));
    if (rng.coin()) c = -c;
    terms[choices[rng.below(choices.size())]] += c;
  }
  return TruncatedSeries(d, kNoTruncation, std::move(terms));
}

namespace {

RadiusVector random_radius(std::size_t d, std::span<const Scalar> radii, SampleRng& rng) {
  std::vector<Scalar> rho;
  for (std::size_t i = 0; i < d; ++i) rho.push_back(radii[rng.below(radii.size())]);
  return RadiusVector(std::move(rho));
}

std::vector<std::pair<std::string, std::string>> sample_params(unsigned p, std::size_t d, unsigned max_degree,
                                                               unsigned samples, std::uint64_t seed) {
  return {{"p", std::to_string(p)},
          {"d", std::to_string(d)},
          {"max_degree", std::to_string(max_degree)},
          {"samples", std::to_string(samples)},
          {"seed", std::to_string(seed)}};
}

void note(CheckRecord& rec, unsigned k, const std::string& text) {
  if (!rec.witness) rec.witness = "sample " + std::to_string(k) + ": " + text;
}

}  // namespace

CheckRecord check_gauss_multiplicativity(unsigned p, std::size_t d, unsigned max_degree, std::span<const Scalar> radii,
                                         unsigned samples, std::uint64_t seed) {
  if (radii.empty()) throw std::invalid_argument("no radii given");
  SampleRng rng(seed);
  CheckRecord rec;
  rec.id = "gauss.multiplicative";
  rec.anchor = "|fg|_rho = |f|_rho |g|_rho";
  rec.params = sample_params(p, d, max_degree, samples, seed);
  for (unsigned k = 0; k < samples; ++k) {
    const auto f = random_exact_polynomial(d, max_degree, p, rng);
    const auto g = random_exact_polynomial(d, max_degree, p, rng);
    const auto rho = random_radius(d, radii, rng);
    const LogMag lhs = gauss_norm(f * g, rho, p).value;
    const LogMag rhs = gauss_norm(f, rho, p).value * gauss_norm(g, rho, p).value;
    if (lhs != rhs) note(rec, k, "p^" + lhs.exponent_string() + " != p^" + rhs.exponent_string());
  }
  rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return rec;
}

std::vector<CheckRecord> check_mahler(unsigned p, std::size_t d, unsigned max_degree, std::span<const Scalar> radii,
                                      unsigned samples, std::uint64_t seed) {
  if (radii.empty()) throw std::invalid_argument("no radii given");
  SampleRng rng(seed);
  const auto params = sample_params(p, d, max_degree, samples, seed);
  CheckRecord identity = make_record("mahler.norm-identity", "sup |c_b| r^b = sup |m_a| / |a!| r^a", params);
  CheckRecord round_trip = make_record("mahler.round-trip", "Mahler to Taylor after Taylor to Mahler is the identity", params);
  CheckRecord expansion = make_record("mahler.expansion", "f(x) = sum m_a binom(x, a)", params);
  for (unsigned k = 0; k < samples; ++k) {
    const auto f = random_exact_polynomial(d, max_degree, p, rng);
    const auto rho = random_radius(d, radii, rng);
    const auto result = verify_norm_identity(f, rho, p);
    if (!result.equal) {
      note(identity, k, "Gauss side p^" + result.gauss.exponent_string() + ", Mahler side p^" +
                            result.mahler.exponent_string());
    }
    const auto m = taylor_to_mahler(f);
    if (mahler_to_taylor(m) != f) note(round_trip, k, "round trip changed the polynomial");
    std::vector<Scalar> x;
    for (std::size_t i = 0; i < d; ++i) x.emplace_back(static_cast<long>(rng.between(-20, 20)));
    if (mahler_evaluate(m, x) != evaluate(f, x)) note(expansion, k, "values differ");
  }
  std::vector<CheckRecord> out{identity, round_trip, expansion};
  for (auto& rec : out) rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return out;
}

CheckRecord check_factorial_valuation(unsigned p, unsigned n_max) {
  CheckRecord rec;
  rec.id = "mahler.factorial-valuation";
  rec.anchor = "v(n!) = (n - s_p(n)) / (p - 1)";
  rec.params = {{"p", std::to_string(p)}, {"n_max", std::to_string(n_max)}};
  Integer fact = 1;
  for (unsigned n = 0; n <= n_max; ++n) {
    if (n > 0) fact *= n;
    const Scalar direct(Integer(static_cast<unsigned long>(integer_valuation(fact, p))));
    if (factorial_valuation(n, p) != direct) {
      rec.witness = "n = " + std::to_string(n) + ": formula " + format_rational(factorial_valuation(n, p)) +
                    ", factorization " + format_rational(direct);
      break;
    }
  }
  rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return rec;
}

}  // namespace dagger
