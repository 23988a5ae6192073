#pragma once

// Conversion between the monomial (Taylor) basis and the Mahler basis
// binom(x, alpha) = prod_i binom(x_i, alpha_i), and the norm identity
//   sup_b |c_b| r^b = sup_a |m_a| / |a!| r^a.
// The multivariate conversion is the tensor product of the one-variable
// Stirling conversions.

#include <cstdint>
#include <vector>

#include "dagger/check.hpp"
#include "dagger/series.hpp"

namespace dagger {

struct MahlerFamily {
  std::size_t dimension = 0;
  unsigned cap = kNoTruncation;
  TruncatedSeries::Terms coeffs;
  bool exact = true;

  Scalar coeff(const MultiIndex& alpha) const;
};

/// m_a = sum_{b >= a} c_b prod_i s(b_i, a_i) a_i!. Rejects truncated input.
MahlerFamily taylor_to_mahler(const TruncatedSeries& f);
/// c_b = sum_{a >= b} (m_a / a!) prod_i a(a_i, b_i). Rejects truncated input.
TruncatedSeries mahler_to_taylor(const MahlerFamily& m);

/// sup_a |m_a| / |a!| p^{sum rho_i a_i}.
NormBound mahler_norm(const MahlerFamily& m, const RadiusVector& rho, unsigned p);

/// sum_a m_a binom(x, a).
Scalar mahler_evaluate(const MahlerFamily& m, std::span<const Scalar> x);

struct NormIdentityResult {
  bool equal = false;
  LogMag gauss = LogMag::bottom();
  LogMag mahler = LogMag::bottom();
};

/// Compares gauss_norm(f) with mahler_norm(taylor_to_mahler(f)) exactly.
/// Requires every rho_i > 0 and f exact.
NormIdentityResult verify_norm_identity(const TruncatedSeries& f, const RadiusVector& rho, unsigned p);

class SampleRng;

/// Up to six terms of degree <= max_degree with coefficients u p^e / w,
/// e in [-2, 3].
TruncatedSeries random_exact_polynomial(std::size_t d, unsigned max_degree, unsigned p, SampleRng& rng);

/// gauss_norm(f g) = gauss_norm(f) gauss_norm(g) on seeded pairs, radii
/// drawn per variable from the given exponents.
CheckRecord check_gauss_multiplicativity(unsigned p, std::size_t d, unsigned max_degree, std::span<const Scalar> radii,
                                         unsigned samples, std::uint64_t seed);
/// Norm identity (radii must be positive), Taylor -> Mahler -> Taylor round
/// trip and sum m_a binom(x, a) = f(x) at integer points.
std::vector<CheckRecord> check_mahler(unsigned p, std::size_t d, unsigned max_degree, std::span<const Scalar> radii,
                                      unsigned samples, std::uint64_t seed);
/// v(n!) = (n - s_p(n))/(p-1) against the exponent of p in n! for n <= n_max.
CheckRecord check_factorial_valuation(unsigned p, unsigned n_max);

}  // namespace dagger
