#pragma once

// Distributions on a p-valued group at truncated level. A distribution is
// stored by its moments mu_b = lambda(Z^b) for |b| <= cap and by its
// coefficients d_a in the expansion lambda = sum d_a b^a, where
// b^a = (g_1 - 1)^{a_1} ... (g_d - 1)^{a_d}. The two are related by
//   mu_b = sum_{a <= b} d_a prod_i s(b_i, a_i) a_i!.
//
// Finite combinations of Dirac measures additionally keep their atoms, so
// their moments are available to any degree.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dagger/check.hpp"
#include "dagger/group.hpp"
#include "dagger/series.hpp"

namespace dagger {

class SampleRng;

struct Atom {
  Scalar weight;
  GroupPoint point;
};

class Distribution {
 public:
  using Terms = TruncatedSeries::Terms;

  /// sum w_k delta_{x_k}; exact.
  static Distribution from_atoms(GroupPtr g, std::vector<Atom> atoms, unsigned cap);
  /// sum d_a b^a with every |a| <= cap; exact.
  static Distribution from_dcoeffs(GroupPtr g, Terms dcoeffs, unsigned cap);
  /// Moments only, |b| <= cap; truncated.
  static Distribution from_moments(GroupPtr g, Terms moments, unsigned cap);

  const PValuedGroup& group() const { return *group_; }
  const GroupPtr& shared_group() const { return group_; }
  unsigned cap() const { return cap_; }
  /// True when the distribution is a finite Dirac combination whose atoms are
  /// kept, so moments of every degree are known.
  bool exact() const { return exact_; }
  /// True when every nonzero d_a has |a| <= cap, so norms computed from the
  /// stored coefficients are exact rather than lower bounds.
  bool support_complete() const { return support_complete_; }

  const Terms& moments() const { return moments_; }
  const Terms& dcoeffs() const { return dcoeffs_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  Scalar moment(const MultiIndex& beta) const;
  Scalar dcoeff(const MultiIndex& alpha) const;
  Scalar total_mass() const { return moment(MultiIndex(std::vector<unsigned>(group_->dimension(), 0))); }

  /// Dense moments for every |b| <= degree in graded-lex order. Degrees
  /// above the cap need exact().
  std::vector<Scalar> moment_vector(unsigned degree) const;

  /// Lowers the cap, or (for exact distributions) raises it.
  Distribution with_cap(unsigned cap) const;

  friend Distribution operator+(const Distribution& a, const Distribution& b);
  friend Distribution operator-(const Distribution& a, const Distribution& b);
  friend Distribution operator*(const Scalar& c, const Distribution& a);

 private:
  friend class Convolver;
  Distribution(GroupPtr g, unsigned cap) : group_(std::move(g)), cap_(cap) {}
  void set_atoms(std::vector<Atom> atoms);

  GroupPtr group_;
  unsigned cap_ = 0;
  Terms moments_;
  Terms dcoeffs_;
  std::vector<Atom> atoms_;
  bool exact_ = false;
  bool support_complete_ = false;
};

/// Moments x^b, d_a = binom(x, a).
Distribution dirac(GroupPtr g, const GroupPoint& x, unsigned cap);
/// b^a; requires |a| <= cap.
Distribution b_monomial(GroupPtr g, const MultiIndex& alpha, unsigned cap);

/// d_a = sum_{b <= a} mu_b prod_i a(a_i, b_i) / a_i!, and the inverse map.
TruncatedSeries::Terms dcoeffs_from_moments(const TruncatedSeries::Terms& moments, std::size_t d, unsigned cap);
TruncatedSeries::Terms moments_from_dcoeffs(const TruncatedSeries::Terms& dcoeffs, std::size_t d, unsigned cap);

enum class ProductOrder {
  /// (lambda * mu)(f) = (lambda x mu)(f(xy)), so delta_x * delta_y = delta_{xy}.
  Standard,
  /// delta_x * delta_y = delta_{yx}.
  Opposite,
};

/// Convolution to a fixed output cap. The table of F^c for |c| <= cap is
/// built once and reused for every pair.
class Convolver {
 public:
  Convolver(GroupPtr g, unsigned out_cap);

  unsigned out_cap() const { return out_cap_; }
  /// Moment degree the inputs must provide: out_cap * degmax(F).
  unsigned input_degree() const { return input_degree_; }

  /// Throws std::invalid_argument if a truncated input has too small a cap.
  Distribution operator()(const Distribution& a, const Distribution& b,
                          ProductOrder order = ProductOrder::Standard) const;

 private:
  struct KernelTerm {
    std::size_t x;  // position of the X-exponent among indices_up_to(d, input_degree)
    std::size_t y;
    Scalar coeff;
  };

  GroupPtr group_;
  unsigned out_cap_;
  unsigned input_degree_;
  std::vector<MultiIndex> outputs_;
  std::vector<std::vector<KernelTerm>> kernel_;
};

Distribution convolve(const Distribution& a, const Distribution& b, unsigned out_cap,
                      ProductOrder order = ProductOrder::Standard);

/// ||lambda||_s = sup |d_a| s^{tau a}, s = p^{-sigma}, tau a = sum omega_i a_i.
NormBound st_norm(const Distribution& lambda, const Scalar& sigma);
/// sup |d_a| s^{|a|}
NormBound st_norm_prime(const Distribution& lambda, const Scalar& sigma);
/// sup |a! d_a| s^{|a|}
NormBound dagger_seminorm(const Distribution& lambda, const Scalar& sigma);
/// sup |a! d_a| p^{-sum tau_{N,i} a_i}
NormBound dagger_norm(const Distribution& lambda, unsigned N);

/// A random finite combination: one or two Dirac measures at small
/// nonnegative integer points, or a combination of b^a with |a| <= max_degree.
Distribution random_distribution(GroupPtr g, SampleRng& rng, unsigned cap, unsigned max_degree = 2);

/// Dirac homomorphism, associativity, two-sided unit and the opposite order
/// on seeded Dirac samples.
std::vector<CheckRecord> check_convolution_algebra(GroupPtr g, unsigned samples, std::uint64_t seed, unsigned cap);

/// ||lambda * mu||_s <= ||lambda||_s ||mu||_s on seeded pairs, one record per
/// sigma. The convolutions are shared between the sigmas.
std::vector<CheckRecord> check_submultiplicative(GroupPtr g, std::span<const Scalar> sigmas, unsigned trials,
                                                 std::uint64_t seed, unsigned cap);
CheckRecord check_submultiplicative(GroupPtr g, const Scalar& sigma, unsigned trials, std::uint64_t seed,
                                    unsigned cap);
/// ||lambda * mu||_N <= ||lambda||_N ||mu||_N on seeded pairs, one record per N.
std::vector<CheckRecord> check_banach_submult_N(GroupPtr g, std::span<const unsigned> Ns, unsigned trials,
                                                std::uint64_t seed, unsigned cap);
CheckRecord check_banach_submult_N(GroupPtr g, unsigned N, unsigned trials, std::uint64_t seed, unsigned cap);

/// |d_a| s^{tau a} <= |a! d_a| (s^{min omega} theta^{-1})^{|a|} on the support,
/// under sigma * min omega > 1/(p-1).
CheckRecord check_contact_embedding(const PValuedGroup& g, const Scalar& sigma,
                                    std::span<const Distribution> samples);
/// Part (1): |d_a| s^{tau a} <= |a! d_a| r^{-a} when r_j s^{min omega} theta^{-1} < 1.
/// Part (2): |a! d_a| r^{-a} <= |d_a| s^{tau a} prod_j (s^{-max omega} r_j^{-1} theta)^{a_j} prod_j (1 + a_j)^C
/// when s^{-max omega} r_j^{-1} theta < 1, with the least integer C >= 1 that works.
std::vector<CheckRecord> check_comparison_maps(const PValuedGroup& g, unsigned N, const Scalar& sigma,
                                               std::span<const Distribution> samples);
/// ||lambda||_N <= ||lambda||_{N+1} for 1 <= N <= n_max.
CheckRecord check_norm_tower(std::span<const Distribution> samples, unsigned n_max);
/// ||lambda||'_{s^{max omega}} <= ||lambda||_s <= ||lambda||'_{s^{min omega}}.
CheckRecord check_norm_sandwich(std::span<const Distribution> samples, const Scalar& sigma);

}  // namespace dagger
