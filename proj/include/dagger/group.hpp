#pragma once

// Saturated p-valued groups in coordinates of the first kind relative to an
// ordered basis g_1..g_d: points are x in Z_p^d standing for
// g_1^{x_1} ... g_d^{x_d}, the group law is a d-tuple F of polynomials in
// (X_1..X_d, Y_1..Y_d) and inversion a d-tuple I of polynomials in X.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dagger/check.hpp"
#include "dagger/padic.hpp"
#include "dagger/series.hpp"

namespace dagger {

struct GroupPoint {
  std::vector<Scalar> coords;

  std::size_t size() const { return coords.size(); }
  bool is_identity() const;
  std::string to_string() const;
  friend bool operator==(const GroupPoint& a, const GroupPoint& b) { return a.coords == b.coords; }
};

/// An independent realization of the group used to cross-check the
/// coordinate group law: psi maps coordinates into the model, where the
/// multiplication is computed directly.
class GroupModel {
 public:
  virtual ~GroupModel() = default;
  virtual std::string tag() const = 0;
  virtual std::vector<Scalar> embed(const GroupPoint& x) const = 0;
  virtual GroupPoint coordinates(const std::vector<Scalar>& element) const = 0;
  virtual std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const = 0;
  virtual std::vector<Scalar> invert(const std::vector<Scalar>& a) const = 0;
};

/// Z_p^d written additively.
std::shared_ptr<const GroupModel> additive_model(std::size_t d);
/// Unitriangular 3x3 matrices (a,b,c) over pZ_p with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
std::shared_ptr<const GroupModel> heisenberg_model(unsigned p);
/// Looks up "abelian" / "heisenberg" for the given p and d; throws otherwise.
std::shared_ptr<const GroupModel> model_for_tag(std::string_view tag, unsigned p, std::size_t d);

/// Thrown by the group constructor and the loader; carries every violated
/// invariant, not just the first.
class GroupValidationError : public std::invalid_argument {
 public:
  explicit GroupValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class PValuedGroup {
 public:
  /// Validates eagerly: prime p, omega_i > 1/(p-1), omega_i - 1/(p-1) <= 1,
  /// exact polynomial F and I with coefficients in Z_p, F(0,0) = 0,
  /// F(X,0) = X, F(0,Y) = Y and I(0) = 0.
  PValuedGroup(std::string name, unsigned p, std::vector<Scalar> omega, std::vector<TruncatedSeries> law,
               std::vector<TruncatedSeries> inverse, std::shared_ptr<const GroupModel> model = nullptr);

  const std::string& name() const { return name_; }
  unsigned p() const { return p_; }
  std::size_t dimension() const { return omega_.size(); }
  const std::vector<Scalar>& omega() const { return omega_; }
  const std::vector<TruncatedSeries>& law() const { return law_; }
  const std::vector<TruncatedSeries>& inverse() const { return inverse_; }
  const GroupModel* model() const { return model_.get(); }
  std::shared_ptr<const GroupModel> shared_model() const { return model_; }

  /// Largest total degree among the F_i.
  unsigned law_degree() const;
  Scalar min_omega() const;
  Scalar max_omega() const;
  bool equi_valued() const;
  /// 1/(p-1)
  Scalar inverse_p_minus_one() const { return Scalar(1, p_ - 1); }

 private:
  std::string name_;
  unsigned p_;
  std::vector<Scalar> omega_;
  std::vector<TruncatedSeries> law_;
  std::vector<TruncatedSeries> inverse_;
  std::shared_ptr<const GroupModel> model_;
};

using GroupPtr = std::shared_ptr<const PValuedGroup>;

/// Z_p^d with F_i = X_i + Y_i, I_i = -X_i and omega = 1 (p > 2) or 2 (p = 2).
GroupPtr builtin_abelian(unsigned p, std::size_t d);
/// The Heisenberg group of unitriangular matrices over pZ_p, basis
/// (p,0,0), (0,p,0), (0,0,p), omega = (1,1,1). Requires p >= 3.
GroupPtr builtin_heisenberg(unsigned p);
/// "abelian:<p>:<d>" or "heisenberg:<p>".
GroupPtr builtin_group(std::string_view tag);

/// Parses the JSON group configuration:
///   {"name": ..., "p": 3, "d": 2, "omega": ["1/1", ...],
///    "F": [[{"index": [..2d..], "coeff": "a/b"}, ...], ...],
///    "I": [[{"index": [..d..], "coeff": "a/b"}, ...], ...],
///    "model": "heisenberg"}            // optional
/// Throws std::invalid_argument on parse errors, GroupValidationError on
/// invariant violations.
GroupPtr load_group(std::string_view config);
GroupPtr load_group_file(const std::filesystem::path& path);
/// A built-in tag, or a path to a JSON config.
GroupPtr resolve_group(std::string_view source);
std::string group_to_json(const PValuedGroup& g);

GroupPoint identity(const PValuedGroup& g);
/// Validates length and v_p(x_i) >= 0.
GroupPoint make_point(const PValuedGroup& g, std::vector<Scalar> coords);
GroupPoint multiply(const PValuedGroup& g, const GroupPoint& x, const GroupPoint& y);
GroupPoint invert(const PValuedGroup& g, const GroupPoint& x);
/// x^n by repeated multiplication.
GroupPoint power(const PValuedGroup& g, const GroupPoint& x, unsigned n);
/// x^{-1} y^{-1} x y
GroupPoint commutator(const PValuedGroup& g, const GroupPoint& x, const GroupPoint& y);
/// min_i (omega(g_i) + v(x_i)); +infinity at the identity.
ExtendedRational omega_of(const PValuedGroup& g, const GroupPoint& x);

struct NeighborhoodParams {
  unsigned N = 1;
  /// tau_{N,i} = (omega(g_i) - 1/(p-1)) / (N+1), i = 1..d
  std::vector<Scalar> tau;
  /// rho_{N,j} for the 2d variables of the group law (tau repeated twice).
  std::vector<Scalar> rho;
};

NeighborhoodParams neighborhood_params(const PValuedGroup& g, unsigned N);

inline constexpr unsigned kDefaultSamples = 100;
inline constexpr unsigned kDefaultPrecision = 12;

class SampleRng;
/// Coordinates uniform mod p^precision, occasionally scaled by a power of p.
GroupPoint random_point(const PValuedGroup& g, SampleRng& rng, unsigned precision);

/// Associativity, both unit laws and both inverse laws as polynomial
/// identities, computed up to total degree cap.
std::vector<CheckRecord> check_formal_group_axioms(const PValuedGroup& g, unsigned cap);
/// Coordinate multiply/invert against the external model on seeded samples.
CheckRecord check_model_consistency(const PValuedGroup& g, unsigned samples, std::uint64_t seed,
                                    unsigned precision = kDefaultPrecision);
/// omega(x y^{-1}) >= min, omega([x,y]) >= omega(x) + omega(y),
/// omega(x^p) = omega(x) + 1 on seeded samples.
std::vector<CheckRecord> check_pvaluation(const PValuedGroup& g, unsigned samples, std::uint64_t seed,
                                          unsigned precision = kDefaultPrecision);
/// For samples with omega(x) > p/(p-1), finds y with y^p = x mod p^precision
/// by digit-by-digit lifting. A finite-precision check, not a proof.
CheckRecord check_saturation(const PValuedGroup& g, unsigned samples, std::uint64_t seed,
                             unsigned precision = kDefaultPrecision);
/// Result of lifting one p-th root.
struct RootSearch {
  bool found = false;
  /// Number of p-adic digits of the target matched.
  unsigned depth = 0;
  GroupPoint root;
};
RootSearch find_pth_root(const PValuedGroup& g, const GroupPoint& x, unsigned precision);

/// v(d_{i,alpha}) >= -(omega(g_i) - 1/(p-1)) + sum_j alpha_j (omega(h_j) - 1/(p-1))
/// for every coefficient of F (h = g_1..g_d,g_1..g_d) and of I (after the
/// coordinate reversal, h = g_d^{-1}..g_1^{-1}).
std::vector<CheckRecord> check_coefficient_bound(const PValuedGroup& g);
/// Gauss norm of F_i on the polydisc of radii p^{rho_N} is at most p^{tau_{N,i}};
/// likewise for the reversed inversion polynomials J_i.
std::vector<CheckRecord> check_polydisc_bound(const PValuedGroup& g, unsigned N);

}  // namespace dagger
