#pragma once

// Functions on G written as polynomials in the chart coordinates Z_1..Z_d,
// with the Hopf-type operations induced by the group law and the pairing
// against distributions.

#include <cstdint>
#include <vector>

#include "dagger/distribution.hpp"
#include "dagger/group.hpp"
#include "dagger/series.hpp"

namespace dagger {

class DaggerFunction {
 public:
  /// body must be an exact polynomial in group dimension many variables.
  DaggerFunction(GroupPtr g, TruncatedSeries body);

  const PValuedGroup& group() const { return *group_; }
  const GroupPtr& shared_group() const { return group_; }
  const TruncatedSeries& body() const { return body_; }

  /// The coordinate function Z_i (0-based).
  static DaggerFunction coordinate(GroupPtr g, std::size_t i);

 private:
  GroupPtr group_;
  TruncatedSeries body_;
};

Scalar eval_at(const DaggerFunction& f, const GroupPoint& x);
/// f(F(X, Y)) in 2d variables, so comul(f)(x, y) = f(xy).
TruncatedSeries comul(const DaggerFunction& f);
/// f(I(X)), i.e. g -> f(g^{-1}).
DaggerFunction inv_pullback(const DaggerFunction& f);
/// g -> f(g h). Composes as R_{h'} R_h = R_{h' h}.
DaggerFunction right_translate(const DaggerFunction& f, const GroupPoint& h);

/// lambda(f) = sum c_b mu_b. Needs deg f <= cap unless lambda is exact.
Scalar pair(const Distribution& lambda, const DaggerFunction& f);
/// (lambda x mu)(g) for g in the 2d variables (X, Y).
Scalar pair_product(const Distribution& lambda, const Distribution& mu, const TruncatedSeries& g);

/// Coassociativity, counit, antipode, inversion involution, right action and
/// pairing adjunction on seeded random polynomials.
std::vector<CheckRecord> check_function_side(GroupPtr g, unsigned samples, std::uint64_t seed, unsigned cap);

}  // namespace dagger
