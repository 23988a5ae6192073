#pragma once

// Truncated multivariate power series over Q_p with total-degree
// truncation, substitution, evaluation and weighted Gauss norms.

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dagger/padic.hpp"

namespace dagger {

/// Cap value meaning "never truncate": the series is a plain polynomial.
inline constexpr unsigned kNoTruncation = std::numeric_limits<unsigned>::max();

/// sum c_alpha X^alpha over |alpha| <= cap. When exact() is false, terms of
/// degree above the cap were dropped somewhere along the way and the stored
/// terms are only the low-degree part of the represented object.
class TruncatedSeries {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  TruncatedSeries(std::size_t dimension, unsigned cap, bool exact = true);
  /// Drops zero coefficients and terms above the cap (clearing exact() if a
  /// nonzero term had to be dropped). Throws on an index of wrong length.
  TruncatedSeries(std::size_t dimension, unsigned cap, Terms terms, bool exact = true);

  static TruncatedSeries zero(std::size_t dimension, unsigned cap = kNoTruncation);
  static TruncatedSeries constant(std::size_t dimension, const Scalar& c, unsigned cap = kNoTruncation);
  /// X_i (0-based).
  static TruncatedSeries variable(std::size_t dimension, std::size_t i, unsigned cap = kNoTruncation);
  static TruncatedSeries monomial(const MultiIndex& alpha, const Scalar& c, unsigned cap = kNoTruncation);

  std::size_t dimension() const { return dimension_; }
  unsigned cap() const { return cap_; }
  bool exact() const { return exact_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree present, or -1 for the zero series.
  int degree() const;

  Scalar coeff(const MultiIndex& alpha) const;
  Scalar constant_term() const;

  /// Lowers the cap, or (for exact series) raises it.
  TruncatedSeries with_cap(unsigned cap) const;
  /// Same terms, exactness flag forced to false.
  TruncatedSeries as_truncated() const;

  /// Human-readable form such as "X1 + 3*X2^2" with the given variable names.
  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::size_t dimension_;
  unsigned cap_;
  Terms terms_;
  bool exact_;
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries scale(const Scalar& c, const TruncatedSeries& f);
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g);
/// f^n by repeated squaring; f^0 = 1.
TruncatedSeries power(const TruncatedSeries& f, unsigned n);

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
  return add(f, scale(Scalar(-1), g));
}
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return multiply(f, g); }
inline TruncatedSeries operator*(const Scalar& c, const TruncatedSeries& f) { return scale(c, f); }

/// f(g_1, ..., g_d) for f in d variables and g_i in e variables. Every g_i
/// must have zero constant term. Result cap is the minimum of all caps.
TruncatedSeries substitute(const TruncatedSeries& f, std::span<const TruncatedSeries> g);

/// f(x) summed over the stored terms.
Scalar evaluate(const TruncatedSeries& f, std::span<const Scalar> x);

/// Evaluates the variables that have a value and keeps the others, in order.
TruncatedSeries partial_evaluate(const TruncatedSeries& f, std::span<const std::optional<Scalar>> values);

/// Exponents rho_i >= 0 of a polyradius (p^{rho_1}, ..., p^{rho_d}).
class RadiusVector {
 public:
  RadiusVector() = default;
  explicit RadiusVector(std::vector<Scalar> exponents);
  static RadiusVector uniform(std::size_t dimension, const Scalar& rho);

  std::size_t size() const { return exponents_.size(); }
  const Scalar& operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<Scalar>& exponents() const { return exponents_; }
  RadiusVector concat(const RadiusVector& other) const;
  RadiusVector reversed() const;

 private:
  std::vector<Scalar> exponents_;
};

/// A norm value with its certification: exact, or (when the underlying
/// data is truncated) only a lower bound for the true norm.
struct NormBound {
  LogMag value;
  bool exact = true;
};

/// sup |c_alpha| p^{sum rho_i alpha_i}.
NormBound gauss_norm(const TruncatedSeries& f, const RadiusVector& rho, unsigned p);

/// prod_i binom(x_i, alpha_i) as an exact polynomial.
TruncatedSeries binomial_poly(const MultiIndex& alpha);

/// Default variable names X1..Xn.
std::vector<std::string> variable_names(std::size_t dimension, const std::string& prefix = "X");

}  // namespace dagger
