#pragma once

// Exact scalars of Q_p (as rationals), p-adic valuations, p-power
// magnitudes, multi-indices and the combinatorial tables (factorials,
// Stirling numbers, falling-factorial coefficients) everything else uses.

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dagger {

using Integer = mpz_class;
/// An element of Q_p, held as an exact rational number.
using Scalar = mpq_class;

bool is_prime(unsigned n);
/// Throws std::invalid_argument unless p is prime.
void require_prime(unsigned p);

/// Formats as "num/den" (always with a denominator, e.g. "3/1").
std::string format_rational(const Scalar& x);
/// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Scalar parse_rational(std::string_view text);

Scalar power(const Scalar& base, unsigned exponent);
Integer factorial(unsigned n);

/// Q extended by +infinity; the codomain of v_p and of omega.
class ExtendedRational {
 public:
  ExtendedRational(Scalar value) : value_(std::move(value)) {}  // NOLINT
  static ExtendedRational infinity() {
    ExtendedRational r{Scalar(0)};
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error for +infinity.
  const Scalar& value() const;

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

  /// "inf" or "num/den".
  std::string to_string() const;

 private:
  Scalar value_;
  bool infinite_ = false;
};

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b);

/// Exponent of p in a nonzero integer.
unsigned long integer_valuation(const Integer& n, unsigned p);
/// v_p(x); +infinity for x = 0.
ExtendedRational valuation(const Scalar& x, unsigned p);
/// v_p(x) for x != 0. Throws std::invalid_argument on zero.
Scalar finite_valuation(const Scalar& x, unsigned p);

/// A magnitude p^e with e rational, or the bottom element |0|.
/// All norm values live here; they are never turned into floating point.
class LogMag {
 public:
  static LogMag bottom() { return LogMag{}; }
  static LogMag power(Scalar exponent) {
    LogMag m;
    m.bottom_ = false;
    m.exponent_ = std::move(exponent);
    return m;
  }
  static LogMag one() { return power(Scalar(0)); }
  /// |x| = p^{-v_p(x)}.
  static LogMag of(const Scalar& x, unsigned p);

  bool is_bottom() const { return bottom_; }
  /// Throws std::logic_error for bottom.
  const Scalar& exponent() const;

  /// Multiplies the magnitude by p^e (bottom stays bottom).
  LogMag times_power(const Scalar& e) const;

  friend LogMag operator*(const LogMag& a, const LogMag& b);
  friend bool operator==(const LogMag& a, const LogMag& b);
  friend bool operator<(const LogMag& a, const LogMag& b);
  friend bool operator<=(const LogMag& a, const LogMag& b) { return !(b < a); }
  friend bool operator>(const LogMag& a, const LogMag& b) { return b < a; }
  friend bool operator>=(const LogMag& a, const LogMag& b) { return !(a < b); }

  /// Exponent as "num/den", or "-inf" for bottom.
  std::string exponent_string() const;

 private:
  LogMag() = default;
  bool bottom_ = true;
  Scalar exponent_;
};

LogMag max(const LogMag& a, const LogMag& b);

/// Exponent vector alpha in N_0^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : entries_(dimension, 0) {}
  explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}
  MultiIndex(std::initializer_list<unsigned> entries) : entries_(entries) {}

  static MultiIndex unit(std::size_t dimension, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  unsigned operator[](std::size_t i) const { return entries_[i]; }
  unsigned& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<unsigned>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// |alpha|
  unsigned total() const;
  bool is_zero() const { return total() == 0; }

  /// Componentwise alpha <= beta.
  bool componentwise_le(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other <= *this.
  MultiIndex operator-(const MultiIndex& other) const;

  /// (alpha, beta) as one index of length size()+other.size().
  MultiIndex concat(const MultiIndex& other) const;
  MultiIndex slice(std::size_t first, std::size_t count) const;
  MultiIndex reversed() const;

  /// alpha! = prod alpha_i!
  Integer factorial() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.entries_ == b.entries_; }
  /// Graded lexicographic: total degree first, then entries lexicographically.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

  std::string to_string() const;

 private:
  std::vector<unsigned> entries_;
};

/// Every alpha in N_0^dimension with |alpha| <= max_total, in graded
/// lexicographic order.
std::vector<MultiIndex> indices_up_to(std::size_t dimension, unsigned max_total);
/// Every beta with beta <= alpha componentwise, in graded lexicographic order.
std::vector<MultiIndex> indices_below(const MultiIndex& alpha);

/// Base-p digit sum s_p(n).
std::uint64_t digit_sum(std::uint64_t n, unsigned p);
/// v_p(n!) = (n - s_p(n)) / (p - 1).
Scalar factorial_valuation(std::uint64_t n, unsigned p);
/// v_p(alpha!) summed over the coordinates.
Scalar factorial_valuation(const MultiIndex& alpha, unsigned p);

/// Triangular tables for x^b = sum_a s(b,a) x^{(a)} (Stirling numbers of the
/// second kind) and x^{(a)} = sum_b a(a,b) x^b (signed Stirling numbers of
/// the first kind), where x^{(a)} = x(x-1)...(x-a+1).
class StirlingTable {
 public:
  explicit StirlingTable(unsigned size);

  unsigned size() const { return size_; }
  /// s(beta, alpha) for 0 <= alpha <= beta <= size.
  const Integer& second(unsigned beta, unsigned alpha) const;
  /// a(alpha, beta), coefficient of x^beta in x^{(alpha)}.
  const Integer& falling(unsigned alpha, unsigned beta) const;

 private:
  unsigned size_;
  std::vector<std::vector<Integer>> second_;
  std::vector<std::vector<Integer>> falling_;
};

inline constexpr unsigned kDefaultStirlingCap = 24;

/// Shared memoized table covering at least min_size (default cap 24).
/// Grows on demand; safe to call from several threads, and references stay
/// valid for the lifetime of the program.
const StirlingTable& stirling_table(unsigned min_size = kDefaultStirlingCap);

/// s(beta, alpha). Throws std::out_of_range unless 0 <= alpha <= beta.
Integer stirling_second(int beta, int alpha);
/// a(alpha, beta). Throws std::out_of_range unless 0 <= beta <= alpha.
Integer falling_coeff(int alpha, int beta);

/// binom(x, n) for rational x.
Scalar binomial(const Scalar& x, unsigned n);

}  // namespace dagger
