#include "dagger/padic.hpp"

#include <algorithm>
#include <charconv>
#include <list>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace dagger {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

void require_prime(unsigned p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("not a prime: " + std::to_string(p));
  }
}

std::string format_rational(const Scalar& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start ||
      !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Scalar parse_rational(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    return v;
  };
  std::string_view t = trim(text);
  std::size_t slash = t.find('/');
  if (slash == std::string_view::npos) {
    return Scalar(parse_integer(t, text));
  }
  Integer num = parse_integer(trim(t.substr(0, slash)), text);
  Integer den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  }
  Scalar r(num, den);
  r.canonicalize();
  return r;
}

Scalar power(const Scalar& base, unsigned exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Scalar(num, den);
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// ---------------------------------------------------------------------------
// ExtendedRational

const Scalar& ExtendedRational::value() const {
  if (infinite_) throw std::logic_error("value() of +infinity");
  return value_;
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return ExtendedRational::infinity();
  return ExtendedRational(Scalar(a.value_ + b.value_));
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return a.value_ < b.value_;
}

std::string ExtendedRational::to_string() const {
  return infinite_ ? std::string("inf") : format_rational(value_);
}

ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
  return b < a ? b : a;
}

// ---------------------------------------------------------------------------
// Valuations

unsigned long integer_valuation(const Integer& n, unsigned p) {
  if (n == 0) throw std::invalid_argument("valuation of zero integer");
  Integer q = n;
  unsigned long v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++v;
  }
  return v;
}

Scalar finite_valuation(const Scalar& x, unsigned p) {
  if (x == 0) throw std::invalid_argument("finite_valuation of zero");
  // Numerator and denominator are coprime, so at most one carries p.
  long v = static_cast<long>(integer_valuation(x.get_num(), p)) -
           static_cast<long>(integer_valuation(x.get_den(), p));
  return Scalar(v);
}

ExtendedRational valuation(const Scalar& x, unsigned p) {
  require_prime(p);
  if (x == 0) return ExtendedRational::infinity();
  return ExtendedRational(finite_valuation(x, p));
}

// ---------------------------------------------------------------------------
// LogMag

LogMag LogMag::of(const Scalar& x, unsigned p) {
  if (x == 0) return bottom();
  return power(Scalar(-finite_valuation(x, p)));
}

const Scalar& LogMag::exponent() const {
  if (bottom_) throw std::logic_error("exponent() of the zero magnitude");
  return exponent_;
}

LogMag LogMag::times_power(const Scalar& e) const {
  if (bottom_) return *this;
  return power(Scalar(exponent_ + e));
}

LogMag operator*(const LogMag& a, const LogMag& b) {
  if (a.bottom_ || b.bottom_) return LogMag::bottom();
  return LogMag::power(Scalar(a.exponent_ + b.exponent_));
}

bool operator==(const LogMag& a, const LogMag& b) {
  if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
  return a.exponent_ == b.exponent_;
}

bool operator<(const LogMag& a, const LogMag& b) {
  if (b.bottom_) return false;
  if (a.bottom_) return true;
  return a.exponent_ < b.exponent_;
}

std::string LogMag::exponent_string() const {
  return bottom_ ? std::string("-inf") : format_rational(exponent_);
}

LogMag max(const LogMag& a, const LogMag& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex MultiIndex::unit(std::size_t dimension, std::size_t i) {
  MultiIndex e(dimension);
  e.entries_.at(i) = 1;
  return e;
}

unsigned MultiIndex::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0U);
}

bool MultiIndex::componentwise_le(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += other.entries_[i];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.componentwise_le(*this)) throw std::invalid_argument("multi-index difference is negative");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] -= other.entries_[i];
  return r;
}

MultiIndex MultiIndex::concat(const MultiIndex& other) const {
  MultiIndex r = *this;
  r.entries_.insert(r.entries_.end(), other.entries_.begin(), other.entries_.end());
  return r;
}

MultiIndex MultiIndex::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) throw std::out_of_range("multi-index slice");
  return MultiIndex(std::vector<unsigned>(entries_.begin() + static_cast<long>(first),
                                          entries_.begin() + static_cast<long>(first + count)));
}

MultiIndex MultiIndex::reversed() const {
  return MultiIndex(std::vector<unsigned>(entries_.rbegin(), entries_.rend()));
}

Integer MultiIndex::factorial() const {
  Integer r = 1;
  for (unsigned a : entries_) r *= dagger::factorial(a);
  return r;
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  unsigned ta = a.total();
  unsigned tb = b.total();
  if (ta != tb) return ta < tb;
  return a.entries_ < b.entries_;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

namespace {

void compositions(std::size_t pos, unsigned remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    compositions(pos + 1, remaining - k, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_up_to(std::size_t dimension, unsigned max_total) {
  std::vector<MultiIndex> out;
  if (dimension == 0) {
    out.emplace_back();
    return out;
  }
  MultiIndex cur(dimension);
  for (unsigned t = 0; t <= max_total; ++t) compositions(0, t, cur, out);
  // compositions() enumerates each degree in lexicographic order already.
  return out;
}

std::vector<MultiIndex> indices_below(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex cur(alpha.size());
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < alpha.size() && cur[i] == alpha[i]) {
      cur[i] = 0;
      ++i;
    }
    if (i == alpha.size()) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Factorials and digit sums

std::uint64_t digit_sum(std::uint64_t n, unsigned p) {
  require_prime(p);
  std::uint64_t s = 0;
  while (n > 0) {
    s += n % p;
    n /= p;
  }
  return s;
}

Scalar factorial_valuation(std::uint64_t n, unsigned p) {
  std::uint64_t s = digit_sum(n, p);
  Scalar v(Integer(std::to_string(n - s)), Integer(p - 1));
  v.canonicalize();
  return v;
}

Scalar factorial_valuation(const MultiIndex& alpha, unsigned p) {
  Scalar v = 0;
  for (unsigned a : alpha) v += factorial_valuation(a, p);
  return v;
}

// ---------------------------------------------------------------------------
// Stirling tables

StirlingTable::StirlingTable(unsigned size) : size_(size) {
  second_.assign(size + 1, {});
  falling_.assign(size + 1, {});
  for (unsigned n = 0; n <= size; ++n) {
    second_[n].assign(n + 1, Integer(0));
    falling_[n].assign(n + 1, Integer(0));
  }
  second_[0][0] = 1;
  falling_[0][0] = 1;
  for (unsigned n = 1; n <= size; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      // S(n,k) = k S(n-1,k) + S(n-1,k-1)
      Integer s = second_[n - 1][k - 1];
      if (k <= n - 1) s += Integer(k) * second_[n - 1][k];
      second_[n][k] = s;
      // x^{(n)} = x^{(n-1)} (x - (n-1))
      Integer f = falling_[n - 1][k - 1];
      if (k <= n - 1) f -= Integer(n - 1) * falling_[n - 1][k];
      falling_[n][k] = f;
    }
  }
}

const Integer& StirlingTable::second(unsigned beta, unsigned alpha) const {
  if (beta > size_ || alpha > beta) throw std::out_of_range("stirling index out of range");
  return second_[beta][alpha];
}

const Integer& StirlingTable::falling(unsigned alpha, unsigned beta) const {
  if (alpha > size_ || beta > alpha) throw std::out_of_range("falling coefficient index out of range");
  return falling_[alpha][beta];
}

const StirlingTable& stirling_table(unsigned min_size) {
  static std::mutex mutex;
  static std::list<StirlingTable> tables;  // older tables stay alive
  std::lock_guard lock(mutex);
  if (tables.empty() || tables.back().size() < min_size) {
    unsigned size = std::max(min_size, kDefaultStirlingCap);
    if (!tables.empty()) size = std::max(size, 2 * tables.back().size());
    tables.emplace_back(size);
  }
  return tables.back();
}

Integer stirling_second(int beta, int alpha) {
  if (alpha < 0 || beta < alpha) throw std::out_of_range("stirling_second requires 0 <= alpha <= beta");
  return stirling_table(static_cast<unsigned>(beta)).second(static_cast<unsigned>(beta), static_cast<unsigned>(alpha));
}

Integer falling_coeff(int alpha, int beta) {
  if (beta < 0 || alpha < beta) throw std::out_of_range("falling_coeff requires 0 <= beta <= alpha");
  return stirling_table(static_cast<unsigned>(alpha)).falling(static_cast<unsigned>(alpha), static_cast<unsigned>(beta));
}

Scalar binomial(const Scalar& x, unsigned n) {
  Scalar r = 1;
  for (unsigned k = 0; k < n; ++k) {
    r *= Scalar(x - k);
    r /= Scalar(k + 1);
  }
  return r;
}

}  // namespace dagger
