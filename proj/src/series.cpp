#include "dagger/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace dagger {

namespace {

unsigned min_cap(unsigned a, unsigned b) { return std::min(a, b); }

void check_same_dimension(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.dimension() != g.dimension()) {
    throw std::invalid_argument("series dimension mismatch: " + std::to_string(f.dimension()) + " vs " +
                                std::to_string(g.dimension()));
  }
}

// Truncated product of two term maps. Sets dropped when a nonzero product
// term exceeds the cap.
TruncatedSeries::Terms multiply_terms(const TruncatedSeries::Terms& a, const TruncatedSeries::Terms& b,
                                      unsigned cap, bool& dropped) {
  TruncatedSeries::Terms out;
  for (const auto& [ia, ca] : a) {
    unsigned da = ia.total();
    for (const auto& [ib, cb] : b) {
      if (cap != kNoTruncation && da + ib.total() > cap) {
        dropped = true;
        continue;
      }
      Scalar& slot = out[ia + ib];
      slot += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::size_t dimension, unsigned cap, bool exact)
    : dimension_(dimension), cap_(cap), exact_(exact) {}

TruncatedSeries::TruncatedSeries(std::size_t dimension, unsigned cap, Terms terms, bool exact)
    : dimension_(dimension), cap_(cap), exact_(exact) {
  for (auto& [index, c] : terms) {
    if (index.size() != dimension) {
      throw std::invalid_argument("multi-index " + index.to_string() + " has wrong length for dimension " +
                                  std::to_string(dimension));
    }
    if (c == 0) continue;
    if (cap != kNoTruncation && index.total() > cap) {
      exact_ = false;
      continue;
    }
    terms_.emplace(index, std::move(c));
  }
}

TruncatedSeries TruncatedSeries::zero(std::size_t dimension, unsigned cap) {
  return TruncatedSeries(dimension, cap);
}

TruncatedSeries TruncatedSeries::constant(std::size_t dimension, const Scalar& c, unsigned cap) {
  return TruncatedSeries(dimension, cap, Terms{{MultiIndex(dimension), c}});
}

TruncatedSeries TruncatedSeries::variable(std::size_t dimension, std::size_t i, unsigned cap) {
  return TruncatedSeries(dimension, cap, Terms{{MultiIndex::unit(dimension, i), Scalar(1)}});
}

TruncatedSeries TruncatedSeries::monomial(const MultiIndex& alpha, const Scalar& c, unsigned cap) {
  return TruncatedSeries(alpha.size(), cap, Terms{{alpha, c}});
}

int TruncatedSeries::degree() const {
  if (terms_.empty()) return -1;
  // Graded order: the last key has the largest total degree.
  return static_cast<int>(terms_.rbegin()->first.total());
}

Scalar TruncatedSeries::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar TruncatedSeries::constant_term() const { return coeff(MultiIndex(dimension_)); }

TruncatedSeries TruncatedSeries::with_cap(unsigned cap) const {
  if (cap > cap_ && !exact_) {
    throw std::invalid_argument("cannot raise the cap of a truncated series");
  }
  return TruncatedSeries(dimension_, cap, terms_, exact_);
}

TruncatedSeries TruncatedSeries::as_truncated() const {
  TruncatedSeries r = *this;
  r.exact_ = false;
  return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
}

std::vector<std::string> variable_names(std::size_t dimension, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

std::string TruncatedSeries::to_string(std::span<const std::string> names) const {
  std::vector<std::string> fallback;
  if (names.size() != dimension_) {
    fallback = variable_names(dimension_);
    names = fallback;
  }
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [index, c] : terms_) {
    Scalar mag = abs(c);
    std::string sign = c < 0 ? "-" : "+";
    if (first) {
      out += (c < 0 ? "-" : "");
    } else {
      out += " " + sign + " ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < dimension_; ++i) {
      if (index[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (index[i] > 1) mono += "^" + std::to_string(index[i]);
    }
    std::string coef = mag.get_den() == 1 ? mag.get_num().get_str() : mag.get_str();
    if (mono.empty()) {
      out += coef;
    } else if (mag == 1) {
      out += mono;
    } else {
      out += coef + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_same_dimension(f, g);
  unsigned cap = min_cap(f.cap(), g.cap());
  TruncatedSeries::Terms terms = f.terms();
  for (const auto& [index, c] : g.terms()) terms[index] += c;
  bool exact = f.exact() && g.exact();
  // Raising an exact operand to a lower cap may drop terms; the constructor
  // clears exactness in that case.
  return TruncatedSeries(f.dimension(), cap, std::move(terms), exact);
}

TruncatedSeries scale(const Scalar& c, const TruncatedSeries& f) {
  TruncatedSeries::Terms terms;
  if (c != 0) {
    for (const auto& [index, a] : f.terms()) terms.emplace(index, c * a);
  }
  return TruncatedSeries(f.dimension(), f.cap(), std::move(terms), f.exact());
}

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g) {
  check_same_dimension(f, g);
  unsigned cap = min_cap(f.cap(), g.cap());
  bool dropped = false;
  auto terms = multiply_terms(f.terms(), g.terms(), cap, dropped);
  // A truncated operand with a lower cap than the other makes the product
  // unreliable only above its own cap, which is where the result stops.
  return TruncatedSeries(f.dimension(), cap, std::move(terms), f.exact() && g.exact() && !dropped);
}

TruncatedSeries power(const TruncatedSeries& f, unsigned n) {
  TruncatedSeries result = TruncatedSeries::constant(f.dimension(), Scalar(1), f.cap());
  TruncatedSeries base = f;
  while (n > 0) {
    if (n & 1U) result = multiply(result, base);
    n >>= 1U;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

TruncatedSeries substitute(const TruncatedSeries& f, std::span<const TruncatedSeries> g) {
  if (g.size() != f.dimension()) {
    throw std::invalid_argument("substitute: expected " + std::to_string(f.dimension()) + " series, got " +
                                std::to_string(g.size()));
  }
  if (g.empty()) return f;
  std::size_t out_dim = g.front().dimension();
  unsigned cap = f.cap();
  bool exact = f.exact();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].dimension() != out_dim) throw std::invalid_argument("substitute: inner series dimension mismatch");
    if (g[i].constant_term() != 0) {
      throw std::invalid_argument("substitute: series " + std::to_string(i + 1) + " has a nonzero constant term");
    }
    cap = min_cap(cap, g[i].cap());
    exact = exact && g[i].exact();
  }

  // powers[i][k] = g_i^k truncated at cap
  std::vector<std::vector<TruncatedSeries::Terms>> powers(g.size());
  bool dropped = false;
  auto power_of = [&](std::size_t i, unsigned k) -> const TruncatedSeries::Terms& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back({{MultiIndex(out_dim), Scalar(1)}});
    while (cache.size() <= k) {
      cache.push_back(multiply_terms(cache.back(), g[i].terms(), cap, dropped));
    }
    return cache[k];
  };

  TruncatedSeries::Terms out;
  for (const auto& [alpha, c] : f.terms()) {
    if (cap != kNoTruncation && alpha.total() > cap) {
      // Each g_i has order >= 1, so this term lives entirely above the cap.
      dropped = true;
      continue;
    }
    TruncatedSeries::Terms term{{MultiIndex(out_dim), c}};
    for (std::size_t i = 0; i < alpha.size() && !term.empty(); ++i) {
      if (alpha[i] == 0) continue;
      term = multiply_terms(term, power_of(i, alpha[i]), cap, dropped);
    }
    for (auto& [index, v] : term) out[index] += v;
  }
  return TruncatedSeries(out_dim, cap, std::move(out), exact && !dropped);
}

Scalar evaluate(const TruncatedSeries& f, std::span<const Scalar> x) {
  if (x.size() != f.dimension()) {
    throw std::invalid_argument("evaluate: expected " + std::to_string(f.dimension()) + " values, got " +
                                std::to_string(x.size()));
  }
  std::vector<std::vector<Scalar>> powers(x.size(), std::vector<Scalar>{Scalar(1)});
  Scalar sum = 0;
  for (const auto& [alpha, c] : f.terms()) {
    Scalar term = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= alpha[i]) pw.push_back(pw.back() * x[i]);
      term *= pw[alpha[i]];
    }
    sum += term;
  }
  return sum;
}

TruncatedSeries partial_evaluate(const TruncatedSeries& f, std::span<const std::optional<Scalar>> values) {
  if (values.size() != f.dimension()) throw std::invalid_argument("partial_evaluate: length mismatch");
  if (!f.exact()) {
    // Every output coefficient would be missing the contributions of the
    // dropped tail.
    throw std::invalid_argument("partial_evaluate requires an exact series");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) kept.push_back(i);
  }
  TruncatedSeries::Terms out;
  for (const auto& [alpha, c] : f.terms()) {
    Scalar term = c;
    MultiIndex rest(kept.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (values[i]) {
        term *= power(*values[i], alpha[i]);
      } else {
        rest[k++] = alpha[i];
      }
    }
    out[rest] += term;
  }
  return TruncatedSeries(kept.size(), f.cap(), std::move(out), true);
}

// ---------------------------------------------------------------------------

RadiusVector::RadiusVector(std::vector<Scalar> exponents) : exponents_(std::move(exponents)) {
  for (const auto& e : exponents_) {
    if (e < 0) throw std::invalid_argument("radius exponent must be >= 0, got " + format_rational(e));
  }
}

RadiusVector RadiusVector::uniform(std::size_t dimension, const Scalar& rho) {
  return RadiusVector(std::vector<Scalar>(dimension, rho));
}

RadiusVector RadiusVector::concat(const RadiusVector& other) const {
  std::vector<Scalar> e = exponents_;
  e.insert(e.end(), other.exponents_.begin(), other.exponents_.end());
  return RadiusVector(std::move(e));
}

RadiusVector RadiusVector::reversed() const {
  return RadiusVector(std::vector<Scalar>(exponents_.rbegin(), exponents_.rend()));
}

NormBound gauss_norm(const TruncatedSeries& f, const RadiusVector& rho, unsigned p) {
  if (rho.size() != f.dimension()) {
    throw std::invalid_argument("gauss_norm: radius vector has length " + std::to_string(rho.size()) +
                                ", series has dimension " + std::to_string(f.dimension()));
  }
  LogMag best = LogMag::bottom();
  for (const auto& [alpha, c] : f.terms()) {
    Scalar weight = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) weight += rho[i] * alpha[i];
    best = max(best, LogMag::of(c, p).times_power(weight));
  }
  return NormBound{best, f.exact()};
}

TruncatedSeries binomial_poly(const MultiIndex& alpha) {
  const std::size_t d = alpha.size();
  TruncatedSeries result = TruncatedSeries::constant(d, Scalar(1));
  for (std::size_t i = 0; i < d; ++i) {
    // binom(x, n) = (1/n!) sum_b a(n,b) x^b
    TruncatedSeries::Terms terms;
    Integer nfact = factorial(alpha[i]);
    for (unsigned b = 0; b <= alpha[i]; ++b) {
      Integer a = falling_coeff(static_cast<int>(alpha[i]), static_cast<int>(b));
      if (a == 0) continue;
      MultiIndex idx(d);
      idx[i] = b;
      terms.emplace(idx, Scalar(a, nfact));
    }
    for (auto& [k, v] : terms) v.canonicalize();
    result = multiply(result, TruncatedSeries(d, kNoTruncation, std::move(terms)));
  }
  return result;
}

}  // namespace dagger
