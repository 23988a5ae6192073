#include "dagger/distribution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dagger/rng.hpp"

namespace dagger {

namespace {

bool same_group(const PValuedGroup& a, const PValuedGroup& b) {
  return &a == &b || (a.p() == b.p() && a.omega() == b.omega() && a.law() == b.law());
}

void erase_zeros(TruncatedSeries::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
}

// Merges atoms at equal points and drops zero weights.
std::vector<Atom> normalize(std::vector<Atom> atoms) {
  std::map<std::vector<Scalar>, Scalar> merged;
  for (auto& a : atoms) merged[std::move(a.point.coords)] += a.weight;
  std::vector<Atom> out;
  for (auto& [coords, w] : merged) {
    if (w != 0) out.push_back(Atom{w, GroupPoint{coords}});
  }
  return out;
}

// Powers x^0..x^degree of every coordinate, then products per index.
std::vector<Scalar> atom_moments(const std::vector<Atom>& atoms, const std::vector<MultiIndex>& indices,
                                 unsigned degree) {
  std::vector<Scalar> out(indices.size());
  for (const auto& atom : atoms) {
    const std::size_t d = atom.point.size();
    std::vector<std::vector<Scalar>> pw(d, std::vector<Scalar>(degree + 1));
    for (std::size_t i = 0; i < d; ++i) {
      pw[i][0] = 1;
      for (unsigned k = 1; k <= degree; ++k) pw[i][k] = pw[i][k - 1] * atom.point.coords[i];
    }
    for (std::size_t k = 0; k < indices.size(); ++k) {
      Scalar term = atom.weight;
      for (std::size_t i = 0; i < d; ++i) term *= pw[i][indices[k][i]];
      out[k] += term;
    }
  }
  return out;
}

bool atoms_support_complete(const std::vector<Atom>& atoms, unsigned cap) {
  for (const auto& a : atoms) {
    Integer total = 0;
    for (const auto& c : a.point.coords) {
      if (c.get_den() != 1 || c < 0) return false;
      total += c.get_num();
    }
    if (total > cap) return false;
  }
  return true;
}

// All beta >= alpha with |beta| <= cap.
std::vector<MultiIndex> indices_above(const MultiIndex& alpha, unsigned cap) {
  std::vector<MultiIndex> out;
  const unsigned t = alpha.total();
  if (t > cap) return out;
  for (const auto& gamma : indices_up_to(alpha.size(), cap - t)) out.push_back(alpha + gamma);
  return out;
}

}  // namespace

TruncatedSeries::Terms dcoeffs_from_moments(const TruncatedSeries::Terms& moments, std::size_t d, unsigned cap) {
  const auto& table = stirling_table(cap);
  TruncatedSeries::Terms out;
  for (const auto& [beta, mu] : moments) {
    if (beta.size() != d) throw std::invalid_argument("moment index " + beta.to_string() + " has wrong length");
    for (const auto& alpha : indices_above(beta, cap)) {
      Integer factor = 1;
      for (std::size_t i = 0; i < d; ++i) factor *= table.falling(alpha[i], beta[i]);
      out[alpha] += mu * Scalar(factor) / Scalar(alpha.factorial());
    }
  }
  erase_zeros(out);
  return out;
}

TruncatedSeries::Terms moments_from_dcoeffs(const TruncatedSeries::Terms& dcoeffs, std::size_t d, unsigned cap) {
  const auto& table = stirling_table(cap);
  TruncatedSeries::Terms out;
  for (const auto& [alpha, c] : dcoeffs) {
    if (alpha.size() != d) throw std::invalid_argument("coefficient index " + alpha.to_string() + " has wrong length");
    const Scalar scaled = c * Scalar(alpha.factorial());
    for (const auto& beta : indices_above(alpha, cap)) {
      Integer factor = 1;
      for (std::size_t i = 0; i < d; ++i) factor *= table.second(beta[i], alpha[i]);
      out[beta] += scaled * Scalar(factor);
    }
  }
  erase_zeros(out);
  return out;
}

// ---------------------------------------------------------------------------

void Distribution::set_atoms(std::vector<Atom> atoms) {
  atoms_ = normalize(std::move(atoms));
  exact_ = true;
  support_complete_ = atoms_support_complete(atoms_, cap_);
}

Distribution Distribution::from_atoms(GroupPtr g, std::vector<Atom> atoms, unsigned cap) {
  for (const auto& a : atoms) make_point(*g, a.point.coords);
  Distribution out(std::move(g), cap);
  out.set_atoms(std::move(atoms));
  const auto indices = indices_up_to(out.group_->dimension(), cap);
  const auto mu = atom_moments(out.atoms_, indices, cap);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (mu[k] != 0) out.moments_.emplace(indices[k], mu[k]);
  }
  out.dcoeffs_ = dcoeffs_from_moments(out.moments_, out.group_->dimension(), cap);
  return out;
}

Distribution Distribution::from_dcoeffs(GroupPtr g, Terms dcoeffs, unsigned cap) {
  const std::size_t d = g->dimension();
  std::vector<Atom> atoms;
  for (const auto& [alpha, c] : dcoeffs) {
    if (alpha.size() != d) throw std::invalid_argument("coefficient index " + alpha.to_string() + " has wrong length");
    if (alpha.total() > cap) {
      throw std::invalid_argument("b^" + alpha.to_string() + " exceeds the cap " + std::to_string(cap));
    }
    // b^a = prod_i (g_i - 1)^{a_i} = sum_{k <= a} (-1)^{|a-k|} binom(a,k) g_1^{k_1}...g_d^{k_d}
    for (const auto& k : indices_below(alpha)) {
      Scalar w = c;
      for (std::size_t i = 0; i < d; ++i) w *= binomial(Scalar(alpha[i]), k[i]);
      if ((alpha.total() - k.total()) % 2 == 1) w = -w;
      std::vector<Scalar> coords(k.begin(), k.end());
      atoms.push_back(Atom{w, GroupPoint{std::move(coords)}});
    }
  }
  erase_zeros(dcoeffs);
  Distribution out(std::move(g), cap);
  out.set_atoms(std::move(atoms));
  out.support_complete_ = true;
  out.moments_ = moments_from_dcoeffs(dcoeffs, d, cap);
  out.dcoeffs_ = std::move(dcoeffs);
  return out;
}

Distribution Distribution::from_moments(GroupPtr g, Terms moments, unsigned cap) {
  const std::size_t d = g->dimension();
  erase_zeros(moments);
  for (const auto& [beta, mu] : moments) {
    if (beta.size() != d) throw std::invalid_argument("moment index " + beta.to_string() + " has wrong length");
    if (beta.total() > cap) throw std::invalid_argument("moment " + beta.to_string() + " exceeds the cap");
  }
  Distribution out(std::move(g), cap);
  out.dcoeffs_ = dcoeffs_from_moments(moments, d, cap);
  out.moments_ = std::move(moments);
  return out;
}

Scalar Distribution::moment(const MultiIndex& beta) const {
  if (beta.total() <= cap_) {
    auto it = moments_.find(beta);
    return it == moments_.end() ? Scalar(0) : it->second;
  }
  if (!exact_) throw std::invalid_argument("moment " + beta.to_string() + " is beyond the cap of a truncated distribution");
  return atom_moments(atoms_, {beta}, beta.total()).front();
}

Scalar Distribution::dcoeff(const MultiIndex& alpha) const {
  if (alpha.total() > cap_ && !support_complete_) {
    throw std::invalid_argument("coefficient " + alpha.to_string() + " is beyond the cap");
  }
  auto it = dcoeffs_.find(alpha);
  return it == dcoeffs_.end() ? Scalar(0) : it->second;
}

std::vector<Scalar> Distribution::moment_vector(unsigned degree) const {
  const auto indices = indices_up_to(group_->dimension(), degree);
  if (degree > cap_) {
    if (!exact_) {
      throw std::invalid_argument("moments up to degree " + std::to_string(degree) +
                                  " requested from a truncated distribution with cap " + std::to_string(cap_));
    }
    return atom_moments(atoms_, indices, degree);
  }
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (const auto& beta : indices) {
    auto it = moments_.find(beta);
    out.push_back(it == moments_.end() ? Scalar(0) : it->second);
  }
  return out;
}

Distribution Distribution::with_cap(unsigned cap) const {
  if (exact_) return from_atoms(group_, atoms_, cap);
  if (cap > cap_) throw std::invalid_argument("cannot raise the cap of a truncated distribution");
  Distribution out(group_, cap);
  for (const auto& [beta, mu] : moments_) {
    if (beta.total() <= cap) out.moments_.emplace(beta, mu);
  }
  for (const auto& [alpha, c] : dcoeffs_) {
    if (alpha.total() <= cap) out.dcoeffs_.emplace(alpha, c);
  }
  return out;
}

namespace {

Distribution combine(const Distribution& a, const Distribution& b, const Scalar& cb) {
  if (!same_group(a.group(), b.group())) throw std::invalid_argument("distributions live on different groups");
  if (a.cap() != b.cap()) throw std::invalid_argument("distributions have different caps");
  if (a.exact() && b.exact()) {
    std::vector<Atom> atoms = a.atoms();
    for (const auto& atom : b.atoms()) atoms.push_back(Atom{cb * atom.weight, atom.point});
    return Distribution::from_atoms(a.shared_group(), std::move(atoms), a.cap());
  }
  auto moments = a.moments();
  for (const auto& [beta, mu] : b.moments()) moments[beta] += cb * mu;
  return Distribution::from_moments(a.shared_group(), std::move(moments), a.cap());
}

}  // namespace

Distribution operator+(const Distribution& a, const Distribution& b) { return combine(a, b, Scalar(1)); }
Distribution operator-(const Distribution& a, const Distribution& b) { return combine(a, b, Scalar(-1)); }

Distribution operator*(const Scalar& c, const Distribution& a) {
  if (a.exact()) {
    std::vector<Atom> atoms = a.atoms();
    for (auto& atom : atoms) atom.weight *= c;
    return Distribution::from_atoms(a.shared_group(), std::move(atoms), a.cap());
  }
  auto moments = a.moments();
  for (auto& [beta, mu] : moments) mu *= c;
  return Distribution::from_moments(a.shared_group(), std::move(moments), a.cap());
}

Distribution dirac(GroupPtr g, const GroupPoint& x, unsigned cap) {
  return Distribution::from_atoms(std::move(g), {Atom{Scalar(1), x}}, cap);
}

Distribution b_monomial(GroupPtr g, const MultiIndex& alpha, unsigned cap) {
  return Distribution::from_dcoeffs(std::move(g), {{alpha, Scalar(1)}}, cap);
}

// ---------------------------------------------------------------------------
// Convolution

Convolver::Convolver(GroupPtr g, unsigned out_cap)
    : group_(std::move(g)), out_cap_(out_cap), input_degree_(out_cap * std::max(1U, group_->law_degree())) {
  const std::size_t d = group_->dimension();
  const auto inputs = indices_up_to(d, input_degree_);
  std::map<MultiIndex, std::size_t> position;
  for (std::size_t k = 0; k < inputs.size(); ++k) position.emplace(inputs[k], k);

  outputs_ = indices_up_to(d, out_cap);
  std::map<MultiIndex, TruncatedSeries> powers;
  for (const auto& gamma : outputs_) {
    TruncatedSeries fg = TruncatedSeries::constant(2 * d, Scalar(1));
    if (gamma.total() > 0) {
      std::size_t i = 0;
      while (gamma[i] == 0) ++i;
      fg = powers.at(gamma - MultiIndex::unit(d, i)) * group_->law()[i];
    }
    std::vector<KernelTerm> row;
    row.reserve(fg.terms().size());
    for (const auto& [mono, c] : fg.terms()) {
      row.push_back(KernelTerm{position.at(mono.slice(0, d)), position.at(mono.slice(d, d)), c});
    }
    kernel_.push_back(std::move(row));
    powers.emplace(gamma, std::move(fg));
  }
}

Distribution Convolver::operator()(const Distribution& a, const Distribution& b, ProductOrder order) const {
  for (const Distribution* x : {&a, &b}) {
    if (!same_group(x->group(), *group_)) throw std::invalid_argument("convolve: distribution on a different group");
    if (!x->exact() && x->cap() < input_degree_) {
      throw std::invalid_argument("convolve: output cap " + std::to_string(out_cap_) + " needs input moments up to degree " +
                                  std::to_string(input_degree_) + ", but a truncated input has cap " +
                                  std::to_string(x->cap()));
    }
  }
  const Distribution& left = order == ProductOrder::Standard ? a : b;
  const Distribution& right = order == ProductOrder::Standard ? b : a;
  const auto mx = left.moment_vector(input_degree_);
  const auto my = right.moment_vector(input_degree_);

  Distribution out(group_, out_cap_);
  Scalar acc;
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    acc = 0;
    for (const auto& t : kernel_[k]) {
      if (mx[t.x] == 0 || my[t.y] == 0) continue;
      acc += t.coeff * mx[t.x] * my[t.y];
    }
    if (acc != 0) out.moments_.emplace(outputs_[k], acc);
  }
  out.dcoeffs_ = dcoeffs_from_moments(out.moments_, group_->dimension(), out_cap_);
  if (a.exact() && b.exact()) {
    std::vector<Atom> atoms;
    for (const auto& x : left.atoms()) {
      for (const auto& y : right.atoms()) atoms.push_back(Atom{x.weight * y.weight, multiply(*group_, x.point, y.point)});
    }
    out.set_atoms(std::move(atoms));
  }
  return out;
}

Distribution convolve(const Distribution& a, const Distribution& b, unsigned out_cap, ProductOrder order) {
  return Convolver(a.shared_group(), out_cap)(a, b, order);
}

// ---------------------------------------------------------------------------
// Norms

namespace {

// sup_a |(a!)^{f} d_a| p^{-weight(a)}, f in {0,1}.
template <class Weight>
NormBound coefficient_norm(const Distribution& lambda, bool with_factorial, Weight weight) {
  const unsigned p = lambda.group().p();
  LogMag best = LogMag::bottom();
  for (const auto& [alpha, c] : lambda.dcoeffs()) {
    Scalar e = -weight(alpha);
    if (with_factorial) e -= factorial_valuation(alpha, p);
    best = max(best, LogMag::of(c, p).times_power(e));
  }
  return NormBound{best, lambda.support_complete()};
}

void require_positive(const Scalar& sigma) {
  if (sigma <= 0) throw std::invalid_argument("sigma must be positive, got " + format_rational(sigma));
}

}  // namespace

NormBound st_norm(const Distribution& lambda, const Scalar& sigma) {
  require_positive(sigma);
  const auto& omega = lambda.group().omega();
  return coefficient_norm(lambda, false, [&](const MultiIndex& alpha) {
    Scalar t = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) t += omega[i] * alpha[i];
    return Scalar(sigma * t);
  });
}

NormBound st_norm_prime(const Distribution& lambda, const Scalar& sigma) {
  require_positive(sigma);
  return coefficient_norm(lambda, false, [&](const MultiIndex& alpha) { return Scalar(sigma * alpha.total()); });
}

NormBound dagger_seminorm(const Distribution& lambda, const Scalar& sigma) {
  require_positive(sigma);
  return coefficient_norm(lambda, true, [&](const MultiIndex& alpha) { return Scalar(sigma * alpha.total()); });
}

NormBound dagger_norm(const Distribution& lambda, unsigned N) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  const auto params = neighborhood_params(lambda.group(), N);
  return coefficient_norm(lambda, true, [&](const MultiIndex& alpha) {
    Scalar t = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) t += params.tau[i] * alpha[i];
    return t;
  });
}

// ---------------------------------------------------------------------------

namespace {

Scalar random_weight(SampleRng& rng, unsigned p) {
  Scalar w(Integer(static_cast<long>(rng.between(1, 2L * p * p))), Integer(static_cast<long>(rng.between(1, 5))));
  w.canonicalize();
  const auto e = rng.between(-1, 2);
  if (e > 0) w *= power(Scalar(p), static_cast<unsigned>(e));
  if (e < 0) w /= power(Scalar(p), static_cast<unsigned>(-e));
  return rng.coin() ? w : Scalar(-w);
}

GroupPoint small_point(const PValuedGroup& g, SampleRng& rng, unsigned cap) {
  const std::size_t d = g.dimension();
  const auto top = static_cast<std::int64_t>(std::min<std::size_t>(2, cap / d));
  GroupPoint x;
  for (std::size_t i = 0; i < d; ++i) x.coords.emplace_back(static_cast<long>(rng.between(0, top)));
  return x;
}

}  // namespace

Distribution random_distribution(GroupPtr g, SampleRng& rng, unsigned cap, unsigned max_degree) {
  const unsigned p = g->p();
  max_degree = std::min(max_degree, cap);
  switch (rng.below(4)) {
    case 0:
      return dirac(g, small_point(*g, rng, cap), cap);
    case 1: {
      std::vector<Atom> atoms;
      atoms.push_back(Atom{random_weight(rng, p), small_point(*g, rng, cap)});
      atoms.push_back(Atom{random_weight(rng, p), small_point(*g, rng, cap)});
      return Distribution::from_atoms(g, std::move(atoms), cap);
    }
    default: {
      const auto choices = indices_up_to(g->dimension(), max_degree);
      Distribution::Terms dcoeffs;
      const auto count = 1 + rng.below(3);
      for (std::uint64_t k = 0; k < count; ++k) {
        dcoeffs[choices[rng.below(choices.size())]] += random_weight(rng, p);
      }
      return Distribution::from_dcoeffs(g, std::move(dcoeffs), cap);
    }
  }
}

}  // namespace dagger
