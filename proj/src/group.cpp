#include "dagger/group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dagger/rng.hpp"

namespace dagger {

bool GroupPoint::is_identity() const {
  return std::all_of(coords.begin(), coords.end(), [](const Scalar& c) { return c == 0; });
}

std::string GroupPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += coords[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Models

namespace {

class AdditiveModel final : public GroupModel {
 public:
  explicit AdditiveModel(std::size_t d) : d_(d) {}
  std::string tag() const override { return "abelian"; }
  std::vector<Scalar> embed(const GroupPoint& x) const override { return x.coords; }
  GroupPoint coordinates(const std::vector<Scalar>& e) const override { return GroupPoint{e}; }
  std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const override {
    std::vector<Scalar> r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = a[i] + b[i];
    return r;
  }
  std::vector<Scalar> invert(const std::vector<Scalar>& a) const override {
    std::vector<Scalar> r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = -a[i];
    return r;
  }

 private:
  std::size_t d_;
};

class HeisenbergModel final : public GroupModel {
 public:
  explicit HeisenbergModel(unsigned p) : p_(p) {}
  std::string tag() const override { return "heisenberg"; }

  // psi(x,y,z) = g1^x g2^y g3^z = (px, py, p(z + pxy))
  std::vector<Scalar> embed(const GroupPoint& x) const override {
    const auto& c = x.coords;
    return {p_ * c[0], p_ * c[1], p_ * (c[2] + p_ * c[0] * c[1])};
  }
  GroupPoint coordinates(const std::vector<Scalar>& e) const override {
    Scalar x = e[0] / p_;
    Scalar y = e[1] / p_;
    Scalar z = e[2] / p_ - e[0] * e[1] / p_;
    return GroupPoint{{x, y, z}};
  }
  std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const override {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
  }
  std::vector<Scalar> invert(const std::vector<Scalar>& a) const override {
    return {-a[0], -a[1], -a[2] + a[0] * a[1]};
  }

 private:
  Scalar p_;
};

}  // namespace

std::shared_ptr<const GroupModel> additive_model(std::size_t d) { return std::make_shared<AdditiveModel>(d); }

std::shared_ptr<const GroupModel> heisenberg_model(unsigned p) { return std::make_shared<HeisenbergModel>(p); }

std::shared_ptr<const GroupModel> model_for_tag(std::string_view tag, unsigned p, std::size_t d) {
  if (tag == "abelian") return additive_model(d);
  if (tag == "heisenberg") {
    if (d != 3) throw std::invalid_argument("the heisenberg model needs d = 3");
    return heisenberg_model(p);
  }
  throw std::invalid_argument("unknown model tag \"" + std::string(tag) + "\"");
}

// ---------------------------------------------------------------------------
// PValuedGroup

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& item : items) {
    if (!s.empty()) s += "; ";
    s += item;
  }
  return s;
}

}  // namespace

GroupValidationError::GroupValidationError(std::vector<std::string> violations)
    : std::invalid_argument("invalid p-valued group: " + join(violations)), violations_(std::move(violations)) {}

PValuedGroup::PValuedGroup(std::string name, unsigned p, std::vector<Scalar> omega, std::vector<TruncatedSeries> law,
                           std::vector<TruncatedSeries> inverse, std::shared_ptr<const GroupModel> model)
    : name_(std::move(name)),
      p_(p),
      omega_(std::move(omega)),
      law_(std::move(law)),
      inverse_(std::move(inverse)),
      model_(std::move(model)) {
  std::vector<std::string> v;
  if (!is_prime(p_)) {
    throw GroupValidationError({"p = " + std::to_string(p_) + " is not prime"});
  }
  const std::size_t d = omega_.size();
  if (d == 0) v.emplace_back("rank d must be positive");
  const Scalar base(1, p_ - 1);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string name_i = "omega(g" + std::to_string(i + 1) + ") = " + format_rational(omega_[i]);
    if (omega_[i] <= base) v.push_back(name_i + " must exceed 1/(p-1)");
    if (omega_[i] - base > 1) v.push_back(name_i + " violates the saturation bound omega - 1/(p-1) <= 1");
  }
  if (law_.size() != d) v.push_back("expected " + std::to_string(d) + " group-law polynomials F");
  if (inverse_.size() != d) v.push_back("expected " + std::to_string(d) + " inversion polynomials I");

  auto check_zp = [&](const TruncatedSeries& s, const std::string& label) {
    for (const auto& [alpha, c] : s.terms()) {
      if (finite_valuation(c, p_) < 0) {
        v.push_back(label + " coefficient " + format_rational(c) + " at " + alpha.to_string() +
                    " is not in Z_p (coefficients in Z_p required)");
      }
    }
  };

  for (std::size_t i = 0; i < law_.size() && i < d; ++i) {
    const auto& f = law_[i];
    const std::string label = "F" + std::to_string(i + 1);
    if (f.dimension() != 2 * d) {
      v.push_back(label + " must have " + std::to_string(2 * d) + " variables");
      continue;
    }
    if (!f.exact()) v.push_back(label + " must be an exact polynomial");
    check_zp(f, label);
    if (f.constant_term() != 0) v.push_back(label + "(0,0) != 0");
    std::vector<std::optional<Scalar>> x_zero(2 * d);
    std::vector<std::optional<Scalar>> y_zero(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
      x_zero[k] = Scalar(0);
      y_zero[d + k] = Scalar(0);
    }
    const auto unit = TruncatedSeries::variable(d, i);
    if (f.exact()) {
      if (!(partial_evaluate(f, y_zero) == unit)) v.push_back(label + "(X,0) != X" + std::to_string(i + 1) + " (unit axiom)");
      if (!(partial_evaluate(f, x_zero) == unit)) v.push_back(label + "(0,Y) != Y" + std::to_string(i + 1) + " (unit axiom)");
    }
  }
  for (std::size_t i = 0; i < inverse_.size() && i < d; ++i) {
    const auto& f = inverse_[i];
    const std::string label = "I" + std::to_string(i + 1);
    if (f.dimension() != d) {
      v.push_back(label + " must have " + std::to_string(d) + " variables");
      continue;
    }
    if (!f.exact()) v.push_back(label + " must be an exact polynomial");
    check_zp(f, label);
    if (f.constant_term() != 0) v.push_back(label + "(0) != 0");
  }
  if (model_ && model_->tag() == "heisenberg" && d != 3) v.emplace_back("heisenberg model requires d = 3");
  if (!v.empty()) throw GroupValidationError(std::move(v));
}

unsigned PValuedGroup::law_degree() const {
  int deg = 0;
  for (const auto& f : law_) deg = std::max(deg, f.degree());
  return static_cast<unsigned>(deg);
}

Scalar PValuedGroup::min_omega() const { return *std::min_element(omega_.begin(), omega_.end()); }
Scalar PValuedGroup::max_omega() const { return *std::max_element(omega_.begin(), omega_.end()); }
bool PValuedGroup::equi_valued() const { return min_omega() == max_omega(); }

// ---------------------------------------------------------------------------
// Built-ins

GroupPtr builtin_abelian(unsigned p, std::size_t d) {
  require_prime(p);
  if (d == 0) throw std::invalid_argument("rank must be positive");
  const Scalar eps = p == 2 ? Scalar(2) : Scalar(1);
  std::vector<TruncatedSeries> law;
  std::vector<TruncatedSeries> inv;
  for (std::size_t i = 0; i < d; ++i) {
    law.push_back(TruncatedSeries::variable(2 * d, i) + TruncatedSeries::variable(2 * d, d + i));
    inv.push_back(scale(Scalar(-1), TruncatedSeries::variable(d, i)));
  }
  std::string name = "abelian-p" + std::to_string(p) + "-d" + std::to_string(d);
  return std::make_shared<PValuedGroup>(name, p, std::vector<Scalar>(d, eps), std::move(law), std::move(inv),
                                        additive_model(d));
}

GroupPtr builtin_heisenberg(unsigned p) {
  require_prime(p);
  if (p == 2) {
    throw std::invalid_argument("heisenberg built-in needs p >= 3 (omega = 1 is not > 1/(p-1) at p = 2)");
  }
  const std::size_t d = 3;
  auto X = [](std::size_t i) { return TruncatedSeries::variable(6, i); };
  auto Y = [](std::size_t i) { return TruncatedSeries::variable(6, 3 + i); };
  const Scalar ps(p);
  std::vector<TruncatedSeries> law{
      X(0) + Y(0),
      X(1) + Y(1),
      X(2) + Y(2) - scale(ps, Y(0) * X(1)),
  };
  auto Z = [](std::size_t i) { return TruncatedSeries::variable(3, i); };
  std::vector<TruncatedSeries> inv{
      scale(Scalar(-1), Z(0)),
      scale(Scalar(-1), Z(1)),
      scale(Scalar(-1), Z(2)) - scale(ps, Z(0) * Z(1)),
  };
  return std::make_shared<PValuedGroup>("heisenberg-p" + std::to_string(p), p, std::vector<Scalar>(d, Scalar(1)),
                                        std::move(law), std::move(inv), heisenberg_model(p));
}

namespace {

unsigned parse_unsigned(std::string_view s, std::string_view tag) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed group tag \"" + std::string(tag) + "\"");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

GroupPtr builtin_group(std::string_view tag) {
  auto parts = split(tag, ':');
  if (parts[0] == "abelian" && parts.size() == 3) {
    return builtin_abelian(parse_unsigned(parts[1], tag), parse_unsigned(parts[2], tag));
  }
  if (parts[0] == "heisenberg" && parts.size() == 2) {
    return builtin_heisenberg(parse_unsigned(parts[1], tag));
  }
  throw std::invalid_argument("unknown built-in group \"" + std::string(tag) +
                              "\" (expected abelian:<p>:<d> or heisenberg:<p>)");
}

GroupPtr resolve_group(std::string_view source) {
  if (source.starts_with("abelian:") || source.starts_with("heisenberg:")) return builtin_group(source);
  return load_group_file(std::filesystem::path(std::string(source)));
}

// ---------------------------------------------------------------------------
// Arithmetic

GroupPoint identity(const PValuedGroup& g) { return GroupPoint{std::vector<Scalar>(g.dimension(), Scalar(0))}; }

GroupPoint make_point(const PValuedGroup& g, std::vector<Scalar> coords) {
  if (coords.size() != g.dimension()) {
    throw std::invalid_argument("point has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                                std::to_string(g.dimension()));
  }
  for (const auto& c : coords) {
    if (c != 0 && finite_valuation(c, g.p()) < 0) {
      throw std::invalid_argument("coordinate " + format_rational(c) + " is not a p-adic integer");
    }
  }
  return GroupPoint{std::move(coords)};
}

GroupPoint multiply(const PValuedGroup& g, const GroupPoint& x, const GroupPoint& y) {
  std::vector<Scalar> xy = x.coords;
  xy.insert(xy.end(), y.coords.begin(), y.coords.end());
  GroupPoint r;
  r.coords.reserve(g.dimension());
  for (const auto& f : g.law()) r.coords.push_back(evaluate(f, xy));
  return r;
}

GroupPoint invert(const PValuedGroup& g, const GroupPoint& x) {
  GroupPoint r;
  r.coords.reserve(g.dimension());
  for (const auto& f : g.inverse()) r.coords.push_back(evaluate(f, x.coords));
  return r;
}

GroupPoint power(const PValuedGroup& g, const GroupPoint& x, unsigned n) {
  GroupPoint r = identity(g);
  for (unsigned k = 0; k < n; ++k) r = multiply(g, r, x);
  return r;
}

GroupPoint commutator(const PValuedGroup& g, const GroupPoint& x, const GroupPoint& y) {
  GroupPoint xi = invert(g, x);
  GroupPoint yi = invert(g, y);
  return multiply(g, multiply(g, multiply(g, xi, yi), x), y);
}

ExtendedRational omega_of(const PValuedGroup& g, const GroupPoint& x) {
  ExtendedRational best = ExtendedRational::infinity();
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    if (x.coords[i] == 0) continue;
    best = min(best, ExtendedRational(Scalar(g.omega()[i] + finite_valuation(x.coords[i], g.p()))));
  }
  return best;
}

NeighborhoodParams neighborhood_params(const PValuedGroup& g, unsigned N) {
  if (N == 0) throw std::invalid_argument("N must be >= 1");
  NeighborhoodParams params;
  params.N = N;
  const Scalar base = g.inverse_p_minus_one();
  for (const auto& w : g.omega()) params.tau.push_back(Scalar((w - base) / (N + 1)));
  params.rho = params.tau;
  params.rho.insert(params.rho.end(), params.tau.begin(), params.tau.end());
  return params;
}

// ---------------------------------------------------------------------------

Integer SampleRng::below(const Integer& bound) {
  if (bound <= 0) throw std::invalid_argument("SampleRng::below needs a positive bound");
  if (bound.fits_ulong_p()) return Integer(below(static_cast<std::uint64_t>(bound.get_ui())));
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    Integer x = 0;
    for (std::size_t b = 0; b < bits; b += 64) {
      x <<= 64;
      Integer word;
      std::uint64_t w = next();
      mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
      x += word;
    }
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < bound) return x;
  }
}

GroupPoint random_point(const PValuedGroup& g, SampleRng& rng, unsigned precision) {
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), g.p(), precision);
  GroupPoint x;
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    Integer c = rng.below(modulus);
    const auto roll = rng.below(8);
    if (roll == 0) {
      c = 0;
    } else if (roll <= 2) {
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), g.p(), 1 + rng.below(3));
      c = (c * scale) % modulus;
    }
    x.coords.emplace_back(c);
  }
  return x;
}

}  // namespace dagger
