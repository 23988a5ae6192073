#include "dagger/functions.hpp"

#include <optional>
#include <stdexcept>

#include "dagger/mahler.hpp"
#include "dagger/rng.hpp"

namespace dagger {

DaggerFunction::DaggerFunction(GroupPtr g, TruncatedSeries body) : group_(std::move(g)), body_(std::move(body)) {
  if (body_.dimension() != group_->dimension()) {
    throw std::invalid_argument("function body has " + std::to_string(body_.dimension()) + " variables, group has dimension " +
                                std::to_string(group_->dimension()));
  }
  if (!body_.exact()) throw std::invalid_argument("function body must be an exact polynomial");
}

DaggerFunction DaggerFunction::coordinate(GroupPtr g, std::size_t i) {
  const std::size_t d = g->dimension();
  return DaggerFunction(std::move(g), TruncatedSeries::variable(d, i));
}

Scalar eval_at(const DaggerFunction& f, const GroupPoint& x) {
  if (x.size() != f.group().dimension()) throw std::invalid_argument("eval_at: point has wrong dimension");
  return evaluate(f.body(), x.coords);
}

TruncatedSeries comul(const DaggerFunction& f) { return substitute(f.body(), f.group().law()); }

DaggerFunction inv_pullback(const DaggerFunction& f) {
  return DaggerFunction(f.shared_group(), substitute(f.body(), f.group().inverse()));
}

DaggerFunction right_translate(const DaggerFunction& f, const GroupPoint& h) {
  const std::size_t d = f.group().dimension();
  if (h.size() != d) throw std::invalid_argument("right_translate: point has wrong dimension");
  std::vector<std::optional<Scalar>> values(2 * d);
  for (std::size_t i = 0; i < d; ++i) values[d + i] = h.coords[i];
  return DaggerFunction(f.shared_group(), partial_evaluate(comul(f), values));
}

Scalar pair(const Distribution& lambda, const DaggerFunction& f) {
  if (lambda.group().dimension() != f.group().dimension()) throw std::invalid_argument("pair: dimension mismatch");
  if (f.body().degree() > static_cast<int>(lambda.cap()) && !lambda.exact()) {
    throw std::invalid_argument("pair: function degree " + std::to_string(f.body().degree()) +
                                " exceeds the distribution cap " + std::to_string(lambda.cap()));
  }
  Scalar sum = 0;
  for (const auto& [beta, c] : f.body().terms()) sum += c * lambda.moment(beta);
  return sum;
}

Scalar pair_product(const Distribution& lambda, const Distribution& mu, const TruncatedSeries& g) {
  const std::size_t d = lambda.group().dimension();
  if (g.dimension() != 2 * d) throw std::invalid_argument("pair_product: expected a series in 2d variables");
  Scalar sum = 0;
  for (const auto& [mono, c] : g.terms()) sum += c * lambda.moment(mono.slice(0, d)) * mu.moment(mono.slice(d, d));
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

TruncatedSeries random_polynomial(std::size_t d, SampleRng& rng, unsigned max_degree) {
  const auto choices = indices_up_to(d, max_degree);
  TruncatedSeries::Terms terms;
  const auto count = 1 + rng.below(4);
  for (std::uint64_t k = 0; k < count; ++k) {
    terms[choices[rng.below(choices.size())]] += Scalar(static_cast<long>(rng.between(-5, 5)));
  }
  return TruncatedSeries(d, kNoTruncation, std::move(terms));
}

std::vector<TruncatedSeries> block(std::size_t dim, std::size_t first, std::size_t count) {
  std::vector<TruncatedSeries> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(TruncatedSeries::variable(dim, first + i));
  return out;
}

std::vector<TruncatedSeries> apply_all(std::span<const TruncatedSeries> fs, std::span<const TruncatedSeries> args) {
  std::vector<TruncatedSeries> out;
  for (const auto& f : fs) out.push_back(substitute(f, args));
  return out;
}

void note(CheckRecord& rec, unsigned k, const std::string& text) {
  if (!rec.witness) rec.witness = "sample " + std::to_string(k) + ": " + text;
}

}  // namespace

std::vector<CheckRecord> check_function_side(GroupPtr g, unsigned samples, std::uint64_t seed, unsigned cap) {
  const std::size_t d = g->dimension();
  SampleRng rng(seed);
  std::vector<std::pair<std::string, std::string>> params{{"group", g->name()},
                                                          {"p", std::to_string(g->p())},
                                                          {"d", std::to_string(d)},
                                                          {"samples", std::to_string(samples)},
                                                          {"cap", std::to_string(cap)},
                                                          {"seed", std::to_string(seed)}};
  CheckRecord coassoc = make_record("functions.coassociativity", "f(F(F(X,Y),Z)) = f(F(X,F(Y,Z)))", params);
  CheckRecord counit = make_record("functions.counit", "m*(f)(X, 0) = m*(f)(0, X) = f", params);
  CheckRecord antipode = make_record("functions.antipode", "m*(f)(X, I(X)) = f(e)", params);
  CheckRecord involution = make_record("functions.inversion", "i*(i*(f)) = f", params);
  CheckRecord action = make_record("functions.right-action", "(R_h f)(x) = f(xh) and R_{h'} R_h = R_{h'h}", params);
  CheckRecord pairing = make_record(
      "functions.pairing", "(lambda * mu)(f) = (lambda x mu)(m* f), delta_x(f) = f(x), b^a(f) = m_a(f)", params);

  // Outer law F(F(X,Y),Z) and F(X,F(Y,Z)) in 3d variables.
  const auto X = block(3 * d, 0, d);
  const auto Y = block(3 * d, d, d);
  const auto Z = block(3 * d, 2 * d, d);
  auto cat = [](std::vector<TruncatedSeries> a, const std::vector<TruncatedSeries>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const auto FXY = apply_all(g->law(), cat(X, Y));
  const auto FYZ = apply_all(g->law(), cat(Y, Z));
  const auto left_nested = cat(FXY, Z);
  const auto right_nested = cat(X, FYZ);
  const auto X1 = block(d, 0, d);
  const auto antipode_args = cat(X1, g->inverse());

  Convolver conv(g, cap);
  const unsigned fdeg = std::min(3U, cap);
  for (unsigned k = 0; k < samples; ++k) {
    const DaggerFunction f(g, random_polynomial(d, rng, fdeg));
    const TruncatedSeries cf = comul(f);

    if (substitute(cf, left_nested) != substitute(cf, right_nested)) note(coassoc, k, "the two bracketings differ");

    std::vector<std::optional<Scalar>> zero_y(2 * d);
    std::vector<std::optional<Scalar>> zero_x(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      zero_y[d + i] = Scalar(0);
      zero_x[i] = Scalar(0);
    }
    if (partial_evaluate(cf, zero_y) != f.body() || partial_evaluate(cf, zero_x) != f.body()) {
      note(counit, k, "setting one block to 0 does not return f");
    }

    const Scalar at_e = eval_at(f, identity(*g));
    if (substitute(cf, antipode_args) != TruncatedSeries::constant(d, at_e)) note(antipode, k, "m*(f)(X, I(X)) is not constant");

    if (inv_pullback(inv_pullback(f)).body() != f.body()) note(involution, k, "i* is not an involution");

    const GroupPoint x = random_point(*g, rng, kDefaultPrecision);
    const GroupPoint h = random_point(*g, rng, kDefaultPrecision);
    const GroupPoint h2 = random_point(*g, rng, kDefaultPrecision);
    const DaggerFunction rh = right_translate(f, h);
    if (eval_at(rh, x) != eval_at(f, multiply(*g, x, h))) note(action, k, "(R_h f)(x) != f(xh)");
    if (right_translate(rh, h2).body() != right_translate(f, multiply(*g, h2, h)).body()) {
      note(action, k, "R_{h'} R_h != R_{h'h}");
    }

    if (pair(dirac(g, x, cap), f) != eval_at(f, x)) note(pairing, k, "delta_x(f) != f(x)");
    const Distribution lambda = random_distribution(g, rng, cap);
    const Distribution mu = random_distribution(g, rng, cap);
    if (pair(conv(lambda, mu), f) != pair_product(lambda, mu, cf)) note(pairing, k, "(lambda * mu)(f) != (lambda x mu)(m* f)");
    const MahlerFamily m = taylor_to_mahler(f.body());
    for (const auto& alpha : indices_up_to(d, fdeg)) {
      if (pair(b_monomial(g, alpha, cap), f) != m.coeff(alpha)) {
        note(pairing, k, "b^" + alpha.to_string() + "(f) differs from the Mahler coefficient");
        break;
      }
    }
  }
  std::vector<CheckRecord> out{coassoc, counit, antipode, involution, action, pairing};
  for (auto& rec : out) rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return out;
}

}  // namespace dagger
