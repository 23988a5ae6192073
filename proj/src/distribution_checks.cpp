#include <algorithm>
#include <optional>

#include "dagger/distribution.hpp"
#include "dagger/rng.hpp"

namespace dagger {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

std::string q(const Scalar& x) { return format_rational(x); }

Params group_params(const PValuedGroup& g) {
  return {{"group", g.name()}, {"p", std::to_string(g.p())}, {"d", std::to_string(g.dimension())}};
}

// First moment where a and b differ.
std::optional<std::string> moment_difference(const Distribution& a, const Distribution& b) {
  auto diff = a.moments();
  for (const auto& [beta, mu] : b.moments()) diff[beta] -= mu;
  for (const auto& [beta, delta] : diff) {
    if (delta != 0) return "moment Z^" + beta.to_string() + " differs by " + q(delta);
  }
  return std::nullopt;
}

void note_first(std::optional<std::string>& witness, const std::string& text) {
  if (!witness) witness = text;
}

Scalar tau_dot(const std::vector<Scalar>& weights, const MultiIndex& alpha) {
  Scalar t = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) t += weights[i] * alpha[i];
  return t;
}

std::string gap_string(const std::optional<Scalar>& gap) { return gap ? q(*gap) : std::string("-inf"); }

void track_gap(std::optional<Scalar>& gap, const LogMag& lhs, const LogMag& rhs) {
  if (lhs.is_bottom() || rhs.is_bottom()) return;
  Scalar g = lhs.exponent() - rhs.exponent();
  if (!gap || g > *gap) gap = g;
}

struct ConvolutionTrial {
  Distribution left;
  Distribution right;
  Distribution product;
};

std::vector<ConvolutionTrial> convolution_trials(const GroupPtr& g, unsigned trials, std::uint64_t seed, unsigned cap) {
  SampleRng rng(seed);
  Convolver conv(g, cap);
  std::vector<ConvolutionTrial> out;
  for (unsigned t = 0; t < trials; ++t) {
    Distribution l = t == 0 ? dirac(g, identity(*g), cap) : random_distribution(g, rng, cap);
    Distribution m = t == 0 ? dirac(g, identity(*g), cap) : random_distribution(g, rng, cap);
    Distribution prod = conv(l, m);
    out.push_back(ConvolutionTrial{std::move(l), std::move(m), std::move(prod)});
  }
  return out;
}

// Shared body of the two submultiplicativity checks.
template <class Norm>
CheckRecord submult_record(const std::vector<ConvolutionTrial>& trials, Norm norm, CheckRecord rec, bool regime) {
  std::optional<std::string> witness;
  std::optional<Scalar> gap;
  bool all_exact = true;
  bool violated = false;
  unsigned equalities = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& tr = trials[t];
    const NormBound lhs = norm(tr.product);
    const NormBound a = norm(tr.left);
    const NormBound b = norm(tr.right);
    const LogMag rhs = a.value * b.value;
    track_gap(gap, lhs.value, rhs);
    if (!a.exact || !b.exact) {
      violated = true;
      note_first(witness, "trial " + std::to_string(t) + ": right-hand side is only a lower bound");
      continue;
    }
    all_exact = all_exact && lhs.exact;
    if (lhs.value > rhs) {
      violated = true;
      note_first(witness, "trial " + std::to_string(t) + ": |lambda*mu| = p^" + lhs.value.exponent_string() +
                              " > p^" + rhs.exponent_string());
    } else if (lhs.value == rhs) {
      ++equalities;
    }
  }
  rec.exponents.emplace_back("max_gap", gap_string(gap));
  rec.exponents.emplace_back("equalities", std::to_string(equalities));
  rec.exponents.emplace_back("observed", violated ? "violated" : "holds");
  rec.witness = witness;
  if (!regime) {
    rec.verdict = Verdict::RegimeUnmet;
  } else if (violated) {
    rec.verdict = Verdict::Fail;
  } else {
    rec.verdict = all_exact ? Verdict::Pass : Verdict::LowerBoundPass;
  }
  return rec;
}

// Least integer C >= 1 with p^e <= base^C, or nullopt if above limit.
std::optional<unsigned> least_power(const Scalar& e, unsigned p, const Integer& base, unsigned limit) {
  if (e <= 0) return 1U;
  if (base <= 1) return std::nullopt;
  // p^{a/b} <= base^C  <=>  p^a <= base^{C b}
  const Integer a = e.get_num();
  const Integer b = e.get_den();
  Integer lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), p, a.get_ui());
  Integer base_b;
  mpz_pow_ui(base_b.get_mpz_t(), base.get_mpz_t(), b.get_ui());
  Integer rhs = base_b;
  for (unsigned c = 1; c <= limit; ++c, rhs *= base_b) {
    if (lhs <= rhs) return c;
  }
  return std::nullopt;
}

constexpr unsigned kMaxComparisonConstant = 64;

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckRecord> check_convolution_algebra(GroupPtr g, unsigned samples, std::uint64_t seed, unsigned cap) {
  SampleRng rng(seed);
  Convolver conv(g, cap);
  Params base = group_params(*g);
  base.emplace_back("samples", std::to_string(samples));
  base.emplace_back("cap", std::to_string(cap));
  base.emplace_back("seed", std::to_string(seed));

  CheckRecord hom = make_record("convolution.dirac-homomorphism", "delta_x * delta_y = delta_{xy} on moments", base);
  CheckRecord opp = make_record("convolution.opposite-order", "opposite product: delta_x * delta_y = delta_{yx}", base);
  CheckRecord assoc =
      make_record("convolution.associativity", "(delta_x * delta_y) * delta_z = delta_x * (delta_y * delta_z)", base);
  CheckRecord unit = make_record("convolution.unit", "lambda * delta_e = delta_e * lambda = lambda", base);

  const Distribution e = dirac(g, identity(*g), cap);
  for (unsigned k = 0; k < samples; ++k) {
    const GroupPoint x = random_point(*g, rng, kDefaultPrecision);
    const GroupPoint y = random_point(*g, rng, kDefaultPrecision);
    const Distribution dx = dirac(g, x, cap);
    const Distribution dy = dirac(g, y, cap);
    if (auto w = moment_difference(conv(dx, dy), dirac(g, multiply(*g, x, y), cap))) {
      note_first(hom.witness, "pair " + std::to_string(k) + ": " + *w);
    }
    const Distribution op = conv(dx, dy, ProductOrder::Opposite);
    if (auto w = moment_difference(op, dirac(g, multiply(*g, y, x), cap))) {
      note_first(opp.witness, "pair " + std::to_string(k) + ": " + *w);
    } else if (auto w2 = moment_difference(op, conv(dy, dx))) {
      note_first(opp.witness, "pair " + std::to_string(k) + " against delta_y * delta_x: " + *w2);
    }
  }
  for (unsigned k = 0; k < samples / 2; ++k) {
    const Distribution dx = dirac(g, random_point(*g, rng, kDefaultPrecision), cap);
    const Distribution dy = dirac(g, random_point(*g, rng, kDefaultPrecision), cap);
    const Distribution dz = dirac(g, random_point(*g, rng, kDefaultPrecision), cap);
    if (auto w = moment_difference(conv(conv(dx, dy), dz), conv(dx, conv(dy, dz)))) {
      note_first(assoc.witness, "triple " + std::to_string(k) + ": " + *w);
    }
  }
  for (unsigned k = 0; k < samples / 2; ++k) {
    const Distribution lambda = random_distribution(g, rng, cap);
    // The same distribution again, known only through its moments.
    const unsigned deg = conv.input_degree();
    const auto indices = indices_up_to(g->dimension(), deg);
    const auto mu = lambda.moment_vector(deg);
    Distribution::Terms moments;
    for (std::size_t i = 0; i < indices.size(); ++i) moments.emplace(indices[i], mu[i]);
    const Distribution truncated = Distribution::from_moments(g, std::move(moments), deg);

    for (const auto& [label, prod] : {std::pair{"lambda * e", conv(lambda, e)}, std::pair{"e * lambda", conv(e, lambda)},
                                      std::pair{"truncated lambda * e", conv(truncated, e)}}) {
      if (auto w = moment_difference(prod, lambda)) {
        note_first(unit.witness, "sample " + std::to_string(k) + ", " + label + ": " + *w);
      }
    }
  }
  std::vector<CheckRecord> out{hom, opp, assoc, unit};
  for (auto& rec : out) rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return out;
}

std::vector<CheckRecord> check_submultiplicative(GroupPtr g, std::span<const Scalar> sigmas, unsigned trials,
                                                 std::uint64_t seed, unsigned cap) {
  const auto data = convolution_trials(g, trials, seed, cap);
  const Scalar omega0 = g->min_omega();
  const Scalar hyp_gap = 2 * omega0 - Scalar(g->p(), g->p() - 1);
  std::vector<CheckRecord> out;
  for (const Scalar& sigma : sigmas) {
    CheckRecord rec;
    rec.id = "submult.st-norm";
    rec.anchor = "||lambda * mu||_s <= ||lambda||_s ||mu||_s for s in [1/p, 1) when 2 omega_0 > p/(p-1)";
    rec.params = group_params(*g);
    rec.params.emplace_back("sigma", q(sigma));
    rec.params.emplace_back("trials", std::to_string(trials));
    rec.params.emplace_back("cap", std::to_string(cap));
    rec.params.emplace_back("seed", std::to_string(seed));
    rec.exponents.emplace_back("equi_valued", g->equi_valued() ? "true" : "false");
    rec.exponents.emplace_back("hyp_gap", q(hyp_gap));
    const bool regime = g->equi_valued() && hyp_gap > 0 && sigma > 0 && sigma <= 1;
    out.push_back(submult_record(data, [&](const Distribution& l) { return st_norm(l, sigma); }, std::move(rec), regime));
  }
  return out;
}

CheckRecord check_submultiplicative(GroupPtr g, const Scalar& sigma, unsigned trials, std::uint64_t seed,
                                    unsigned cap) {
  const Scalar sigmas[] = {sigma};
  return check_submultiplicative(std::move(g), sigmas, trials, seed, cap).front();
}

std::vector<CheckRecord> check_banach_submult_N(GroupPtr g, std::span<const unsigned> Ns, unsigned trials,
                                                std::uint64_t seed, unsigned cap) {
  const auto data = convolution_trials(g, trials, seed, cap);
  std::vector<CheckRecord> out;
  for (unsigned N : Ns) {
    CheckRecord rec;
    rec.id = "submult.dagger-norm";
    rec.anchor = "||lambda * mu||_N <= ||lambda||_N ||mu||_N when m* has norm <= 1 on B_N";
    rec.params = group_params(*g);
    rec.params.emplace_back("N", std::to_string(N));
    rec.params.emplace_back("trials", std::to_string(trials));
    rec.params.emplace_back("cap", std::to_string(cap));
    rec.params.emplace_back("seed", std::to_string(seed));
    const auto polydisc = check_polydisc_bound(*g, N);
    const bool regime = std::all_of(polydisc.begin(), polydisc.end(), [](const CheckRecord& r) { return r.ok(); });
    rec.exponents.emplace_back("polydisc", regime ? "pass" : "fail");
    out.push_back(submult_record(data, [&](const Distribution& l) { return dagger_norm(l, N); }, std::move(rec), regime));
  }
  return out;
}

CheckRecord check_banach_submult_N(GroupPtr g, unsigned N, unsigned trials, std::uint64_t seed, unsigned cap) {
  const unsigned Ns[] = {N};
  return check_banach_submult_N(std::move(g), Ns, trials, seed, cap).front();
}

// ---------------------------------------------------------------------------

CheckRecord check_contact_embedding(const PValuedGroup& g, const Scalar& sigma, std::span<const Distribution> samples) {
  if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
  const unsigned p = g.p();
  const Scalar damping = g.inverse_p_minus_one() - sigma * g.min_omega();
  CheckRecord rec;
  rec.id = "embedding.contact";
  rec.anchor = "|d_a| s^{tau a} <= |a! d_a| (s^{min omega} / theta)^{|a|} for s < theta^{1/min omega}";
  rec.params = group_params(g);
  rec.params.emplace_back("sigma", q(sigma));
  rec.params.emplace_back("samples", std::to_string(samples.size()));
  rec.exponents.emplace_back("damping", q(damping));

  std::optional<Scalar> min_slack;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (const auto& [alpha, d] : samples[k].dcoeffs()) {
      const Scalar vd = finite_valuation(d, p);
      const Scalar lhs = -vd - sigma * tau_dot(g.omega(), alpha);
      const Scalar rhs = -vd - factorial_valuation(alpha, p) + damping * alpha.total();
      const Scalar slack = rhs - lhs;
      if (!min_slack || slack < *min_slack) min_slack = slack;
      if (slack < 0) {
        note_first(rec.witness, "sample " + std::to_string(k) + ", a = " + alpha.to_string() + ": p^" + q(lhs) +
                                    " > p^" + q(rhs));
      }
    }
  }
  rec.exponents.emplace_back("min_slack", min_slack ? q(*min_slack) : std::string("inf"));
  if (damping >= 0) {
    rec.verdict = Verdict::RegimeUnmet;
  } else {
    rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  }
  return rec;
}

std::vector<CheckRecord> check_comparison_maps(const PValuedGroup& g, unsigned N, const Scalar& sigma,
                                               std::span<const Distribution> samples) {
  if (sigma <= 0) throw std::invalid_argument("sigma must be positive");
  const unsigned p = g.p();
  const auto params = neighborhood_params(g, N);
  const Scalar inv = g.inverse_p_minus_one();
  const Scalar minw = g.min_omega();
  const Scalar maxw = g.max_omega();

  Params base = group_params(g);
  base.emplace_back("N", std::to_string(N));
  base.emplace_back("sigma", q(sigma));
  base.emplace_back("samples", std::to_string(samples.size()));

  // log_p of r_j s^{min omega} theta^{-1} and of s^{-max omega} r_j^{-1} theta.
  std::vector<Scalar> factor1;
  std::vector<Scalar> factor2;
  for (const auto& t : params.tau) {
    factor1.push_back(t - sigma * minw + inv);
    factor2.push_back(sigma * maxw - t - inv);
  }
  const Scalar regime1 = *std::max_element(factor1.begin(), factor1.end());
  const Scalar regime2 = *std::max_element(factor2.begin(), factor2.end());

  CheckRecord part1 = make_record(
      "comparison.contraction", "|d_a| s^{tau a} <= |a! d_a| r^{-a} when r_j s^{min omega} theta^{-1} < 1 for all j",
      base);
  CheckRecord part2 = make_record(
      "comparison.continuity",
      "|a! d_a| r^{-a} <= |d_a| s^{tau a} prod_j (s^{-max omega} r_j^{-1} theta)^{a_j} prod_j (1 + a_j)^C "
      "when s^{-max omega} r_j^{-1} theta < 1 for all j",
      base);
  part1.exponents.emplace_back("regime_max", q(regime1));
  part2.exponents.emplace_back("regime_max", q(regime2));

  std::optional<Scalar> slack1;
  unsigned constant = 1;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (const auto& [alpha, d] : samples[k].dcoeffs()) {
      const Scalar vd = finite_valuation(d, p);
      const Scalar st_side = -vd - sigma * tau_dot(g.omega(), alpha);
      const Scalar dagger_side = -vd - factorial_valuation(alpha, p) - tau_dot(params.tau, alpha);
      const Scalar s = dagger_side - st_side;
      if (!slack1 || s < *slack1) slack1 = s;
      if (s < 0) {
        note_first(part1.witness, "sample " + std::to_string(k) + ", a = " + alpha.to_string() + ": p^" +
                                      q(st_side) + " > p^" + q(dagger_side));
      }

      const Scalar bound = st_side + tau_dot(factor2, alpha);
      Integer poly = 1;
      for (unsigned a : alpha) poly *= a + 1;
      const auto c = least_power(dagger_side - bound, p, poly, kMaxComparisonConstant);
      if (!c) {
        note_first(part2.witness, "sample " + std::to_string(k) + ", a = " + alpha.to_string() + ": p^" +
                                      q(dagger_side - bound) + " exceeds prod (1 + a_j)^" +
                                      std::to_string(kMaxComparisonConstant));
      } else {
        constant = std::max(constant, *c);
      }
    }
  }
  part1.exponents.emplace_back("min_slack", slack1 ? q(*slack1) : std::string("inf"));
  part2.exponents.emplace_back("C", std::to_string(constant));

  part1.verdict = regime1 >= 0 ? Verdict::RegimeUnmet : (part1.witness ? Verdict::Fail : Verdict::Pass);
  part2.verdict = regime2 >= 0 ? Verdict::RegimeUnmet : (part2.witness ? Verdict::Fail : Verdict::Pass);
  return {part1, part2};
}

CheckRecord check_norm_tower(std::span<const Distribution> samples, unsigned n_max) {
  CheckRecord rec;
  rec.id = "norms.tower";
  rec.anchor = "||lambda||_N <= ||lambda||_{N+1}";
  if (!samples.empty()) rec.params = group_params(samples.front().group());
  rec.params.emplace_back("N_max", std::to_string(n_max));
  rec.params.emplace_back("samples", std::to_string(samples.size()));
  bool all_exact = true;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    all_exact = all_exact && samples[k].support_complete();
    NormBound prev = dagger_norm(samples[k], 1);
    for (unsigned N = 1; N <= n_max; ++N) {
      NormBound next = dagger_norm(samples[k], N + 1);
      if (prev.value > next.value) {
        note_first(rec.witness, "sample " + std::to_string(k) + ", N = " + std::to_string(N) + ": p^" +
                                    prev.value.exponent_string() + " > p^" + next.value.exponent_string());
      }
      prev = next;
    }
  }
  rec.verdict = rec.witness ? Verdict::Fail : (all_exact ? Verdict::Pass : Verdict::LowerBoundPass);
  return rec;
}

CheckRecord check_norm_sandwich(std::span<const Distribution> samples, const Scalar& sigma) {
  CheckRecord rec;
  rec.id = "norms.sandwich";
  rec.anchor = "||lambda||'_{s^{max omega}} <= ||lambda||_s <= ||lambda||'_{s^{min omega}}";
  if (!samples.empty()) rec.params = group_params(samples.front().group());
  rec.params.emplace_back("sigma", q(sigma));
  rec.params.emplace_back("samples", std::to_string(samples.size()));
  bool all_exact = true;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& lambda = samples[k];
    all_exact = all_exact && lambda.support_complete();
    const LogMag low = st_norm_prime(lambda, sigma * lambda.group().max_omega()).value;
    const LogMag mid = st_norm(lambda, sigma).value;
    const LogMag high = st_norm_prime(lambda, sigma * lambda.group().min_omega()).value;
    if (low > mid || mid > high) {
      note_first(rec.witness, "sample " + std::to_string(k) + ": exponents " + low.exponent_string() + ", " +
                                  mid.exponent_string() + ", " + high.exponent_string());
    }
  }
  rec.verdict = rec.witness ? Verdict::Fail : (all_exact ? Verdict::Pass : Verdict::LowerBoundPass);
  return rec;
}

}  // namespace dagger
