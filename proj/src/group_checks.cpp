#include <algorithm>
#include <functional>

#include "dagger/group.hpp"
#include "dagger/rng.hpp"

namespace dagger {

namespace {

std::string monomial_name(const MultiIndex& alpha, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (alpha[i] > 1) s += "^" + std::to_string(alpha[i]);
  }
  return s.empty() ? "1" : s;
}

// First (graded-lex) monomial where lhs and rhs differ, as a witness string.
std::optional<std::string> difference_witness(const TruncatedSeries& lhs, const TruncatedSeries& rhs,
                                              const std::vector<std::string>& names, const std::string& label) {
  TruncatedSeries diff = lhs - rhs;
  if (diff.is_zero()) return std::nullopt;
  const auto& [alpha, c] = *diff.terms().begin();
  return label + ": coefficient of " + monomial_name(alpha, names) + " differs by " + format_rational(c);
}

std::vector<std::string> block_names(std::size_t d, std::initializer_list<const char*> prefixes) {
  std::vector<std::string> names;
  for (const char* prefix : prefixes) {
    auto block = variable_names(d, prefix);
    names.insert(names.end(), block.begin(), block.end());
  }
  return names;
}

TruncatedSeries reverse_variables(const TruncatedSeries& f) {
  TruncatedSeries::Terms terms;
  for (const auto& [alpha, c] : f.terms()) terms.emplace(alpha.reversed(), c);
  return TruncatedSeries(f.dimension(), f.cap(), std::move(terms), f.exact());
}

std::vector<std::pair<std::string, std::string>> group_params(const PValuedGroup& g) {
  return {{"group", g.name()}, {"p", std::to_string(g.p())}, {"d", std::to_string(g.dimension())}};
}

bool congruent(const Scalar& a, const Scalar& b, unsigned p, unsigned k) {
  Scalar diff = a - b;
  return diff == 0 || finite_valuation(diff, p) >= k;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckRecord> check_formal_group_axioms(const PValuedGroup& g, unsigned cap) {
  const std::size_t d = g.dimension();
  const auto names3 = block_names(d, {"X", "Y", "Z"});
  const auto names1 = variable_names(d, "X");

  std::vector<TruncatedSeries> X3;
  std::vector<TruncatedSeries> Y3;
  std::vector<TruncatedSeries> Z3;
  std::vector<TruncatedSeries> X1;
  for (std::size_t i = 0; i < d; ++i) {
    X3.push_back(TruncatedSeries::variable(3 * d, i, cap));
    Y3.push_back(TruncatedSeries::variable(3 * d, d + i, cap));
    Z3.push_back(TruncatedSeries::variable(3 * d, 2 * d + i, cap));
    X1.push_back(TruncatedSeries::variable(d, i, cap));
  }
  auto cat = [](std::vector<TruncatedSeries> a, const std::vector<TruncatedSeries>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  auto apply_law = [&](const std::vector<TruncatedSeries>& args) {
    std::vector<TruncatedSeries> out;
    for (const auto& f : g.law()) out.push_back(substitute(f, args));
    return out;
  };
  std::vector<TruncatedSeries> inv;
  for (const auto& f : g.inverse()) inv.push_back(substitute(f, X1));
  const std::vector<TruncatedSeries> zeros(d, TruncatedSeries::zero(d, cap));

  struct Identity {
    const char* id;
    const char* anchor;
    std::vector<TruncatedSeries> lhs;
    std::vector<TruncatedSeries> rhs;
    const std::vector<std::string>* names;
  };
  std::vector<Identity> identities;
  identities.push_back({"formal-group.associativity", "F(F(X,Y),Z) = F(X,F(Y,Z))",
                        apply_law(cat(apply_law(cat(X3, Y3)), Z3)), apply_law(cat(X3, apply_law(cat(Y3, Z3)))),
                        &names3});
  identities.push_back({"formal-group.right-unit", "F(X,0) = X", apply_law(cat(X1, zeros)), X1, &names1});
  identities.push_back({"formal-group.left-unit", "F(0,Y) = Y", apply_law(cat(zeros, X1)), X1, &names1});
  identities.push_back({"formal-group.right-inverse", "F(X,I(X)) = 0", apply_law(cat(X1, inv)), zeros, &names1});
  identities.push_back({"formal-group.left-inverse", "F(I(X),X) = 0", apply_law(cat(inv, X1)), zeros, &names1});

  std::vector<CheckRecord> records;
  for (auto& identity : identities) {
    CheckRecord rec;
    rec.id = identity.id;
    rec.anchor = identity.anchor;
    rec.params = group_params(g);
    bool all_exact = true;
    for (std::size_t i = 0; i < d; ++i) {
      all_exact = all_exact && identity.lhs[i].exact() && identity.rhs[i].exact();
      if (!rec.witness) {
        rec.witness = difference_witness(identity.lhs[i], identity.rhs[i], *identity.names,
                                         "component " + std::to_string(i + 1));
      }
    }
    rec.params.emplace_back("cap", cap == kNoTruncation ? std::string("none") : std::to_string(cap));
    rec.params.emplace_back("verified_degree", all_exact ? std::string("all") : std::to_string(cap));
    rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
    records.push_back(std::move(rec));
  }
  return records;
}

CheckRecord check_model_consistency(const PValuedGroup& g, unsigned samples, std::uint64_t seed, unsigned precision) {
  CheckRecord rec;
  rec.id = "group.model-consistency";
  rec.anchor = "psi(x) psi(y) = psi(F(x,y)) and psi(x)^{-1} = psi(I(x))";
  rec.params = group_params(g);
  rec.params.emplace_back("samples", std::to_string(samples));
  rec.params.emplace_back("seed", std::to_string(seed));
  rec.params.emplace_back("precision", std::to_string(precision));
  const GroupModel* model = g.model();
  if (model == nullptr) {
    rec.verdict = Verdict::RegimeUnmet;
    rec.witness = "group has no external model";
    return rec;
  }
  rec.params.emplace_back("model", model->tag());
  SampleRng rng(seed);
  for (unsigned s = 0; s < samples && !rec.witness; ++s) {
    GroupPoint x = random_point(g, rng, precision);
    GroupPoint y = random_point(g, rng, precision);
    GroupPoint via_law = multiply(g, x, y);
    GroupPoint via_model = model->coordinates(model->multiply(model->embed(x), model->embed(y)));
    if (!(via_law == via_model)) {
      rec.witness = "multiply " + x.to_string() + " * " + y.to_string() + ": law gives " + via_law.to_string() +
                    ", model gives " + via_model.to_string();
      break;
    }
    GroupPoint inv_law = invert(g, x);
    GroupPoint inv_model = model->coordinates(model->invert(model->embed(x)));
    if (!(inv_law == inv_model)) {
      rec.witness = "invert " + x.to_string() + ": law gives " + inv_law.to_string() + ", model gives " +
                    inv_model.to_string();
    }
  }
  rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return rec;
}

std::vector<CheckRecord> check_pvaluation(const PValuedGroup& g, unsigned samples, std::uint64_t seed,
                                          unsigned precision) {
  auto make = [&](const char* id, const char* anchor) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.params = group_params(g);
    rec.params.emplace_back("samples", std::to_string(samples));
    rec.params.emplace_back("seed", std::to_string(seed));
    rec.params.emplace_back("precision", std::to_string(precision));
    return rec;
  };
  CheckRecord ultra = make("pvaluation.ultrametric", "omega(x y^{-1}) >= min(omega(x), omega(y))");
  CheckRecord product = make("pvaluation.product", "omega(x y) >= min(omega(x), omega(y))");
  CheckRecord comm = make("pvaluation.commutator", "omega([x,y]) >= omega(x) + omega(y), [x,y] = x^{-1} y^{-1} x y");
  CheckRecord ppow = make("pvaluation.p-power", "omega(x^p) = omega(x) + 1");

  SampleRng rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    // The first pair pins the identity so the vacuous cases are exercised.
    GroupPoint x = s == 0 ? identity(g) : random_point(g, rng, precision);
    GroupPoint y = random_point(g, rng, precision);
    const ExtendedRational wx = omega_of(g, x);
    const ExtendedRational wy = omega_of(g, y);
    const std::string pair = "x=" + x.to_string() + " y=" + y.to_string();

    const ExtendedRational w_quot = omega_of(g, multiply(g, x, invert(g, y)));
    if (!ultra.witness && w_quot < min(wx, wy)) {
      ultra.witness = pair + ": omega(x y^-1) = " + w_quot.to_string();
    }
    const ExtendedRational w_prod = omega_of(g, multiply(g, x, y));
    if (!product.witness && w_prod < min(wx, wy)) {
      product.witness = pair + ": omega(x y) = " + w_prod.to_string();
    }
    const ExtendedRational w_comm = omega_of(g, commutator(g, x, y));
    if (!comm.witness && w_comm < wx + wy) {
      comm.witness = pair + ": omega([x,y]) = " + w_comm.to_string() + " < " + (wx + wy).to_string();
    }
    const ExtendedRational w_pow = omega_of(g, power(g, x, g.p()));
    if (!ppow.witness && !(w_pow == wx + ExtendedRational(Scalar(1)))) {
      ppow.witness = "x=" + x.to_string() + ": omega(x^p) = " + w_pow.to_string() + ", omega(x) = " + wx.to_string();
    }
  }
  std::vector<CheckRecord> out{ultra, product, comm, ppow};
  for (auto& rec : out) rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
  return out;
}

RootSearch find_pth_root(const PValuedGroup& g, const GroupPoint& x, unsigned precision) {
  const unsigned p = g.p();
  const std::size_t d = g.dimension();
  RootSearch result;
  result.root = identity(g);

  auto matches = [&](const GroupPoint& y, unsigned k) {
    GroupPoint py = power(g, y, p);
    for (std::size_t i = 0; i < d; ++i) {
      if (!congruent(py.coords[i], x.coords[i], p, k)) return false;
    }
    return true;
  };
  if (!matches(result.root, 1)) return result;
  result.depth = 1;

  std::size_t budget = 20000;
  std::size_t candidates = 1;
  for (std::size_t i = 0; i < d; ++i) candidates *= p;

  // y is fixed mod p^k and y^p agrees with x mod p^{k+1}; choose the next
  // digit vector t so that (y + p^k t)^p agrees mod p^{k+2}.
  std::function<bool(GroupPoint&, unsigned, const Scalar&)> extend = [&](GroupPoint& y, unsigned k,
                                                                         const Scalar& pk) -> bool {
    result.depth = std::max(result.depth, k + 1);
    if (k + 1 >= precision) return true;
    Scalar next_pk = pk * p;
    for (std::size_t code = 0; code < candidates; ++code) {
      if (budget-- == 0) return false;
      GroupPoint cand = y;
      std::size_t rest = code;
      for (std::size_t i = 0; i < d; ++i) {
        cand.coords[i] += pk * Scalar(static_cast<unsigned long>(rest % p));
        rest /= p;
      }
      if (matches(cand, k + 2)) {
        if (extend(cand, k + 1, next_pk)) {
          y = cand;
          return true;
        }
      }
    }
    return false;
  };
  GroupPoint y = identity(g);
  result.found = extend(y, 0, Scalar(1));
  if (result.found) result.root = y;
  return result;
}

CheckRecord check_saturation(const PValuedGroup& g, unsigned samples, std::uint64_t seed, unsigned precision) {
  CheckRecord rec;
  rec.id = "saturation.pth-roots";
  rec.anchor = "omega(x) > p/(p-1) implies x is a p-th power (checked mod p^M)";
  rec.params = group_params(g);
  rec.params.emplace_back("samples", std::to_string(samples));
  rec.params.emplace_back("seed", std::to_string(seed));
  rec.params.emplace_back("precision", std::to_string(precision));
  const Scalar threshold(g.p(), g.p() - 1);
  SampleRng rng(seed);
  unsigned tested = 0;
  unsigned skipped = 0;
  unsigned min_depth = precision;
  for (unsigned s = 0; s < samples; ++s) {
    GroupPoint x = random_point(g, rng, precision);
    if (rng.coin()) {
      for (auto& c : x.coords) c *= g.p();
    }
    const ExtendedRational w = omega_of(g, x);
    if (w <= ExtendedRational(threshold) || w.is_infinite()) {
      ++skipped;
      continue;
    }
    ++tested;
    RootSearch found = find_pth_root(g, x, precision);
    min_depth = std::min(min_depth, found.depth);
    if (!found.found && !rec.witness) {
      rec.witness = "x=" + x.to_string() + " (omega " + w.to_string() + "): lifting stalled at depth " +
                    std::to_string(found.depth);
    }
  }
  rec.params.emplace_back("tested", std::to_string(tested));
  rec.params.emplace_back("skipped", std::to_string(skipped));
  rec.exponents.emplace_back("threshold", format_rational(threshold));
  rec.exponents.emplace_back("min_depth", std::to_string(tested ? min_depth : 0));
  if (rec.witness) {
    rec.verdict = Verdict::Fail;
  } else if (tested == 0) {
    rec.verdict = Verdict::RegimeUnmet;
    rec.witness = "no sample satisfied omega(x) > p/(p-1)";
  } else {
    rec.verdict = Verdict::Pass;
  }
  return rec;
}

std::vector<CheckRecord> check_coefficient_bound(const PValuedGroup& g) {
  const std::size_t d = g.dimension();
  const Scalar base = g.inverse_p_minus_one();
  std::vector<CheckRecord> out;

  // h_weights[j] = omega(h_j) - 1/(p-1) for the variables of the series.
  auto check = [&](const char* id, const char* anchor, const std::vector<TruncatedSeries>& series,
                   const std::vector<Scalar>& h_weights, const std::vector<std::string>& names, const char* label) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.params = group_params(g);
    std::optional<Scalar> min_slack;
    std::size_t tight = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
      for (const auto& [alpha, c] : series[i].terms()) {
        Scalar rhs = -(g.omega()[i] - base);
        for (std::size_t j = 0; j < alpha.size(); ++j) rhs += h_weights[j] * alpha[j];
        const Scalar v = finite_valuation(c, g.p());
        const Scalar slack = v - rhs;
        ++count;
        if (slack == 0) ++tight;
        if (!min_slack || slack < *min_slack) min_slack = slack;
        if (slack < 0 && !rec.witness) {
          rec.witness = std::string(label) + std::to_string(i + 1) + " term " + monomial_name(alpha, names) + ": v = " +
                        format_rational(v) + " < bound " + format_rational(rhs);
        }
      }
    }
    rec.params.emplace_back("coefficients", std::to_string(count));
    rec.exponents.emplace_back("min_slack", min_slack ? format_rational(*min_slack) : std::string("none"));
    rec.exponents.emplace_back("tight", std::to_string(tight));
    rec.verdict = rec.witness ? Verdict::Fail : Verdict::Pass;
    out.push_back(std::move(rec));
  };

  std::vector<Scalar> law_weights;
  for (int block = 0; block < 2; ++block) {
    for (const auto& w : g.omega()) law_weights.push_back(w - base);
  }
  check("coeff-bound.law", "v(d_{i,a}) >= -(omega(g_i) - 1/(p-1)) + sum_j a_j (omega(h_j) - 1/(p-1))", g.law(),
        law_weights, block_names(d, {"X", "Y"}), "F");

  // J_i(Y_1..Y_d) = I_i(Y_d..Y_1); h_j = g_{d+1-j}^{-1} and omega(g^{-1}) = omega(g).
  std::vector<TruncatedSeries> reversed;
  for (const auto& f : g.inverse()) reversed.push_back(reverse_variables(f));
  std::vector<Scalar> inv_weights;
  for (std::size_t j = 0; j < d; ++j) inv_weights.push_back(g.omega()[d - 1 - j] - base);
  check("coeff-bound.inverse",
        "v(d_{i,a}) >= -(omega(g_i) - 1/(p-1)) + sum_j a_j (omega(h_j) - 1/(p-1)) for J_i(Y) = I_i(Y_d..Y_1)",
        reversed, inv_weights, variable_names(d, "Y"), "J");
  return out;
}

std::vector<CheckRecord> check_polydisc_bound(const PValuedGroup& g, unsigned N) {
  const std::size_t d = g.dimension();
  const NeighborhoodParams params = neighborhood_params(g, N);
  std::vector<CheckRecord> out;

  auto check = [&](const char* id, const char* anchor, const std::vector<TruncatedSeries>& series,
                   const RadiusVector& radii, const char* label) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.params = group_params(g);
    rec.params.emplace_back("N", std::to_string(N));
    bool all_exact = true;
    for (std::size_t i = 0; i < d; ++i) {
      const NormBound norm = gauss_norm(series[i], radii, g.p());
      all_exact = all_exact && norm.exact;
      const LogMag bound = LogMag::power(params.tau[i]);
      const std::string name = std::string(label) + std::to_string(i + 1);
      rec.exponents.emplace_back("norm_" + name, norm.value.exponent_string());
      rec.exponents.emplace_back("bound_" + name, bound.exponent_string());
      if (norm.value > bound && !rec.witness) {
        rec.witness = name + ": Gauss norm p^" + norm.value.exponent_string() + " exceeds p^" + bound.exponent_string();
      }
    }
    if (rec.witness) {
      rec.verdict = Verdict::Fail;
    } else {
      rec.verdict = all_exact ? Verdict::Pass : Verdict::LowerBoundPass;
    }
    out.push_back(std::move(rec));
  };

  check("polydisc.law", "sup of F_i on B(p^{rho_N}) x B(p^{rho_N}) <= p^{tau_{N,i}}", g.law(), RadiusVector(params.rho),
        "F");
  std::vector<TruncatedSeries> reversed;
  for (const auto& f : g.inverse()) reversed.push_back(reverse_variables(f));
  check("polydisc.inverse", "|y_j| <= p^{tau_{N,d+1-j}} implies |J_i(y)| <= p^{tau_{N,i}}", reversed,
        RadiusVector(params.tau).reversed(), "J");
  return out;
}

}  // namespace dagger
