// Acceptance run: one PASS/FAIL line per criterion.
//
//   dagger_acceptance            every criterion
//   dagger_acceptance --only 7   a single criterion
//
// Exit status is 1 if any selected criterion fails.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dagger/distribution.hpp"
#include "dagger/group.hpp"
#include "dagger/mahler.hpp"
#include "dagger/rng.hpp"
#include "dagger/suite.hpp"

using namespace dagger;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<std::string> kBuiltins{"abelian:3:3", "abelian:2:2", "heisenberg:3", "heisenberg:5"};

Scalar q(long a, long b = 1) {
  Scalar r(a, b);
  r.canonicalize();
  return r;
}

// Folds records into an outcome: any Fail fails the criterion, and the first
// witness is kept for the report line.
struct Tally {
  unsigned records = 0;
  unsigned failed = 0;
  unsigned regime_unmet = 0;
  unsigned lower_bound = 0;
  std::string first_failure;

  void add(const CheckRecord& r, const std::string& where = "") {
    ++records;
    if (r.verdict == Verdict::RegimeUnmet) ++regime_unmet;
    if (r.verdict == Verdict::LowerBoundPass) ++lower_bound;
    if (r.failed()) {
      ++failed;
      if (first_failure.empty()) {
        first_failure = (where.empty() ? "" : where + " ") + r.id + ": " + r.witness.value_or("no witness");
      }
    }
  }
  void add(const std::vector<CheckRecord>& rs, const std::string& where = "") {
    for (const auto& r : rs) add(r, where);
  }
  Outcome outcome(const std::string& what) const {
    Outcome o;
    o.pass = failed == 0;
    std::ostringstream s;
    s << what << " (" << records << " records";
    if (regime_unmet) s << ", " << regime_unmet << " regime-unmet";
    if (lower_bound) s << ", " << lower_bound << " lower-bound-pass";
    s << ", " << failed << " failed)";
    if (!first_failure.empty()) s << "; " << first_failure;
    o.detail = s.str();
    return o;
  }
};

Outcome gauss_multiplicativity() {
  Tally t;
  const std::vector<Scalar> radii{q(0), q(1, 4), q(1, 2), q(1)};
  std::uint64_t seed = 101;
  for (unsigned p : {2U, 3U, 5U}) {
    // 200 pairs per prime, spread over d = 1, 2, 3.
    for (std::size_t d = 1; d <= 3; ++d) {
      t.add(check_gauss_multiplicativity(p, d, 8, radii, d == 3 ? 66 : 67, seed++),
            "p=" + std::to_string(p) + " d=" + std::to_string(d));
    }
  }
  return t.outcome("gauss_norm(fg) = gauss_norm(f) gauss_norm(g) on 600 pairs");
}

Outcome formal_group_axioms() {
  Tally t;
  for (const char* tag : {"abelian:3:3", "heisenberg:3", "heisenberg:5"}) {
    t.add(check_formal_group_axioms(*builtin_group(tag), 8), tag);
  }
  Outcome o = t.outcome("axioms for abelian:3:3, heisenberg:3, heisenberg:5");

  // Mutation: F3 without its -p Y1 X2 term. The criterion asks for an
  // associativity failure with a witness monomial.
  const GroupPtr mutated = load_group_file(DAGGER_MUTATED_GROUP);
  const auto recs = check_formal_group_axioms(*mutated, 8);
  bool assoc_failed = false;
  std::string caught_by;
  for (const auto& r : recs) {
    if (r.id == "formal-group.associativity" && r.failed() && r.witness) assoc_failed = true;
    if (r.failed() && caught_by.empty()) caught_by = r.id + " (" + r.witness.value_or("") + ")";
  }
  if (assoc_failed) {
    o.detail += "; mutated F3 fails associativity";
  } else {
    o.pass = false;
    o.detail += "; mutated F3 = X3 + Y3 is the additive law and stays associative";
    if (!caught_by.empty()) o.detail += ", the mutation is caught by " + caught_by;
  }
  return o;
}

Outcome model_consistency() {
  Tally t;
  for (const auto& tag : kBuiltins) t.add(check_model_consistency(*builtin_group(tag), 100, 303, 12), tag);
  return t.outcome("coordinate multiply/invert against the model, 100 samples per built-in mod p^12");
}

Outcome pvaluation_axioms() {
  Tally t;
  for (const auto& tag : kBuiltins) t.add(check_pvaluation(*builtin_group(tag), 100, 303, 12), tag);
  return t.outcome("ultrametric, commutator and p-power axioms, 100 samples per built-in");
}

Outcome coefficient_bound() {
  Tally t;
  for (const auto& tag : kBuiltins) t.add(check_coefficient_bound(*builtin_group(tag)), tag);
  Outcome o = t.outcome("coefficient bound for every built-in");
  // The -3 on Y1 X2 in F3 of heisenberg:3: v = 1 against -(1 - 1/2) + (1 - 1/2) + (1 - 1/2) = 1/2.
  const auto g = builtin_heisenberg(3);
  const Scalar c = g->law()[2].coeff(MultiIndex{0, 1, 0, 1, 0, 0});
  const Scalar v = finite_valuation(c, 3);
  const Scalar theta = g->inverse_p_minus_one();
  const Scalar bound = -(g->omega()[2] - theta) + (g->omega()[1] - theta) + (g->omega()[0] - theta);
  const bool ok = c == -3 && v >= bound;
  o.pass = o.pass && ok;
  o.detail += "; heisenberg:3 coefficient " + format_rational(c) + " has v = " + format_rational(v) +
              (ok ? " >= " : " < ") + format_rational(bound);
  return o;
}

Outcome polydisc_bound() {
  Tally t;
  for (const auto& tag : kBuiltins) {
    const auto g = builtin_group(tag);
    for (unsigned N = 1; N <= 8; ++N) t.add(check_polydisc_bound(*g, N), tag + " N=" + std::to_string(N));
  }
  Outcome o = t.outcome("polydisc bound for F and reversed I, N = 1..8");
  if (t.regime_unmet || t.lower_bound) o.pass = false;
  return o;
}

Outcome mahler_identity() {
  Tally t;
  const std::vector<Scalar> radii{q(1, 4), q(1, 2), q(1)};
  std::uint64_t seed = 707;
  for (unsigned p : {2U, 3U, 5U}) {
    t.add(check_mahler(p, 1, 12, radii, 50, seed++), "p=" + std::to_string(p) + " d=1");
    t.add(check_mahler(p, 2, 6, radii, 50, seed++), "p=" + std::to_string(p) + " d=2");
  }
  return t.outcome("norm identity, round trip and expansion on 100 polynomials per prime");
}

Outcome factorial_valuation_check() {
  Tally t;
  for (unsigned p : {2U, 3U, 5U}) t.add(check_factorial_valuation(p, 2000), "p=" + std::to_string(p));
  return t.outcome("v(n!) = (n - s_p(n))/(p-1) for n <= 2000");
}

Outcome convolution_algebra() {
  Tally t;
  t.add(check_convolution_algebra(builtin_heisenberg(3), 50, 909, 4));
  return t.outcome("heisenberg:3, 50 pairs, 25 triples, unit and opposite order");
}

Outcome submultiplicativity() {
  Tally t;
  const std::vector<Scalar> sigmas{q(1, 4), q(1, 2), q(3, 4), q(1)};
  t.add(check_submultiplicative(builtin_heisenberg(3), sigmas, 100, 1010, 8));
  Outcome o = t.outcome("||l*m||_s <= ||l||_s ||m||_s on 100 pairs, sigma in {1/4, 1/2, 3/4, 1}");
  if (t.regime_unmet) {
    o.pass = false;
    o.detail += "; the regime 2 omega_0 > p/(p-1) should hold for heisenberg:3";
  }
  return o;
}

Outcome banach_bound() {
  Tally t;
  const std::vector<unsigned> Ns{1, 2, 4, 8};
  t.add(check_banach_submult_N(builtin_heisenberg(3), Ns, 100, 1111, 8));
  Outcome o = t.outcome("||l*m||_N <= ||l||_N ||m||_N on 100 pairs, N in {1, 2, 4, 8}");
  if (t.regime_unmet) o.pass = false;
  return o;
}

Outcome tower_and_comparison() {
  const auto g = builtin_heisenberg(3);
  const unsigned cap = 8;
  std::vector<Distribution> samples{dirac(g, identity(*g), cap)};
  for (std::size_t i = 0; i < g->dimension(); ++i) samples.push_back(b_monomial(g, MultiIndex::unit(3, i), cap));
  SampleRng rng(1212);
  while (samples.size() < 100) samples.push_back(random_distribution(g, rng, cap));

  Tally t;
  t.add(check_norm_tower(samples, 8));
  const std::vector<Scalar> sigmas{q(1, 4), q(1, 2), q(3, 4), q(1)};
  unsigned contraction = 0;
  unsigned continuity = 0;
  unsigned contact = 0;
  for (const auto& sigma : sigmas) {
    const auto c = check_contact_embedding(*g, sigma, samples);
    t.add(c);
    if (c.verdict != Verdict::RegimeUnmet) ++contact;
    for (unsigned N = 1; N <= 8; ++N) {
      for (const auto& r : check_comparison_maps(*g, N, sigma, samples)) {
        t.add(r, "N=" + std::to_string(N) + " sigma=" + format_rational(sigma));
        if (r.verdict == Verdict::RegimeUnmet) continue;
        if (r.id == "comparison.contraction") ++contraction;
        if (r.id == "comparison.continuity") ++continuity;
      }
    }
  }
  Outcome o = t.outcome("tower for N <= 8 and comparison on the (N, sigma) grid");
  o.detail += "; qualifying points: contraction " + std::to_string(contraction) + ", continuity " +
              std::to_string(continuity) + ", contact " + std::to_string(contact);
  if (contraction == 0 || continuity == 0) o.pass = false;
  return o;
}

Outcome determinism() {
  SuiteConfig c;
  c.suites = {"all"};
  c.seed = 1313;
  const std::string a = emit(run(c), ReportFormat::Json);
  const std::string b = emit(run(c), ReportFormat::Json);
  Outcome o;
  o.pass = a == b;
  o.detail = "two full runs with seed 1313: " + std::to_string(a.size()) + " bytes, " +
             (o.pass ? "identical" : "different");
  return o;
}

struct Criterion {
  int number;
  std::string name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: dagger_acceptance [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "Gauss-norm multiplicativity", gauss_multiplicativity},
      {2, "formal group axioms", formal_group_axioms},
      {3, "model consistency", model_consistency},
      {4, "p-valuation axioms", pvaluation_axioms},
      {5, "coefficient bound", coefficient_bound},
      {6, "polydisc bound", polydisc_bound},
      {7, "Mahler norm identity", mahler_identity},
      {8, "factorial valuation", factorial_valuation_check},
      {9, "convolution algebra", convolution_algebra},
      {10, "submultiplicativity of ||.||_s", submultiplicativity},
      {11, "Banach bound for ||.||_N", banach_bound},
      {12, "tower and comparison", tower_and_comparison},
      {13, "determinism", determinism},
  };

  bool any_failed = false;
  bool ran = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    ran = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    any_failed = any_failed || !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << "): " << o.detail
              << std::endl;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return any_failed ? 1 : 0;
}
