#include <gtest/gtest.h>

#include <filesystem>

#include "dagger/group.hpp"
#include "dagger/rng.hpp"

using namespace dagger;

namespace {

Scalar q(long a, long b = 1) {
  Scalar r(a, b);
  r.canonicalize();
  return r;
}

TruncatedSeries V(std::size_t d, std::size_t i) { return TruncatedSeries::variable(d, i); }

// The Heisenberg law derived from the matrix model (a,b,c)(a',b',c') =
// (a+a', b+b', c+c'+ab') through psi(x) = (p x1, p x2, p (x3 + p x1 x2)),
// the image of g1^x1 g2^x2 g3^x3 with g_i = p e_i.
std::vector<TruncatedSeries> heisenberg_law_oracle(unsigned p) {
  const Scalar P(p);
  auto psi = [&](std::size_t off) {
    return std::vector<TruncatedSeries>{P * V(6, off), P * V(6, off + 1),
                                        P * (V(6, off + 2) + P * V(6, off) * V(6, off + 1))};
  };
  const auto a = psi(0);
  const auto b = psi(3);
  const auto m1 = a[0] + b[0];
  const auto m2 = a[1] + b[1];
  const auto m3 = a[2] + b[2] + a[0] * b[1];
  // chart: (a, b, c) -> (a/p, b/p, c/p - ab/p)
  const Scalar ip = q(1, p);
  return {ip * m1, ip * m2, ip * m3 - ip * m1 * m2};
}

std::vector<TruncatedSeries> heisenberg_inverse_oracle(unsigned p) {
  const Scalar P(p);
  const Scalar ip = q(1, p);
  const auto a = P * V(3, 0);
  const auto b = P * V(3, 1);
  const auto c = P * (V(3, 2) + P * V(3, 0) * V(3, 1));
  // (a,b,c)^{-1} = (-a, -b, -c + ab)
  const auto ia = q(-1) * a;
  const auto ib = q(-1) * b;
  const auto ic = q(-1) * c + a * b;
  return {ip * ia, ip * ib, ip * ic - ip * ia * ib};
}

std::string data_file(const char* name) {
  return (std::filesystem::path(DAGGER_TEST_DATA_DIR) / name).string();
}

}  // namespace

TEST(Heisenberg, LawMatchesMatrixModel) {
  for (unsigned p : {3U, 5U, 7U}) {
    const auto g = builtin_heisenberg(p);
    const auto law = heisenberg_law_oracle(p);
    const auto inv = heisenberg_inverse_oracle(p);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(g->law()[i], law[i]) << "p=" << p << " F" << i + 1;
      EXPECT_EQ(g->inverse()[i], inv[i]) << "p=" << p << " I" << i + 1;
    }
    EXPECT_EQ(g->omega(), (std::vector<Scalar>{q(1), q(1), q(1)}));
    EXPECT_EQ(g->law_degree(), 2U);
  }
  // F3 = X3 + Y3 - p Y1 X2
  const auto g = builtin_heisenberg(3);
  EXPECT_EQ(g->law()[2].coeff(MultiIndex{0, 1, 0, 1, 0, 0}), -3);
  EXPECT_EQ(g->law()[2].terms().size(), 3U);
}

TEST(Heisenberg, CoordinateProductMatchesModel) {
  const auto g = builtin_heisenberg(3);
  const auto* model = g->model();
  ASSERT_NE(model, nullptr);
  SampleRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_point(*g, rng, 6);
    const auto y = random_point(*g, rng, 6);
    EXPECT_EQ(model->embed(multiply(*g, x, y)), model->multiply(model->embed(x), model->embed(y)));
    EXPECT_EQ(multiply(*g, x, invert(*g, x)), identity(*g));
  }
  // g1 * g2 = g2 * g1 * [g1, g2]: the commutator of the basis lands in g3^{p}.
  const auto e1 = make_point(*g, {q(1), q(0), q(0)});
  const auto e2 = make_point(*g, {q(0), q(1), q(0)});
  EXPECT_EQ(commutator(*g, e1, e2), make_point(*g, {q(0), q(0), q(3)}));
}

TEST(Builtins, Abelian) {
  const auto g = builtin_abelian(2, 2);
  EXPECT_EQ(g->omega()[0], 2);
  EXPECT_EQ(builtin_abelian(5, 1)->omega()[0], 1);
  EXPECT_EQ(builtin_group("abelian:3:3")->dimension(), 3U);
  EXPECT_EQ(builtin_group("heisenberg:5")->p(), 5U);
  EXPECT_THROW(builtin_group("heisenberg:2"), std::invalid_argument);
  EXPECT_THROW(builtin_group("abelian:4:2"), std::invalid_argument);
  EXPECT_THROW(builtin_group("torus:3"), std::invalid_argument);
  EXPECT_THROW(builtin_group("abelian:3"), std::invalid_argument);
}

TEST(Validation, CollectsEveryViolation) {
  const std::vector<TruncatedSeries> law{V(2, 0) + V(2, 1) + TruncatedSeries::constant(2, q(1, 3))};
  const std::vector<TruncatedSeries> inv{q(-1) * V(1, 0)};
  try {
    PValuedGroup("bad", 3, {q(1, 2)}, law, inv);
    FAIL() << "expected GroupValidationError";
  } catch (const GroupValidationError& e) {
    const auto& v = e.violations();
    auto has = [&](const std::string& needle) {
      return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
    };
    EXPECT_TRUE(has("must exceed 1/(p-1)"));
    EXPECT_TRUE(has("not in Z_p"));
    EXPECT_TRUE(has("F1(0,0) != 0"));
    EXPECT_TRUE(has("unit axiom"));
  }
  EXPECT_THROW(PValuedGroup("np", 4, {q(1)}, {V(2, 0) + V(2, 1)}, {q(-1) * V(1, 0)}), GroupValidationError);
  EXPECT_THROW(PValuedGroup("sat", 3, {q(2)}, {V(2, 0) + V(2, 1)}, {q(-1) * V(1, 0)}), GroupValidationError);
  EXPECT_NO_THROW(PValuedGroup("ok", 3, {q(3, 2)}, {V(2, 0) + V(2, 1)}, {q(-1) * V(1, 0)}));
}

TEST(Loader, RoundTripsBuiltins) {
  for (const char* tag : {"heisenberg:3", "abelian:2:2", "abelian:5:3"}) {
    const auto g = builtin_group(tag);
    const auto h = load_group(group_to_json(*g));
    EXPECT_EQ(h->law(), g->law());
    EXPECT_EQ(h->inverse(), g->inverse());
    EXPECT_EQ(h->omega(), g->omega());
    EXPECT_EQ(h->p(), g->p());
  }
}

TEST(Loader, Errors) {
  EXPECT_THROW(load_group("{not json"), std::invalid_argument);
  EXPECT_THROW(load_group(R"({"p": 3, "omega": ["1"], "F": [], "I": []})"), std::invalid_argument);
  EXPECT_THROW(load_group(R"({"p": 3, "d": 1, "omega": ["1", "1"], "F": [], "I": []})"), std::invalid_argument);
  EXPECT_THROW(load_group(R"({"p": 3, "d": 1, "omega": ["1"],
      "F": [[{"index": [1, 0], "coeff": "1/1"}, {"index": [0, 1], "coeff": "1/1"}]],
      "I": [[{"index": [1], "coeff": "-1/1"}]], "model": "torus"})"),
               std::invalid_argument);
  EXPECT_THROW(load_group(R"({"p": 3, "d": 1, "omega": ["1"],
      "F": [[{"index": [1, 0, 0], "coeff": "1/1"}]], "I": [[{"index": [1], "coeff": "-1/1"}]]})"),
               std::invalid_argument);
  EXPECT_THROW(resolve_group("/nonexistent/group.json"), std::invalid_argument);
  EXPECT_NO_THROW(resolve_group(data_file("heisenberg_p3_mutated.json")));
}

TEST(Points, Validation) {
  const auto g = builtin_heisenberg(3);
  EXPECT_THROW(make_point(*g, {q(1), q(0)}), std::invalid_argument);
  EXPECT_THROW(make_point(*g, {q(1, 3), q(0), q(0)}), std::invalid_argument);
  EXPECT_NO_THROW(make_point(*g, {q(1, 2), q(0), q(0)}));
  EXPECT_TRUE(omega_of(*g, identity(*g)).is_infinite());
  EXPECT_EQ(omega_of(*g, make_point(*g, {q(9), q(3), q(2)})).value(), 1);
  EXPECT_EQ(omega_of(*g, make_point(*g, {q(9), q(3), q(6)})).value(), 2);
}

TEST(Neighborhood, Params) {
  const auto g = builtin_heisenberg(3);
  const auto n = neighborhood_params(*g, 4);
  // (1 - 1/2) / 5
  EXPECT_EQ(n.tau, (std::vector<Scalar>(3, q(1, 10))));
  EXPECT_EQ(n.rho.size(), 6U);
  EXPECT_THROW(neighborhood_params(*g, 0), std::invalid_argument);
}

TEST(Axioms, HoldForBuiltins) {
  for (const char* tag : {"abelian:3:3", "abelian:2:2", "heisenberg:3", "heisenberg:5"}) {
    const auto g = builtin_group(tag);
    for (const auto& rec : check_formal_group_axioms(*g, 6)) EXPECT_TRUE(rec.ok()) << tag << " " << rec.id;
    EXPECT_TRUE(check_model_consistency(*g, 40, 1).ok()) << tag;
  }
}

TEST(Axioms, MutatedHeisenbergIsCaught) {
  const auto g = resolve_group(data_file("heisenberg_p3_mutated.json"));
  bool inverse_failed = false;
  for (const auto& rec : check_formal_group_axioms(*g, 6)) {
    if (rec.id == "formal-group.right-inverse" || rec.id == "formal-group.left-inverse") {
      EXPECT_TRUE(rec.failed()) << rec.id;
      ASSERT_TRUE(rec.witness.has_value());
      inverse_failed = true;
    }
  }
  EXPECT_TRUE(inverse_failed);
  const auto model = check_model_consistency(*g, 40, 1);
  EXPECT_TRUE(model.failed());
}

TEST(PValuation, HoldsForBuiltins) {
  for (const char* tag : {"abelian:3:2", "heisenberg:3", "heisenberg:5"}) {
    const auto g = builtin_group(tag);
    for (const auto& rec : check_pvaluation(*g, 60, 9)) EXPECT_TRUE(rec.ok()) << tag << " " << rec.id;
  }
}

TEST(Saturation, FindsRoots) {
  const auto a = builtin_abelian(3, 1);
  const auto x = make_point(*a, {q(9)});
  const auto r = find_pth_root(*a, x, 8);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.root, make_point(*a, {q(3)}));

  const auto g = builtin_heisenberg(3);
  SampleRng rng(4);
  for (int t = 0; t < 5; ++t) {
    const auto y = random_point(*g, rng, 6);
    const auto x3 = power(*g, y, 3);
    const auto found = find_pth_root(*g, x3, 6);
    EXPECT_TRUE(found.found);
  }
  EXPECT_TRUE(check_saturation(*g, 30, 2).ok());
}

TEST(CoefficientBound, Heisenberg) {
  // The worst coefficient is -p on Y1 X2: v = 1 against the bound -1/2 + 2 (1/2) = 1/2.
  for (unsigned p : {3U, 5U}) {
    const auto g = builtin_heisenberg(p);
    for (const auto& rec : check_coefficient_bound(*g)) EXPECT_EQ(rec.verdict, Verdict::Pass) << rec.id;
  }
}

TEST(CoefficientBound, DetectsLargeCoefficient) {
  // F = X + Y + X*Y at p = 3, omega = 1: v(1) = 0 < -1/2 + 1 = 1/2.
  const auto g = std::make_shared<PValuedGroup>("xy", 3, std::vector<Scalar>{q(1)},
                                                std::vector<TruncatedSeries>{V(2, 0) + V(2, 1) + V(2, 0) * V(2, 1)},
                                                std::vector<TruncatedSeries>{q(-1) * V(1, 0)});
  const auto recs = check_coefficient_bound(*g);
  ASSERT_FALSE(recs.empty());
  EXPECT_TRUE(recs.front().failed());
  EXPECT_TRUE(recs.front().witness.has_value());
}

TEST(Polydisc, HeisenbergForSeveralN) {
  const auto g = builtin_heisenberg(3);
  for (unsigned N : {1U, 2U, 4U, 8U}) {
    for (const auto& rec : check_polydisc_bound(*g, N)) EXPECT_EQ(rec.verdict, Verdict::Pass) << rec.id << " N=" << N;
  }
}
