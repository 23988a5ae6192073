#include <gtest/gtest.h>

#include "dagger/suite.hpp"

using namespace dagger;

namespace {

SuiteConfig small_config(std::vector<std::string> suites) {
  SuiteConfig c;
  c.group = "heisenberg:3";
  c.suites = std::move(suites);
  c.n_min = 1;
  c.n_max = 2;
  c.sigmas = {Scalar(1, 2), Scalar(3, 4)};
  c.cap = 4;
  c.trials = 10;
  c.seed = 42;
  return c;
}

}  // namespace

TEST(Suite, Names) {
  const auto& names = suite_names();
  EXPECT_EQ(names.size(), 9U);
  EXPECT_EQ(names.front(), "group-axioms");
  EXPECT_EQ(names.back(), "embeddings");
  EXPECT_FALSE(suite_is_randomized("coeff-bound"));
  EXPECT_FALSE(suite_is_randomized("polydisc"));
  EXPECT_TRUE(suite_is_randomized("norms"));
}

TEST(Suite, ValidationErrors) {
  auto c = small_config({"pvaluation"});
  c.seed.reset();
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = small_config({"nonsense"});
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = small_config({"polydisc"});
  c.n_min = 3;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = small_config({"polydisc"});
  c.sigmas = {Scalar(0)};
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = small_config({"polydisc"});
  c.seed.reset();
  EXPECT_NO_THROW(validate(c));
}

TEST(Suite, Parsers) {
  EXPECT_EQ(parse_n_range("2..5"), (std::pair<unsigned, unsigned>{2, 5}));
  EXPECT_EQ(parse_n_range("3"), (std::pair<unsigned, unsigned>{3, 3}));
  EXPECT_THROW(parse_n_range("a..b"), std::invalid_argument);
  EXPECT_EQ(parse_rational_list("1/4, 1/2,1"), (std::vector<Scalar>{Scalar(1, 4), Scalar(1, 2), Scalar(1)}));
  EXPECT_EQ(parse_suite_list("norms,mahler"), (std::vector<std::string>{"norms", "mahler"}));
  EXPECT_EQ(verdict_from_string("regime-unmet"), Verdict::RegimeUnmet);
  EXPECT_THROW(verdict_from_string("maybe"), std::invalid_argument);
}

TEST(Suite, EmptySuiteListGivesEmptyReport) {
  const auto r = run(small_config({}));
  EXPECT_TRUE(r.records.empty());
  EXPECT_FALSE(r.any_failed());
}

TEST(Suite, DeterministicAndRoundTrips) {
  const auto c = small_config({"pvaluation", "convolution", "norms"});
  const auto a = emit(run(c), ReportFormat::Json);
  const auto b = emit(run(c), ReportFormat::Json);
  EXPECT_EQ(a, b);
  const auto back = report_from_json(Json::parse(a));
  EXPECT_EQ(emit(back, ReportFormat::Json), a);
  EXPECT_EQ(back.config.seed, std::optional<std::uint64_t>(42));
  auto other = c;
  other.seed = 43;
  EXPECT_NE(emit(run(other), ReportFormat::Json), a);
}

TEST(Suite, DeterministicSuitesRecordNullSeed) {
  auto c = small_config({"coeff-bound", "polydisc"});
  c.seed.reset();
  const auto r = run(c);
  EXPECT_FALSE(r.any_failed());
  const auto doc = report_to_json(r);
  EXPECT_TRUE(doc["config"]["seed"].is_null());
  EXPECT_EQ(doc["summary"]["total"], r.records.size());
  // coeff-bound law and inverse, then polydisc law and inverse for N = 1, 2
  EXPECT_EQ(r.records.size(), 6U);
}

TEST(Suite, TextFormatShowsStatements) {
  auto c = small_config({"coeff-bound"});
  const auto text = emit(run(c), ReportFormat::Text);
  EXPECT_NE(text.find("statement: v(d_{i,a})"), std::string::npos);
  EXPECT_NE(text.find("[pass] coeff-bound.law"), std::string::npos);
  EXPECT_NE(text.find("summary: pass=2"), std::string::npos);
}

TEST(Suite, MutatedGroupFails) {
  auto c = small_config({"group-axioms"});
  c.group = std::string(DAGGER_TEST_DATA_DIR) + "/heisenberg_p3_mutated.json";
  const auto r = run(c);
  EXPECT_TRUE(r.any_failed());
}
