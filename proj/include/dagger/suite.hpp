#pragma once

// Named verification suites over one group, and the report they produce.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagger/check.hpp"
#include "dagger/group.hpp"
#include "dagger/json_io.hpp"

namespace dagger {

struct SuiteConfig {
  /// Built-in tag ("heisenberg:3", "abelian:3:2") or path to a JSON config.
  std::string group = "heisenberg:3";
  /// Subset of suite_names(); "all" expands to every suite.
  std::vector<std::string> suites;
  unsigned n_min = 1;
  unsigned n_max = 8;
  std::vector<Scalar> sigmas{Scalar(1, 4), Scalar(1, 2), Scalar(3, 4), Scalar(1)};
  unsigned cap = 8;
  unsigned trials = kDefaultSamples;
  /// Required by the randomized suites.
  std::optional<std::uint64_t> seed;
};

struct Report {
  SuiteConfig config;
  /// Expanded, in execution order.
  std::vector<std::string> suites;
  std::string group_name;
  std::vector<CheckRecord> records;

  bool any_failed() const;
};

/// group-axioms, pvaluation, saturation, coeff-bound, polydisc, mahler,
/// convolution, norms, embeddings.
const std::vector<std::string>& suite_names();
bool suite_is_randomized(std::string_view name);

/// Validates the config (unknown suites, empty N range, non-positive sigma,
/// missing seed) and throws std::invalid_argument on error.
void validate(const SuiteConfig& config);

Report run(const SuiteConfig& config);
/// Runs against an already constructed group; config.group is only recorded.
Report run(const SuiteConfig& config, const GroupPtr& group);

enum class ReportFormat { Json, Text };

Json report_to_json(const Report& report);
/// Records and config as read back from report_to_json output.
Report report_from_json(const Json& doc);
std::string emit(const Report& report, ReportFormat format);

/// "a..b" or "a".
std::pair<unsigned, unsigned> parse_n_range(std::string_view text);
/// Comma-separated rationals "1/4,1/2,1".
std::vector<Scalar> parse_rational_list(std::string_view text);
/// Comma-separated suite names.
std::vector<std::string> parse_suite_list(std::string_view text);

Verdict verdict_from_string(std::string_view text);

}  // namespace dagger
