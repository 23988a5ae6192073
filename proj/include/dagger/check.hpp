#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dagger {

enum class Verdict {
  Pass,
  Fail,
  /// The hypothesis of the checked statement does not hold for these
  /// parameters; the condition arithmetic is still recorded.
  RegimeUnmet,
  /// The inequality holds with a truncated (lower-bound) quantity on its
  /// small side.
  LowerBoundPass,
};

std::string to_string(Verdict v);

/// One verdict of a verification suite. Parameters and exponents are kept
/// as ordered (key, value) pairs so emitted reports are byte-stable.
struct CheckRecord {
  std::string id;
  /// The statement being checked, e.g. "omega(g^p) = omega(g) + 1".
  std::string anchor;
  std::vector<std::pair<std::string, std::string>> params;
  Verdict verdict = Verdict::Pass;
  std::optional<std::string> witness;
  std::vector<std::pair<std::string, std::string>> exponents;

  bool failed() const { return verdict == Verdict::Fail; }
  bool ok() const { return verdict != Verdict::Fail; }
};

inline CheckRecord make_record(std::string id, std::string anchor,
                               std::vector<std::pair<std::string, std::string>> params) {
  CheckRecord rec;
  rec.id = std::move(id);
  rec.anchor = std::move(anchor);
  rec.params = std::move(params);
  return rec;
}

}  // namespace dagger
