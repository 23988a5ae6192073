#pragma once

// JSON encodings shared by the group loader, the report writer and the
// convert subcommand. Rationals are always "num/den" strings; a series is a
// list of {"index": [...], "coeff": "num/den"} records in graded
// lexicographic order.

#include <json.hpp>

#include "dagger/series.hpp"

namespace dagger {

using Json = nlohmann::ordered_json;

Json series_to_json(const TruncatedSeries& f);
/// Throws std::invalid_argument with the offending record on malformed input.
TruncatedSeries series_from_json(const Json& records, std::size_t dimension, unsigned cap = kNoTruncation);
/// Accepts "num/den" strings and plain JSON integers.
Scalar rational_from_json(const Json& value);

}  // namespace dagger
