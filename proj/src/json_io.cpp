#include "dagger/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dagger/group.hpp"

namespace dagger {

Json series_to_json(const TruncatedSeries& f) {
  Json out = Json::array();
  for (const auto& [alpha, c] : f.terms()) {
    Json rec;
    rec["index"] = alpha.entries();
    rec["coeff"] = format_rational(c);
    out.push_back(std::move(rec));
  }
  return out;
}

Scalar rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Scalar(Integer(value.dump()));
  throw std::invalid_argument("expected a rational \"num/den\", got " + value.dump());
}

TruncatedSeries series_from_json(const Json& records, std::size_t dimension, unsigned cap) {
  if (!records.is_array()) throw std::invalid_argument("series must be a list of {index, coeff} records");
  TruncatedSeries::Terms terms;
  for (const auto& rec : records) {
    if (!rec.is_object() || !rec.contains("index") || !rec.contains("coeff")) {
      throw std::invalid_argument("malformed series record " + rec.dump());
    }
    const auto& idx = rec.at("index");
    if (!idx.is_array() || idx.size() != dimension) {
      throw std::invalid_argument("series record " + rec.dump() + ": index must have length " +
                                  std::to_string(dimension));
    }
    std::vector<unsigned> entries;
    for (const auto& e : idx) {
      if (!e.is_number_unsigned()) throw std::invalid_argument("series record " + rec.dump() + ": negative or non-integer exponent");
      entries.push_back(e.get<unsigned>());
    }
    MultiIndex alpha(std::move(entries));
    if (terms.contains(alpha)) throw std::invalid_argument("duplicate index " + alpha.to_string() + " in series");
    terms.emplace(std::move(alpha), rational_from_json(rec.at("coeff")));
  }
  return TruncatedSeries(dimension, cap, std::move(terms));
}

// ---------------------------------------------------------------------------
// Group configs

GroupPtr load_group(std::string_view config) {
  Json doc;
  try {
    doc = Json::parse(config);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("group config: ") + e.what());
  }
  auto field = [&](const char* key) -> const Json& {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("group config: missing field \"") + key + "\"");
    return doc.at(key);
  };
  try {
    const std::string name = doc.value("name", std::string("unnamed"));
    const auto p = field("p").get<unsigned>();
    const auto d = field("d").get<std::size_t>();
    std::vector<Scalar> omega;
    for (const auto& w : field("omega")) omega.push_back(rational_from_json(w));
    if (omega.size() != d) throw std::invalid_argument("group config: omega must have d entries");
    std::vector<TruncatedSeries> law;
    for (const auto& f : field("F")) law.push_back(series_from_json(f, 2 * d));
    std::vector<TruncatedSeries> inv;
    for (const auto& f : field("I")) inv.push_back(series_from_json(f, d));
    std::shared_ptr<const GroupModel> model;
    if (doc.contains("model") && !doc.at("model").is_null()) {
      model = model_for_tag(doc.at("model").get<std::string>(), p, d);
    }
    return std::make_shared<PValuedGroup>(name, p, std::move(omega), std::move(law), std::move(inv), std::move(model));
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("group config: ") + e.what());
  }
}

GroupPtr load_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_group(buffer.str());
  } catch (const GroupValidationError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string group_to_json(const PValuedGroup& g) {
  Json doc;
  doc["name"] = g.name();
  doc["p"] = g.p();
  doc["d"] = g.dimension();
  Json omega = Json::array();
  for (const auto& w : g.omega()) omega.push_back(format_rational(w));
  doc["omega"] = omega;
  Json law = Json::array();
  for (const auto& f : g.law()) law.push_back(series_to_json(f));
  doc["F"] = law;
  Json inv = Json::array();
  for (const auto& f : g.inverse()) inv.push_back(series_to_json(f));
  doc["I"] = inv;
  doc["model"] = g.model() ? Json(g.model()->tag()) : Json(nullptr);
  return doc.dump(2);
}

}  // namespace dagger
