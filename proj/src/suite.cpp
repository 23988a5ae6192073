#include "dagger/suite.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "dagger/distribution.hpp"
#include "dagger/functions.hpp"
#include "dagger/mahler.hpp"
#include "dagger/rng.hpp"

namespace dagger {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::RegimeUnmet:
      return "regime-unmet";
    case Verdict::LowerBoundPass:
      return "lower-bound-pass";
  }
  return "fail";
}

Verdict verdict_from_string(std::string_view text) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::RegimeUnmet, Verdict::LowerBoundPass}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown verdict \"" + std::string(text) + "\"");
}

bool Report::any_failed() const {
  return std::any_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.failed(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group-axioms", "pvaluation", "saturation",  "coeff-bound", "polydisc",
                                              "mahler",       "convolution", "norms",      "embeddings"};
  return names;
}

bool suite_is_randomized(std::string_view name) { return name != "coeff-bound" && name != "polydisc"; }

namespace {

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  std::vector<std::string> out;
  for (const auto& s : requested) {
    if (s == "all") {
      out = suite_names();
      return out;
    }
  }
  // Execution order is the canonical order, independent of how the list was given.
  for (const auto& name : suite_names()) {
    if (std::find(requested.begin(), requested.end(), name) != requested.end()) out.push_back(name);
  }
  return out;
}

void append(std::vector<CheckRecord>& out, std::vector<CheckRecord> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

std::vector<unsigned> n_values(const SuiteConfig& c) {
  std::vector<unsigned> out;
  for (unsigned N = c.n_min; N <= c.n_max; ++N) out.push_back(N);
  return out;
}

// delta_e, the b_i, then seeded random finite combinations.
std::vector<Distribution> norm_samples(const GroupPtr& g, unsigned trials, std::uint64_t seed, unsigned cap) {
  std::vector<Distribution> out;
  out.push_back(dirac(g, identity(*g), cap));
  for (std::size_t i = 0; i < g->dimension() && cap > 0; ++i) {
    out.push_back(b_monomial(g, MultiIndex::unit(g->dimension(), i), cap));
  }
  SampleRng rng(seed);
  while (out.size() < trials) out.push_back(random_distribution(g, rng, cap));
  return out;
}

void run_suite(const std::string& name, const SuiteConfig& c, const GroupPtr& g, std::vector<CheckRecord>& out) {
  const std::uint64_t seed = c.seed.value_or(0);
  const PValuedGroup& G = *g;
  if (name == "group-axioms") {
    append(out, check_formal_group_axioms(G, c.cap));
    out.push_back(check_model_consistency(G, c.trials, seed));
  } else if (name == "pvaluation") {
    append(out, check_pvaluation(G, c.trials, seed));
  } else if (name == "saturation") {
    out.push_back(check_saturation(G, c.trials, seed));
  } else if (name == "coeff-bound") {
    append(out, check_coefficient_bound(G));
  } else if (name == "polydisc") {
    for (unsigned N : n_values(c)) append(out, check_polydisc_bound(G, N));
  } else if (name == "mahler") {
    const Scalar positive[] = {Scalar(1, 4), Scalar(1, 2), Scalar(1)};
    const Scalar with_zero[] = {Scalar(0), Scalar(1, 4), Scalar(1, 2), Scalar(1)};
    out.push_back(check_factorial_valuation(G.p(), 2000));
    out.push_back(check_gauss_multiplicativity(G.p(), G.dimension(), std::min(c.cap, 8U), with_zero, c.trials, seed));
    append(out, check_mahler(G.p(), 1, 12, positive, c.trials, seed));
    append(out, check_mahler(G.p(), 2, 6, positive, c.trials, seed));
  } else if (name == "convolution") {
    append(out, check_convolution_algebra(g, std::max(1U, c.trials / 2), seed, c.cap));
    append(out, check_function_side(g, std::max(1U, c.trials / 5), seed, c.cap));
  } else if (name == "norms") {
    const auto samples = norm_samples(g, c.trials, seed, c.cap);
    out.push_back(check_norm_tower(samples, c.n_max));
    for (const auto& sigma : c.sigmas) out.push_back(check_norm_sandwich(samples, sigma));
    append(out, check_submultiplicative(g, c.sigmas, c.trials, seed, c.cap));
    const auto Ns = n_values(c);
    append(out, check_banach_submult_N(g, Ns, c.trials, seed, c.cap));
  } else if (name == "embeddings") {
    const auto samples = norm_samples(g, c.trials, seed, c.cap);
    for (const auto& sigma : c.sigmas) out.push_back(check_contact_embedding(G, sigma, samples));
    unsigned qualifying1 = 0;
    unsigned qualifying2 = 0;
    bool clean = true;
    for (unsigned N : n_values(c)) {
      for (const auto& sigma : c.sigmas) {
        auto recs = check_comparison_maps(G, N, sigma, samples);
        if (recs[0].verdict != Verdict::RegimeUnmet) ++qualifying1;
        if (recs[1].verdict != Verdict::RegimeUnmet) ++qualifying2;
        clean = clean && recs[0].ok() && recs[1].ok();
        append(out, std::move(recs));
      }
    }
    CheckRecord grid = make_record("comparison.grid",
                                   "some grid point (N, s) meets the regime of each comparison direction",
                                   {{"group", G.name()},
                                    {"N", std::to_string(c.n_min) + ".." + std::to_string(c.n_max)},
                                    {"sigmas", std::to_string(c.sigmas.size())}});
    grid.exponents = {{"contraction_points", std::to_string(qualifying1)},
                      {"continuity_points", std::to_string(qualifying2)}};
    if (!clean) {
      grid.verdict = Verdict::Fail;
      grid.witness = "a qualifying grid point failed its per-coefficient inequality";
    } else {
      grid.verdict = qualifying1 > 0 && qualifying2 > 0 ? Verdict::Pass : Verdict::RegimeUnmet;
    }
    out.push_back(std::move(grid));
  }
}

Json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Json out = Json::object();
  for (const auto& [k, v] : pairs) out[k] = v;
  return out;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const Json& obj) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : obj.items()) out.emplace_back(k, v.get<std::string>());
  return out;
}

std::string join_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string s;
  for (const auto& [k, v] : pairs) {
    if (!s.empty()) s += " ";
    s += k + "=" + v;
  }
  return s;
}

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected a nonnegative integer, got \"" + std::string(text) + "\"");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    auto piece = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void validate(const SuiteConfig& c) {
  for (const auto& s : c.suites) {
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw std::invalid_argument("unknown suite \"" + s + "\"");
    }
  }
  if (c.n_min == 0 || c.n_min > c.n_max) {
    throw std::invalid_argument("N range must satisfy 1 <= a <= b, got " + std::to_string(c.n_min) + ".." +
                                std::to_string(c.n_max));
  }
  for (const auto& s : c.sigmas) {
    if (s <= 0) throw std::invalid_argument("sigma must be positive, got " + format_rational(s));
  }
  if (c.trials == 0) throw std::invalid_argument("trials must be positive");
  if (c.cap == 0) throw std::invalid_argument("cap must be positive");
  const auto expanded = expand_suites(c.suites);
  if (!c.seed) {
    for (const auto& s : expanded) {
      if (suite_is_randomized(s)) throw std::invalid_argument("suite \"" + s + "\" is randomized and needs --seed");
    }
  }
}

Report run(const SuiteConfig& config) {
  validate(config);
  Report report;
  report.config = config;
  report.suites = expand_suites(config.suites);
  if (report.suites.empty()) return report;
  return run(config, resolve_group(config.group));
}

Report run(const SuiteConfig& config, const GroupPtr& group) {
  validate(config);
  Report report;
  report.config = config;
  report.suites = expand_suites(config.suites);
  report.group_name = group->name();
  for (const auto& s : report.suites) run_suite(s, config, group, report.records);
  return report;
}

Json report_to_json(const Report& report) {
  const auto& c = report.config;
  Json doc;
  doc["schema"] = 1;
  Json config;
  config["group"] = c.group;
  config["suites"] = report.suites;
  config["N"] = std::to_string(c.n_min) + ".." + std::to_string(c.n_max);
  Json sigmas = Json::array();
  for (const auto& s : c.sigmas) sigmas.push_back(format_rational(s));
  config["sigma"] = sigmas;
  config["cap"] = c.cap;
  config["trials"] = c.trials;
  config["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  doc["config"] = config;
  doc["group"] = report.group_name;

  Json records = Json::array();
  std::map<Verdict, unsigned> counts;
  for (const auto& r : report.records) {
    Json rec;
    rec["id"] = r.id;
    rec["anchor"] = r.anchor;
    rec["params"] = pairs_to_json(r.params);
    rec["verdict"] = to_string(r.verdict);
    rec["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    rec["exponents"] = pairs_to_json(r.exponents);
    records.push_back(std::move(rec));
    ++counts[r.verdict];
  }
  doc["records"] = records;
  Json summary;
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::RegimeUnmet, Verdict::LowerBoundPass}) {
    summary[to_string(v)] = counts[v];
  }
  summary["total"] = report.records.size();
  doc["summary"] = summary;
  return doc;
}

Report report_from_json(const Json& doc) {
  if (doc.value("schema", 0) != 1) throw std::invalid_argument("unsupported report schema");
  Report report;
  const Json& config = doc.at("config");
  report.config.group = config.at("group").get<std::string>();
  report.suites = config.at("suites").get<std::vector<std::string>>();
  report.config.suites = report.suites;
  std::tie(report.config.n_min, report.config.n_max) = parse_n_range(config.at("N").get<std::string>());
  report.config.sigmas.clear();
  for (const auto& s : config.at("sigma")) report.config.sigmas.push_back(parse_rational(s.get<std::string>()));
  report.config.cap = config.at("cap").get<unsigned>();
  report.config.trials = config.at("trials").get<unsigned>();
  if (!config.at("seed").is_null()) report.config.seed = config.at("seed").get<std::uint64_t>();
  report.group_name = doc.at("group").get<std::string>();
  for (const auto& rec : doc.at("records")) {
    CheckRecord r = make_record(rec.at("id").get<std::string>(), rec.at("anchor").get<std::string>(),
                                pairs_from_json(rec.at("params")));
    r.verdict = verdict_from_string(rec.at("verdict").get<std::string>());
    if (!rec.at("witness").is_null()) r.witness = rec.at("witness").get<std::string>();
    r.exponents = pairs_from_json(rec.at("exponents"));
    report.records.push_back(std::move(r));
  }
  return report;
}

std::string emit(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(report).dump(2) + "\n";
  std::ostringstream out;
  out << "group: " << (report.group_name.empty() ? report.config.group : report.group_name) << "\n";
  out << "suites:";
  for (const auto& s : report.suites) out << " " << s;
  out << "\n\n";
  std::map<Verdict, unsigned> counts;
  for (const auto& r : report.records) {
    ++counts[r.verdict];
    out << "[" << to_string(r.verdict) << "] " << r.id;
    if (!r.params.empty()) out << "  " << join_pairs(r.params);
    out << "\n    statement: " << r.anchor << "\n";
    if (r.witness) out << "    witness: " << *r.witness << "\n";
    if (!r.exponents.empty()) out << "    exponents: " << join_pairs(r.exponents) << "\n";
  }
  out << "\nsummary:";
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::RegimeUnmet, Verdict::LowerBoundPass}) {
    out << " " << to_string(v) << "=" << counts[v];
  }
  out << " total=" << report.records.size() << "\n";
  return out.str();
}

std::pair<unsigned, unsigned> parse_n_range(std::string_view text) {
  const auto pos = text.find("..");
  if (pos == std::string_view::npos) {
    const unsigned n = parse_unsigned(text, "--N");
    return {n, n};
  }
  return {parse_unsigned(text.substr(0, pos), "--N"), parse_unsigned(text.substr(pos + 2), "--N")};
}

std::vector<Scalar> parse_rational_list(std::string_view text) {
  std::vector<Scalar> out;
  for (auto piece : split(text, ',')) out.push_back(parse_rational(piece));
  return out;
}

std::vector<std::string> parse_suite_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto piece : split(text, ',')) out.emplace_back(piece);
  return out;
}

}  // namespace dagger
