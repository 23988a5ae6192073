// daggerverify: runs the verification suites and converts between the
// Taylor and Mahler bases.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dagger/group.hpp"
#include "dagger/json_io.hpp"
#include "dagger/mahler.hpp"
#include "dagger/suite.hpp"

namespace {

using namespace dagger;

constexpr int kExitFailedChecks = 1;
constexpr int kExitUsage = 2;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  out << text;
  return 0;
}

Json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path.empty() || path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    buffer << in.rdbuf();
  }
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string describe(const PValuedGroup& g, const std::string& format) {
  if (format == "json") return group_to_json(g) + "\n";
  std::ostringstream out;
  out << "name: " << g.name() << "\np: " << g.p() << "\nd: " << g.dimension() << "\nomega:";
  for (const auto& w : g.omega()) out << " " << format_rational(w);
  out << "\nlaw degree: " << g.law_degree() << "\n";
  const auto law_names = [&] {
    auto names = variable_names(g.dimension(), "X");
    auto ys = variable_names(g.dimension(), "Y");
    names.insert(names.end(), ys.begin(), ys.end());
    return names;
  }();
  const auto x_names = variable_names(g.dimension(), "X");
  for (std::size_t i = 0; i < g.dimension(); ++i) out << "F" << i + 1 << " = " << g.law()[i].to_string(law_names) << "\n";
  for (std::size_t i = 0; i < g.dimension(); ++i) out << "I" << i + 1 << " = " << g.inverse()[i].to_string(x_names) << "\n";
  out << "model: " << (g.model() ? g.model()->tag() : std::string("none")) << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of p-adic group laws, norms and distribution algebras"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites and emit a report");
  std::string group = "heisenberg:3";
  std::string suites = "all";
  std::string n_range = "1..8";
  std::string sigmas = "1/4,1/2,3/4,1";
  unsigned cap = 8;
  unsigned trials = kDefaultSamples;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out_path;
  verify->add_option("--group", group, "Built-in tag (heisenberg:<p>, abelian:<p>:<d>) or JSON config path")
      ->capture_default_str();
  verify->add_option("--suites", suites, "Comma-separated suites, or all")->capture_default_str();
  verify->add_option("--N", n_range, "Range a..b of neighborhood levels")->capture_default_str();
  verify->add_option("--sigma", sigmas, "Comma-separated exponents sigma with s = p^-sigma")->capture_default_str();
  verify->add_option("--cap", cap, "Truncation degree D")->capture_default_str();
  verify->add_option("--trials", trials, "Samples per randomized check")->capture_default_str();
  verify->add_option("--seed", seed, "Seed for the randomized suites");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  verify->add_option("--out", out_path, "Output file (default stdout)");

  // describe-group
  auto* describe_cmd = app.add_subcommand("describe-group", "Validate a group and print its law");
  std::string describe_group = "heisenberg:3";
  std::string describe_format = "text";
  describe_cmd->add_option("--group", describe_group, "Built-in tag or JSON config path")->capture_default_str();
  describe_cmd->add_option("--format", describe_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a polynomial between the Taylor and Mahler bases");
  std::string direction = "taylor-to-mahler";
  std::string in_path = "-";
  std::string convert_out;
  std::optional<std::size_t> dimension;
  convert->add_option("--direction", direction, "taylor-to-mahler or mahler-to-taylor")
      ->check(CLI::IsMember({"taylor-to-mahler", "mahler-to-taylor"}))
      ->capture_default_str();
  convert->add_option("--in", in_path, "JSON list of {index, coeff} records (default stdin)");
  convert->add_option("--dim", dimension, "Number of variables (inferred from the first record if omitted)");
  convert->add_option("--out", convert_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      SuiteConfig config;
      config.group = group;
      config.suites = parse_suite_list(suites);
      std::tie(config.n_min, config.n_max) = parse_n_range(n_range);
      config.sigmas = parse_rational_list(sigmas);
      config.cap = cap;
      config.trials = trials;
      config.seed = seed;
      const Report report = run(config);
      if (int rc = write_output(emit(report, format == "json" ? ReportFormat::Json : ReportFormat::Text), out_path)) {
        return rc;
      }
      return report.any_failed() ? kExitFailedChecks : 0;
    }
    if (describe_cmd->parsed()) {
      const GroupPtr g = resolve_group(describe_group);
      std::cout << describe(*g, describe_format);
      return 0;
    }
    if (convert->parsed()) {
      const Json records = read_json(in_path);
      std::size_t d = 0;
      if (dimension) {
        d = *dimension;
      } else if (records.is_array() && !records.empty() && records.front().contains("index")) {
        d = records.front().at("index").size();
      } else {
        throw std::invalid_argument("cannot infer the dimension from an empty list; pass --dim");
      }
      const TruncatedSeries input = series_from_json(records, d);
      TruncatedSeries output(d, kNoTruncation);
      if (direction == "taylor-to-mahler") {
        const MahlerFamily m = taylor_to_mahler(input);
        output = TruncatedSeries(d, kNoTruncation, m.coeffs);
      } else {
        output = mahler_to_taylor(MahlerFamily{d, kNoTruncation, input.terms(), true});
      }
      return write_output(series_to_json(output).dump(2) + "\n", convert_out);
    }
  } catch (const GroupValidationError& e) {
    std::cerr << "error: invalid group\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
