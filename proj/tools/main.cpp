// pdproj command line: suite verification plus Gram, orbit and Fourier
// utilities over JSON files.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 configuration or
// runtime error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdproj/error.hpp"
#include "pdproj/fourier.hpp"
#include "pdproj/io.hpp"
#include "pdproj/report.hpp"
#include "pdproj/suites.hpp"

namespace {

using pdproj::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

// Errors that state a mathematical fact about the input rather than a
// malformed request.
bool is_mathematical(pdproj::Errc code) {
  switch (code) {
    case pdproj::Errc::NonHermitianInput:
    case pdproj::Errc::PeriodicityDetected:
    case pdproj::Errc::InjectivityViolation:
    case pdproj::Errc::WitnessFailed:
    case pdproj::Errc::InvalidSpectrum:
    case pdproj::Errc::OriginNotFixed:
      return true;
    default:
      return false;
  }
}

std::vector<int> parse_moduli(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const int q = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(q);
    } catch (const std::exception&) {
      throw pdproj::Error(pdproj::Errc::ConfigError, "--group: '" + part + "' is not an integer");
    }
  }
  if (out.empty()) throw pdproj::Error(pdproj::Errc::ConfigError, "--group: expected q1,q2,...");
  return out;
}

// The input may repeat the group; it must then agree with --group.
void check_group(const Json& input, const pdproj::Space& g) {
  if (!input.contains("group")) return;
  const Json& j = input.at("group");
  if (!j.is_array() || j != Json(g.moduli())) {
    throw pdproj::Error(pdproj::Errc::ConfigError, "input.group: does not match --group");
  }
}

int cmd_verify(const std::string& suite, const std::string& config_path, std::optional<std::uint64_t> seed,
               const std::string& format) {
  const auto fmt = pdproj::parse_report_format(format);
  pdproj::SuiteConfig config =
      config_path.empty() ? pdproj::default_config(suite) : pdproj::config_from_json(pdproj::io::read_file(config_path), suite);
  if (seed) config.seed = *seed;
  const auto report = pdproj::run_suite(config);
  std::cout << pdproj::emit_report(report, fmt);
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_list(const std::string& format) {
  const auto fmt = pdproj::parse_report_format(format);
  if (fmt == pdproj::ReportFormat::Json) {
    Json out = Json::array();
    for (const auto& s : pdproj::suite_catalog()) out.push_back({{"id", s.id}, {"description", s.description}});
    std::cout << Json{{"schema_version", pdproj::io::kSchemaVersion}, {"suites", out}}.dump(2) << "\n";
  } else {
    for (const auto& s : pdproj::suite_catalog()) std::cout << s.id << "  " << s.description << "\n";
  }
  return kExitOk;
}

int cmd_gram(const std::string& kernel_path, const std::string& points_path, double pd_tol) {
  const auto K = pdproj::io::any_kernel_from_json(pdproj::io::read_file(kernel_path));
  const auto ps = pdproj::io::point_set_from_json(pdproj::io::read_file(points_path));
  if (!(ps.space == K.space())) {
    throw pdproj::Error(pdproj::Errc::ConfigError, "points.space: does not match the kernel's space");
  }
  const auto G = pdproj::gram(K, ps.points);
  const auto verdict = pdproj::classify(G, pd_tol);
  Json out{{"schema_version", pdproj::io::kSchemaVersion},
           {"ell", K.ell()},
           {"points", ps.points.size()},
           {"gram", pdproj::io::to_json(G)},
           {"verdict", pdproj::io::to_json(verdict)}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_orbit(const std::string& map_path, const std::string& points_path) {
  const auto ps = pdproj::io::point_set_from_json(pdproj::io::read_file(points_path));
  const auto phi = pdproj::io::map_from_json(pdproj::io::read_file(map_path), ps.space);
  if (!(phi.space() == ps.space)) {
    throw pdproj::Error(pdproj::Errc::ConfigError, "map.space: does not match the points' space");
  }
  std::cout << pdproj::io::to_json(pdproj::orbit_decompose(phi, ps.points)).dump(2) << "\n";
  return kExitOk;
}

int cmd_fourier(const std::string& mode, const std::string& group, const std::string& input_path) {
  const auto g = pdproj::Space::finite_abelian(parse_moduli(group));
  const Json input = pdproj::io::read_file(input_path);
  check_group(input, g);
  const auto size = static_cast<std::size_t>(g.order());

  if (mode == "analyze") {
    if (!input.contains("values") || !input.at("values").is_array() || input.at("values").size() != size) {
      throw pdproj::Error(pdproj::Errc::ConfigError,
                          "input.values: expected " + std::to_string(size) + " values in group order");
    }
    std::vector<pdproj::Complex> psi;
    for (const auto& v : input.at("values")) psi.push_back(pdproj::io::complex_from_json(v, "input.values"));
    const auto a = pdproj::analyze(psi, g);
    Json coeffs = Json::array();
    for (const auto& c : a.coefficients) coeffs.push_back(pdproj::io::to_json(c));
    std::cout << Json{{"schema_version", pdproj::io::kSchemaVersion},
                      {"group", g.moduli()},
                      {"coefficients", coeffs},
                      {"max_imag", a.max_imag},
                      {"min_real", a.min_real},
                      {"positive_definite", a.positive_definite}}
                     .dump(2)
              << "\n";
    return kExitOk;
  }

  Json spec_json = input;
  spec_json["group"] = g.moduli();
  const auto spectrum = pdproj::io::spectrum_from_json(spec_json);
  Json values = Json::array();
  for (const auto& m : pdproj::synthesize_matrix(spectrum)) {
    values.push_back(spectrum.is_matrix() ? pdproj::io::to_json(m) : pdproj::io::to_json(m(0, 0)));
  }
  std::cout << Json{{"schema_version", pdproj::io::kSchemaVersion},
                    {"group", g.moduli()},
                    {"values", values},
                    {"strictly_positive_definite", pdproj::strict_criterion(spectrum)}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive definite matrix kernels: counterexample construction and verification"};
  app.require_subcommand(1);

  std::string suite, config_path, format = "text";
  std::uint64_t seed_value = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite id (see list-suites)")->required();
  verify->add_option("--config", config_path, "JSON config overriding the suite defaults");
  auto* seed_opt = verify->add_option("--seed", seed_value, "Seed overriding the config");
  verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string list_format = "text";
  auto* list = app.add_subcommand("list-suites", "List the shipped suites");
  list->add_option("--format", list_format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string kernel_path, points_path;
  double pd_tol = pdproj::Tolerances{}.pd;
  auto* gram = app.add_subcommand("gram", "Blocked Gram matrix and PD verdict");
  gram->add_option("--kernel", kernel_path, "Kernel JSON (scalar, matrix or counterexample)")->required();
  gram->add_option("--points", points_path, "Point set JSON")->required();
  gram->add_option("--pd-tol", pd_tol, "Relative eigenvalue threshold");

  std::string map_path, orbit_points;
  auto* orbit = app.add_subcommand("orbit", "Orbit decomposition of a point set under a map");
  orbit->add_option("--map", map_path, "Map JSON")->required();
  orbit->add_option("--points", orbit_points, "Point set JSON")->required();

  std::string mode, group, input_path;
  auto* fourier = app.add_subcommand("fourier", "Fourier analysis and synthesis on Z_q1 x ... x Z_ql");
  fourier->add_option("mode", mode, "analyze or synthesize")->required()->check(CLI::IsMember({"analyze", "synthesize"}));
  fourier->add_option("--group", group, "Moduli q1,q2,...")->required();
  fourier->add_option("--input", input_path, "Input JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (verify->parsed()) {
      return cmd_verify(suite, config_path, seed_opt->count() ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                        format);
    }
    if (list->parsed()) return cmd_list(list_format);
    if (gram->parsed()) return cmd_gram(kernel_path, points_path, pd_tol);
    if (orbit->parsed()) return cmd_orbit(map_path, orbit_points);
    if (fourier->parsed()) return cmd_fourier(mode, group, input_path);
  } catch (const pdproj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_mathematical(e.code()) ? kExitCheckFailed : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
