#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdproj/numcore.hpp"
#include "pdproj/report.hpp"

namespace pdproj {

/// Everything a suite run depends on. Two runs with equal configs produce
/// equal reports.
struct SuiteConfig {
  int schema_version = 1;
  std::string suite;
  std::uint64_t seed = 42;
  // Points per sampled set.
  std::size_t n_points = 8;
  double min_sep = 0.25;
  // Half-width of the Euclidean sampling box.
  double radius = 1.0;
  // Trial counts.
  std::size_t point_sets = 20;
  std::size_t projections = 50;
  std::size_t instances = 1;
  Tolerances tolerances;
  // Evidence parameters for aperiodicity and sampled invariance.
  int m_max = 16;
  std::size_t probes = 64;
  // Suite-specific knobs (rho, sigma, z, r, ...).
  nlohmann::json parameters = nlohmann::json::object();
};

struct SuiteInfo {
  std::string id;
  std::string description;
};

const std::vector<SuiteInfo>& suite_catalog();

/// Shipped defaults; ConfigError for an unknown id.
SuiteConfig default_config(std::string_view suite);

/// Defaults for `suite` overlaid with the fields present in `j`. Unknown
/// fields and a conflicting "suite" entry raise ConfigError.
SuiteConfig config_from_json(const nlohmann::json& j, std::string_view suite);
nlohmann::json to_json(const SuiteConfig& c);

/// Runs the suite. Invalid configs raise ConfigError; mathematical failures
/// and library errors during a check become failed records.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace pdproj
