#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdproj {

/// Anchor strings naming the claim each check record exercises.
namespace anchor {
inline constexpr std::string_view kKernelInvariance = "kernel-invariance";
inline constexpr std::string_view kCentralMap = "central-map";
inline constexpr std::string_view kAperiodicMap = "aperiodic-map";
inline constexpr std::string_view kInjectiveMap = "injective-map";
inline constexpr std::string_view kCounterexampleInvariance = "counterexample-invariance";
inline constexpr std::string_view kCounterexamplePsd = "counterexample-psd";
inline constexpr std::string_view kCounterexampleNotStrict = "counterexample-not-strict";
inline constexpr std::string_view kProjectionStrictness = "projection-strictness";
inline constexpr std::string_view kOrbitDecomposition = "orbit-decomposition";
inline constexpr std::string_view kAbelianFourier = "abelian-fourier-representation";
inline constexpr std::string_view kAbelianStrictness = "abelian-strictness-criterion";
inline constexpr std::string_view kAbelianProjection = "abelian-projection-equivalence";
inline constexpr std::string_view kDimensionEmbedding = "dimension-embedding";
inline constexpr std::string_view kShiftStrictness = "shift-strictness";
inline constexpr std::string_view kShiftedCounterexample = "shifted-counterexample";
inline constexpr std::string_view kAdjointInvariance = "adjoint-invariance";
inline constexpr std::string_view kNonAperiodicControl = "non-aperiodic-control";
}  // namespace anchor

/// One check. Observations document behaviour without asserting it and
/// always count as passed; the evidence still says what was seen.
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool passed = true;
  bool observation = false;
  nlohmann::json evidence = nlohmann::json::object();
  std::string note;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> records;
  // Seed, tolerances and sampling parameters the run used.
  nlohmann::json environment = nlohmann::json::object();

  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] std::size_t failures() const noexcept;

  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

enum class ReportFormat { Json, Text };

/// "json" or "text"; ConfigError otherwise.
ReportFormat parse_report_format(std::string_view s);

nlohmann::json to_json(const SuiteReport& r);
SuiteReport report_from_json(const nlohmann::json& j);

/// Pretty JSON, or a line per record with its anchor inline. No timestamps,
/// so equal reports serialize to equal bytes.
std::string emit_report(const SuiteReport& r, ReportFormat format);

}  // namespace pdproj
