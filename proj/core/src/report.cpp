#include "pdproj/report.hpp"

#include <algorithm>
#include <sstream>

#include "pdproj/error.hpp"
#include "pdproj/io.hpp"

namespace pdproj {

bool SuiteReport::passed() const noexcept { return failures() == 0; }

std::size_t SuiteReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.passed; }));
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "text") return ReportFormat::Text;
  throw Error(Errc::ConfigError, "format: expected 'json' or 'text', got '" + std::string(s) + "'");
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& c : r.records) {
    nlohmann::json j{{"name", c.name},
                     {"anchor", c.anchor},
                     {"passed", c.passed},
                     {"observation", c.observation},
                     {"evidence", c.evidence}};
    if (!c.note.empty()) j["note"] = c.note;
    records.push_back(std::move(j));
  }
  return {{"schema_version", io::kSchemaVersion},
          {"suite", r.suite},
          {"status", r.passed() ? "pass" : "fail"},
          {"failures", r.failures()},
          {"environment", r.environment},
          {"records", records}};
}

SuiteReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != io::kSchemaVersion) {
      throw Error(Errc::ConfigError, "report.schema_version: unsupported version");
    }
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    r.environment = j.at("environment");
    for (const auto& c : j.at("records")) {
      CheckRecord rec;
      rec.name = c.at("name").get<std::string>();
      rec.anchor = c.at("anchor").get<std::string>();
      rec.passed = c.at("passed").get<bool>();
      rec.observation = c.value("observation", false);
      rec.evidence = c.value("evidence", nlohmann::json::object());
      rec.note = c.value("note", "");
      r.records.push_back(std::move(rec));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ConfigError, std::string("report: ") + e.what());
  }
}

std::string emit_report(const SuiteReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";

  std::ostringstream out;
  out << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.records.size() << " records, "
      << r.failures() << " failed)\n";
  out << "  environment " << r.environment.dump() << "\n";
  for (const auto& c : r.records) {
    const char* tag = c.observation ? "OBS " : (c.passed ? "PASS" : "FAIL");
    out << "  [" << tag << "] " << c.name << "  <" << c.anchor << ">\n";
    if (!c.evidence.empty()) out << "         " << c.evidence.dump() << "\n";
    if (!c.note.empty()) out << "         note: " << c.note << "\n";
  }
  return out.str();
}

}  // namespace pdproj
