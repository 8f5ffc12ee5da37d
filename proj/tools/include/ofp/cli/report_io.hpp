#pragma once

#include "ofp/report.hpp"

#include "json.hpp"

#include <ostream>
#include <string>

namespace ofp::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitConfig = 2 };

// Everything a run emits: task echo, verdict, per-check residuals, block values, timing.
struct RunReport {
  int schema_version = kSchemaVersion;
  std::string scenario;
  std::string task;
  bool passed = false;
  int exit_code = kExitConfig;
  std::string error;  // config error message, with field path
  std::vector<CheckResult> checks;
  std::vector<BlockValue> values;
  std::vector<std::string> notes;
  double seconds = 0.0;
};

nlohmann::json to_json(const RunReport& r);
// Throws std::runtime_error on schema violations.
RunReport report_from_json(const nlohmann::json& j);

void emit_text(const RunReport& r, std::ostream& os);
void emit_structured(const RunReport& r, std::ostream& os);

}  // namespace ofp::cli
