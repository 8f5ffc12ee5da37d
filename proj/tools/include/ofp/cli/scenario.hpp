#pragma once

#include "ofp/cli/report_io.hpp"
#include "ofp/cumulant_checks.hpp"
#include "ofp/distribution.hpp"
#include "ofp/expectation.hpp"
#include "ofp/word_parser.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofp::cli {

// Invalid configuration; `path` names the offending field, e.g. "variables[1].kind".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"verify-fisher", "index",    "theorem5", "corollary6", "theorem8",
                                              "theorem9",      "lemma7",   "mc",       "roundtrip"};
  return tasks;
}

struct Overrides {
  std::optional<int> maxdeg;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<int> mc_N;  // Monte Carlo matrix size and sample count
  std::optional<int> mc_samples;
};

struct Scenario {
  std::string name;
  std::string task;
  nlohmann::json doc;
  int maxdeg = 6;        // truncation degree (matrix level for the theorem tasks)
  int entry_maxdeg = 8;  // entry-level truncation degree for the theorem tasks
  double tol = 1e-9;
  std::size_t budget = 1024;        // coefficient tuples per degree before sampling (entry/scalar level)
  std::size_t matrix_budget = 256;  // same at the M_2 level
  std::uint64_t seed = 1;
  int jobs = 1;
  std::optional<int> mc_N;
  std::optional<int> mc_samples;

  CheckOptions options() const { return {maxdeg, tol, budget, seed}; }
  CheckOptions entry_options() const { return {entry_maxdeg, tol, budget, seed}; }
  CheckOptions matrix_options() const { return {maxdeg, tol, matrix_budget, seed}; }
};

// Throws ConfigError.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& fallback_name = "scenario");
Scenario load_scenario_file(const std::string& path);
void apply_overrides(Scenario& s, const Overrides& o);

// Objects built from a scenario: algebra, expectation, distribution and named symbols.
struct Context {
  AlgebraPtr B;
  std::optional<CondExpectation> E;
  DistributionSpec spec;
  SymbolTable symbols;
};
Context build_context(const Scenario& s);
// Map reference: "E", "id", "zero", or {"map": ..., "scale": s}.
LinearMap resolve_map(const nlohmann::json& ref, const Context& ctx, const std::string& path);
Element parse_element(const nlohmann::json& v, const AlgebraPtr& A, const std::string& path);

// Runs the task; config problems yield exit code 2, failed verification 1, success 0.
RunReport run_scenario(const Scenario& s);
RunReport run_scenario_file(const std::string& path, const Overrides& o);

}  // namespace ofp::cli
