#include "ofp/cli/scenario.hpp"

#include "doctest.h"

#include <filesystem>
#include <sstream>

using namespace ofp;
using namespace ofp::cli;

namespace {

std::string data(const std::string& name) { return std::string(OFP_TEST_DATA_DIR) + "/" + name + ".json"; }
std::string bundled(const std::string& name) { return std::string(OFP_SCENARIO_DIR) + "/" + name + ".json"; }

RunReport run(const std::string& path, Overrides o = {}) { return run_scenario_file(path, o); }

}  // namespace

TEST_CASE("configuration errors exit with 2 and name the field") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"maxdeg_zero", "maxdeg"},
      {"unknown_task", "task"},
      {"missing_algebra", "algebra"},
      {"unknown_field", "maxdegree"},
      {"bad_block", "algebra.blocks[1]"},
      {"unknown_variable", "candidates[0].variable"},
      {"bad_expression", "candidates[0].expression"},
      {"bad_map", "variables[0].covariance"},
      {"malformed", "invalid JSON"},
      {"mc_unsupported_pair", "expectation"},
      {"mc_small_N", "mc"},
      {"mc_not_monomial", "mc.words[0]"},
  };
  for (const auto& [file, field] : cases) {
    const RunReport r = run(data(file));
    INFO(file, ": ", r.error);
    CHECK(r.exit_code == kExitConfig);
    CHECK_FALSE(r.passed);
    CHECK(r.error.find(field) != std::string::npos);
  }
  CHECK(run(data("does_not_exist")).exit_code == kExitConfig);
}

TEST_CASE("override validation") {
  Overrides o;
  o.maxdeg = 0;
  CHECK(run(bundled("lemma7_scalar"), o).exit_code == kExitConfig);
  o = {};
  o.tol = -1.0;
  CHECK(run(bundled("lemma7_scalar"), o).exit_code == kExitConfig);
  o = {};
  o.jobs = 0;
  CHECK(run(bundled("lemma7_scalar"), o).exit_code == kExitConfig);
}

TEST_CASE("verification failures exit with 1") {
  for (const char* file : {"verify_fisher_wrong_scale", "mc_doubled_covariance", "index_wrong_expectation", "freeness_injected"}) {
    const RunReport r = run(data(file));
    INFO(file, ": ", r.error);
    CHECK(r.exit_code == kExitFail);
    CHECK_FALSE(r.passed);
    bool failed_check = false;
    for (const auto& c : r.checks) failed_check = failed_check || !c.pass;
    CHECK(failed_check);
  }
}

TEST_CASE("passing scenarios exit with 0") {
  for (const char* file : {"lemma7_scalar", "index_c2_average", "verify_fisher_semicircular"}) {
    const RunReport r = run(bundled(file));
    INFO(file, ": ", r.error);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.passed);
  }
  for (const char* file : {"index_weighted", "index_matrix_average", "index_keep_block"}) {
    const RunReport r = run(data(file));
    INFO(file, ": ", r.error);
    CHECK(r.exit_code == kExitPass);
  }
}

TEST_CASE("text and structured output show the C+C index 2 twice on the diagonal") {
  const RunReport r = run(bundled("index_c2_average"));
  REQUIRE(r.exit_code == kExitPass);
  std::ostringstream text, structured;
  emit_text(r, text);
  emit_structured(r, structured);
  CHECK(text.str().find("PASS") != std::string::npos);
  CHECK(text.str().find("RESULT: PASS") != std::string::npos);
  const BlockValue* idx = nullptr;
  for (const auto& v : r.values)
    if (v.name == "index") idx = &v;
  REQUIRE(idx != nullptr);
  REQUIRE(idx->blocks.size() == 2);
  CHECK(std::abs(idx->blocks[0](0, 0) - cplx(2.0)) < 1e-12);
  CHECK(std::abs(idx->blocks[1](0, 0) - cplx(2.0)) < 1e-12);
  // Grid lines below the "index:" header.
  std::istringstream lines(text.str());
  std::string line;
  bool in_index = false;
  int twos = 0;
  while (std::getline(lines, line)) {
    if (line == "index:") {
      in_index = true;
      continue;
    }
    if (in_index && line.rfind(" ", 0) != 0) break;
    if (in_index)
      for (auto q = line.find("2.000000"); q != std::string::npos; q = line.find("2.000000", q + 1)) ++twos;
  }
  CHECK(twos == 2);
  const auto j = nlohmann::json::parse(structured.str());
  int json_twos = 0;
  for (const auto& v : j["values"])
    if (v["name"] == "index")
      for (const auto& b : v["blocks"]) json_twos += std::abs(b["re"][0][0].get<double>() - 2.0) < 1e-12;
  CHECK(json_twos == 2);
}

TEST_CASE("structured report round-trips through the schema") {
  for (const char* file : {"theorem5_correlated_scalar", "mc_m2_trace"}) {
    const RunReport r = run(bundled(file));
    std::ostringstream os;
    emit_structured(r, os);
    const RunReport back = report_from_json(nlohmann::json::parse(os.str()));
    CHECK(to_json(back) == to_json(r));
    CHECK(back.checks.size() == r.checks.size());
    CHECK(back.values.size() == r.values.size());
  }
  const RunReport cfg = run(data("maxdeg_zero"));
  CHECK(to_json(report_from_json(to_json(cfg))) == to_json(cfg));
  nlohmann::json broken = to_json(cfg);
  broken["schema_version"] = 99;
  CHECK_THROWS_AS(report_from_json(broken), std::runtime_error);
  broken = to_json(cfg);
  broken.erase("checks");
  CHECK_THROWS_AS(report_from_json(broken), std::runtime_error);
}

TEST_CASE("every bundled scenario parses") {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(OFP_SCENARIO_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++n;
    CHECK_NOTHROW(build_context(load_scenario_file(e.path().string())));
  }
  CHECK(n >= 10);
}
