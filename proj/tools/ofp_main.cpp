#include "ofp/cli/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace ofp::cli;
  CLI::App app{"Operator-valued free probability scenarios: Fisher information, index, Monte Carlo"};
  std::string path;
  std::string format = "text";
  Overrides o;
  app.add_option("--scenario", path, "Scenario JSON file")->required();
  app.add_option("--maxdeg", o.maxdeg, "Truncation degree");
  app.add_option("--tol", o.tol, "Residual tolerance");
  app.add_option("--seed", o.seed, "RNG seed for sampling and Monte Carlo");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--jobs", o.jobs, "Worker threads for Monte Carlo");
  app.add_option("--N", o.mc_N, "Monte Carlo matrix size per block entry");
  app.add_option("--samples", o.mc_samples, "Monte Carlo sample count");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }
  const RunReport r = run_scenario_file(path, o);
  if (format == "structured")
    emit_structured(r, std::cout);
  else
    emit_text(r, std::cout);
  return r.exit_code;
}
