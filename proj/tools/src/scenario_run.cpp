#include "ofp/cli/scenario.hpp"
#include "ofp/fisher.hpp"
#include "ofp/frame_theorems.hpp"
#include "ofp/frames.hpp"
#include "ofp/montecarlo.hpp"
#include "ofp/theorem5.hpp"

#include <chrono>

namespace ofp::cli {

using nlohmann::json;

namespace {

const json kEmpty = json::object();

const json& section(const json& doc, const char* key) { return doc.contains(key) ? doc[key] : kEmpty; }

std::string expectation_kind(const Scenario& s) {
  return s.doc.contains("expectation") ? s.doc["expectation"]["kind"].get<std::string>() : "";
}

const CondExpectation& need_E(const Context& ctx) {
  if (!ctx.E) throw ConfigError("expectation", "required for this task");
  return *ctx.E;
}

// Compares a computed value against "expect.<key>" when the scenario provides it.
void check_expected(VerificationReport& rep, const Scenario& s, const char* key, const Element& value) {
  const json& exp = section(s.doc, "expect");
  if (!exp.contains(key)) return;
  const Element want = parse_element(exp[key], value.algebra(), std::string("expect.") + key);
  rep.add(std::string("expected_") + key, distance(value, want), s.tol);
  rep.add_value(std::string("expected ") + key, want);
}

NCPoly parse_poly(const std::string& text, const Context& ctx, const std::string& path) {
  try {
    return parse_expression(text, ctx.symbols);
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

Generator named_generator(const json& v, const Context& ctx, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a variable name");
  const auto g = ctx.spec.find(v.get<std::string>());
  if (!g) throw ConfigError(path, "unknown variable '" + v.get<std::string>() + "'");
  return *g;
}

VerificationReport run_verify_fisher(const Scenario& s, const Context& ctx) {
  const json& cands = s.doc["candidates"];
  std::vector<ConjugateCandidate> out;
  std::vector<Generator> system;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::string cp = "candidates[" + std::to_string(i) + "]";
    if (!cands[i].is_object()) throw ConfigError(cp, "expected an object");
    const Generator g = named_generator(cands[i].value("variable", json()), ctx, cp + ".variable");
    const std::string expr = cands[i].contains("expression") ? cands[i]["expression"].get<std::string>() : "";
    if (expr.empty()) throw ConfigError(cp + ".expression", "required field missing");
    const json wrt = cands[i].contains("wrt") ? cands[i]["wrt"] : json("id");
    out.push_back({g, parse_poly(expr, ctx, cp + ".expression"), resolve_map(wrt, ctx, cp + ".wrt"),
                   "xi(" + cands[i]["variable"].get<std::string>() + ")"});
    system.push_back(g);
  }
  if (s.doc.contains("system")) {
    system.clear();
    const json& sys = s.doc["system"];
    if (!sys.is_array()) throw ConfigError("system", "expected an array of variable names");
    for (std::size_t i = 0; i < sys.size(); ++i)
      system.push_back(named_generator(sys[i], ctx, "system[" + std::to_string(i) + "]"));
  }
  const auto vars = spec_variables(ctx.spec, system);
  const ConjugateReport cr = verify_conjugate_system(ctx.spec, vars, out, s.options());
  VerificationReport rep = cr.report;
  if (cr.moment_pass && cr.cumulant_pass) {
    const Element phi = fisher_value(ctx.spec, out);
    add_positivity_checks(rep, "phi.", phi, s.tol);
    rep.add_value("phi*", phi);
    check_expected(rep, s, "phi", phi);
  } else {
    rep.notes.push_back("conjugate system not verified; Phi* not reported");
  }
  return rep;
}

std::vector<int> keep_slots(const json& entries) {
  static const std::map<std::string, int> slot{{"11", 0}, {"12", 1}, {"21", 2}, {"22", 3}};
  std::vector<int> keep;
  const json& k = entries.at("keep");
  if (!k.is_array()) throw ConfigError("entries.keep", "expected an array of slots");
  for (std::size_t i = 0; i < k.size(); ++i) {
    const std::string v = k[i].is_string() ? k[i].get<std::string>() : k[i].dump();
    auto it = slot.find(v);
    if (it == slot.end()) throw ConfigError("entries.keep[" + std::to_string(i) + "]", "expected one of 11, 12, 21, 22");
    keep.push_back(it->second);
  }
  return keep;
}

EntrySystem build_entries(const Scenario& s, const Context& ctx, const char* default_model, const char* default_cov) {
  const json& e = section(s.doc, "entries");
  const std::string model = e.contains("model") ? e["model"].get<std::string>() : default_model;
  const json cov = e.contains("covariance") ? e["covariance"] : json(default_cov);
  const LinearMap eta = resolve_map(cov, ctx, "entries.covariance");
  std::optional<LinearMap> outer;
  if (ctx.E) outer = ctx.E->map();
  EntrySystem sys;
  if (model == "lemma7") {
    sys = lemma7_entries(ctx.B, eta, outer);
  } else if (model == "circular") {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Identity();
    if (e.contains("rho")) {
      const json& r = e["rho"];
      if (!r.is_array() || r.size() != 4) throw ConfigError("entries.rho", "expected a 4x4 real matrix");
      for (int i = 0; i < 4; ++i) {
        if (!r[i].is_array() || r[i].size() != 4) throw ConfigError("entries.rho", "expected a 4x4 real matrix");
        for (int j = 0; j < 4; ++j) {
          if (!r[i][j].is_number()) throw ConfigError("entries.rho", "expected a 4x4 real matrix");
          rho(i, j) = r[i][j].get<double>();
        }
      }
      if (std::abs(rho.determinant()) < 1e-10) throw ConfigError("entries.rho", "must be invertible");
    }
    sys = correlated_circular_entries(ctx.B, eta, rho, outer);
  } else {
    throw ConfigError("entries.model", "unknown entry model '" + model + "' (use lemma7 or circular)");
  }
  if (e.contains("keep")) sys = restrict_entries(std::move(sys), keep_slots(e));
  return sys;
}

VerificationReport run_theorem5(const Scenario& s, const Context& ctx) {
  const Theorem5Result r = theorem5_formula(build_entries(s, ctx, "lemma7", "E"), s.entry_options(), s.matrix_options());
  VerificationReport rep = r.report;
  check_expected(rep, s, "phi", r.assembled);
  return rep;
}

VerificationReport run_corollary6(const Scenario& s, const Context& ctx) {
  VerificationReport rep = corollary6_check(build_entries(s, ctx, "circular", "id"), s.entry_options(), s.matrix_options());
  if (const BlockValue* v = rep.value("phi*(A, A*)"); v && section(s.doc, "expect").contains("phi")) {
    const AlgebraPtr amp = amplify2(ctx.B);
    check_expected(rep, s, "phi", amp->from_blocks(v->blocks));
  }
  return rep;
}

VerificationReport run_frame_theorem(const Scenario& s, const Context& ctx, bool wrt_id) {
  const CondExpectation& E = need_E(ctx);
  const FrameTheoremResult r =
      wrt_id ? theorem9_check(E, s.entry_options(), s.matrix_options()) : theorem8_check(E, s.entry_options(), s.matrix_options());
  VerificationReport rep = r.report;
  check_expected(rep, s, "phi", r.value);
  return rep;
}

VerificationReport run_index(const Scenario& s, const Context& ctx) {
  const IndexValue iv = compute_index(need_E(ctx), s.seed, s.tol);
  VerificationReport rep = iv.report;
  for (std::size_t i = 0; i < iv.frame.vectors.size(); ++i) rep.add_value("frame f" + std::to_string(i), iv.frame.vectors[i]);
  check_expected(rep, s, "index", iv.value);
  return rep;
}

VerificationReport run_lemma7(const Scenario& s, const Context& ctx) {
  const json& e = section(s.doc, "entries");
  const json cov = e.contains("covariance") ? e["covariance"] : json(ctx.E ? "E" : "id");
  return lemma7_check(ctx.B, resolve_map(cov, ctx, "entries.covariance"), s.options());
}

VerificationReport run_mc(const Scenario& s, const Context& ctx) {
  const json& mc = s.doc["mc"];
  MCConfig cfg;
  cfg.block_algebra = ctx.B;
  try {
    cfg.model = mc_model_for(ctx.B);
  } catch (const AlgebraError& e) {
    throw ConfigError("algebra", e.what());
  }
  const std::string kind = expectation_kind(s);
  const bool scalar = ctx.B->dim() == 1;
  const bool matches = cfg.model == MCModel::MatrixTrace ? (kind == "trace" || (scalar && (kind == "identity" || kind.empty())))
                                                         : (kind == "average" || (scalar && kind.empty()));
  if (!matches) throw ConfigError("expectation", "unsupported (B, E) pair for Monte Carlo; use M_d with trace or C^k with average");
  auto int_field = [&](const char* key, int& dst) {
    if (!mc.contains(key)) return;
    if (!mc[key].is_number_integer()) throw ConfigError(std::string("mc.") + key, "expected an integer");
    dst = mc[key].get<int>();
  };
  int_field("N", cfg.N);
  int_field("samples", cfg.samples);
  if (mc.contains("finite_size_constant")) {
    if (!mc["finite_size_constant"].is_number()) throw ConfigError("mc.finite_size_constant", "expected a number");
    cfg.finite_size_constant = mc["finite_size_constant"].get<double>();
  }
  if (s.mc_N) cfg.N = *s.mc_N;
  if (s.mc_samples) cfg.samples = *s.mc_samples;
  cfg.seed = s.seed;
  cfg.jobs = s.jobs;
  try {
    validate_mc_config(cfg);
  } catch (const AlgebraError& e) {
    throw ConfigError("mc", e.what());
  }
  std::vector<Monomial> words;
  const json& w = mc["words"];
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string wp = "mc.words[" + std::to_string(i) + "]";
    if (!w[i].is_string()) throw ConfigError(wp, "expected a word");
    const auto terms = parse_poly(w[i].get<std::string>(), ctx, wp).terms();
    if (terms.size() != 1) throw ConfigError(wp, "expected a single monomial");
    words.push_back(terms.front());
  }
  return mc_crosscheck(cfg, ctx.spec, words);
}

VerificationReport run_roundtrip(const Scenario& s, const Context& ctx) {
  VerificationReport rep;
  rep.title = "cumulant/moment consistency over " + ctx.B->label();
  const auto alphabet = ctx.spec.generators();
  if (alphabet.empty()) throw ConfigError("variables", "roundtrip needs at least one variable");
  rep.merge(check_roundtrip(ctx.spec, alphabet, s.options()), "roundtrip.");
  rep.merge(check_dual_evaluators(ctx.spec, alphabet, s.options()), "evaluators.");
  rep.merge(check_freeness(ctx.spec, declared_families(ctx.spec), s.options()), "freeness.");
  return rep;
}

VerificationReport dispatch(const Scenario& s, const Context& ctx) {
  if (s.task == "verify-fisher") return run_verify_fisher(s, ctx);
  if (s.task == "index") return run_index(s, ctx);
  if (s.task == "theorem5") return run_theorem5(s, ctx);
  if (s.task == "corollary6") return run_corollary6(s, ctx);
  if (s.task == "theorem8") return run_frame_theorem(s, ctx, false);
  if (s.task == "theorem9") return run_frame_theorem(s, ctx, true);
  if (s.task == "lemma7") return run_lemma7(s, ctx);
  if (s.task == "mc") return run_mc(s, ctx);
  if (s.task == "roundtrip") return run_roundtrip(s, ctx);
  throw ConfigError("task", "unknown task '" + s.task + "'");
}

void fill(RunReport& out, const VerificationReport& rep) {
  out.checks = rep.checks;
  out.values = rep.values;
  out.notes = rep.notes;
  if (!rep.title.empty()) out.notes.insert(out.notes.begin(), rep.title);
}

}  // namespace

RunReport run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  out.scenario = s.name;
  out.task = s.task;
  try {
    const Context ctx = build_context(s);
    fill(out, dispatch(s, ctx));
    out.passed = !out.checks.empty();
    for (const auto& c : out.checks) out.passed = out.passed && c.pass;
    out.exit_code = out.passed ? kExitPass : kExitFail;
  } catch (const ConfigError& e) {
    out.error = e.what();
    out.exit_code = kExitConfig;
  } catch (const VerificationFailure& e) {
    fill(out, e.report());
    out.error = e.what();
    out.exit_code = kExitFail;
  } catch (const AlgebraError& e) {
    out.error = e.what();
    out.exit_code = kExitConfig;
  } catch (const json::exception& e) {
    out.error = std::string("malformed field: ") + e.what();
    out.exit_code = kExitConfig;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunReport run_scenario_file(const std::string& path, const Overrides& o) {
  try {
    Scenario s = load_scenario_file(path);
    apply_overrides(s, o);
    return run_scenario(s);
  } catch (const ConfigError& e) {
    RunReport out;
    out.scenario = path;
    out.error = e.what();
    out.exit_code = kExitConfig;
    return out;
  }
}

}  // namespace ofp::cli
