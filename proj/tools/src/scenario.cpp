#include "ofp/cli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ofp::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevel{"name",         "description", "task",    "algebra",       "expectation",
                                      "maxdeg",       "entry_maxdeg", "tolerance", "budget",     "matrix_budget",
                                      "seed",         "jobs",        "variables", "covariances", "constants",
                                      "candidates",   "system",      "entries",  "mc",            "expect"};
const std::set<std::string> kExpectationKinds{"identity", "trace", "average", "diagonal", "pinching", "matrix"};

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(child(path, key), "required field missing");
  return obj.at(key);
}

int as_int(const json& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi)
    throw ConfigError(path, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

cplx as_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path, "expected a number or a [re, im] pair");
}

Eigen::MatrixXcd as_matrix(const json& v, const std::string& path, int rows, int cols) {
  as_array(v, path);
  if (static_cast<int>(v.size()) != rows) throw ConfigError(path, "expected " + std::to_string(rows) + " rows");
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string rp = item(path, r);
    as_array(v[r], rp);
    if (static_cast<int>(v[r].size()) != cols) throw ConfigError(rp, "expected " + std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c) m(r, c) = as_complex(v[r][c], item(rp, c));
  }
  return m;
}

std::string algebra_label(const std::vector<int>& blocks) {
  std::string s;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (k) s += "+";
    s += blocks[k] == 1 ? "C" : "M" + std::to_string(blocks[k]);
  }
  return s;
}

}  // namespace

Scenario parse_scenario(const json& doc, const std::string& fallback_name) {
  if (!doc.is_object()) throw ConfigError("", "scenario must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (!kTopLevel.count(key)) throw ConfigError(key, "unknown field");
  Scenario s;
  s.doc = doc;
  s.name = doc.contains("name") ? as_string(doc["name"], "name") : fallback_name;
  s.task = as_string(require(doc, "task", ""), "task");
  const auto& tasks = known_tasks();
  if (std::find(tasks.begin(), tasks.end(), s.task) == tasks.end()) throw ConfigError("task", "unknown task '" + s.task + "'");

  const json& alg = require(doc, "algebra", "");
  const json& blocks = as_array(require(alg, "blocks", "algebra"), "algebra.blocks");
  if (blocks.empty()) throw ConfigError("algebra.blocks", "needs at least one block");
  for (std::size_t k = 0; k < blocks.size(); ++k) as_int(blocks[k], item("algebra.blocks", k), 1, 8);

  if (doc.contains("expectation")) {
    const std::string kind = as_string(require(doc["expectation"], "kind", "expectation"), "expectation.kind");
    if (!kExpectationKinds.count(kind)) throw ConfigError("expectation.kind", "unknown expectation kind '" + kind + "'");
  } else if (s.task == "index" || s.task == "theorem8" || s.task == "theorem9") {
    throw ConfigError("expectation", "required field missing");
  }

  const bool scalar_task = s.task == "verify-fisher" || s.task == "roundtrip";
  s.maxdeg = scalar_task ? 8 : 6;
  if (doc.contains("maxdeg")) s.maxdeg = as_int(doc["maxdeg"], "maxdeg", 1, 12);
  if (doc.contains("entry_maxdeg")) s.entry_maxdeg = as_int(doc["entry_maxdeg"], "entry_maxdeg", 1, 12);
  if (doc.contains("tolerance")) {
    s.tol = as_double(doc["tolerance"], "tolerance");
    if (!(s.tol > 0.0)) throw ConfigError("tolerance", "must be positive");
  }
  if (doc.contains("budget")) s.budget = as_int(doc["budget"], "budget", 1, 1 << 24);
  if (doc.contains("matrix_budget")) s.matrix_budget = as_int(doc["matrix_budget"], "matrix_budget", 1, 1 << 24);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
      throw ConfigError("seed", "expected a non-negative integer");
    s.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("jobs")) s.jobs = as_int(doc["jobs"], "jobs", 1, 256);

  if (s.task == "verify-fisher") {
    if (as_array(require(doc, "candidates", ""), "candidates").empty()) throw ConfigError("candidates", "must not be empty");
    as_array(require(doc, "variables", ""), "variables");
  }
  if (s.task == "roundtrip" || s.task == "mc") as_array(require(doc, "variables", ""), "variables");
  if (s.task == "mc") as_array(require(require(doc, "mc", ""), "words", "mc"), "mc.words");
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  std::string stem = path;
  if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
  if (auto p = stem.rfind(".json"); p != std::string::npos) stem = stem.substr(0, p);
  return parse_scenario(doc, stem);
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.maxdeg) {
    if (*o.maxdeg < 1) throw ConfigError("--maxdeg", "must be at least 1");
    s.maxdeg = *o.maxdeg;
    s.entry_maxdeg = std::max(s.entry_maxdeg, s.maxdeg);
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ConfigError("--tol", "must be positive");
    s.tol = *o.tol;
  }
  if (o.seed) s.seed = *o.seed;
  if (o.jobs) {
    if (*o.jobs < 1) throw ConfigError("--jobs", "must be at least 1");
    s.jobs = *o.jobs;
  }
  if (o.mc_N) s.mc_N = *o.mc_N;
  if (o.mc_samples) s.mc_samples = *o.mc_samples;
}

Element parse_element(const json& v, const AlgebraPtr& A, const std::string& path) {
  if (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number())) return A->one() * as_complex(v, path);
  if (v.is_object() && v.contains("blocks")) {
    const json& bl = as_array(v["blocks"], child(path, "blocks"));
    if (static_cast<int>(bl.size()) != A->num_blocks())
      throw ConfigError(child(path, "blocks"), "expected " + std::to_string(A->num_blocks()) + " blocks");
    std::vector<Eigen::MatrixXcd> mats;
    for (int k = 0; k < A->num_blocks(); ++k)
      mats.push_back(as_matrix(bl[k], item(child(path, "blocks"), k), A->block_dim(k), A->block_dim(k)));
    return A->from_blocks(mats);
  }
  if (v.is_object() && v.contains("basis")) {
    const int i = as_int(v["basis"], child(path, "basis"), 0, A->dim() - 1);
    return A->basis(i);
  }
  throw ConfigError(path, "expected a scalar, {\"blocks\": [...]} or {\"basis\": i}");
}

LinearMap resolve_map(const json& ref, const Context& ctx, const std::string& path) {
  double scale = 1.0;
  std::string name;
  if (ref.is_string()) {
    name = ref.get<std::string>();
  } else if (ref.is_object()) {
    name = as_string(require(ref, "map", path), child(path, "map"));
    if (ref.contains("scale")) scale = as_double(ref["scale"], child(path, "scale"));
  } else {
    throw ConfigError(path, "expected a map name or {\"map\": name, \"scale\": s}");
  }
  LinearMap m;
  if (name == "E") {
    if (!ctx.E) throw ConfigError(path, "map 'E' needs an expectation");
    m = ctx.E->map();
  } else if (name == "id") {
    m = LinearMap::identity(ctx.B);
  } else if (name == "zero") {
    m = LinearMap::zero(ctx.B, ctx.B);
  } else {
    throw ConfigError(path, "unknown map '" + name + "' (use E, id or zero)");
  }
  if (scale != 1.0) {
    LinearMap scaled = m * cplx(scale);
    scaled.set_label(std::to_string(scale) + " " + m.label());
    return scaled;
  }
  return m;
}

namespace {

CondExpectation build_expectation(const json& e, const AlgebraPtr& B) {
  const std::string kind = e.at("kind").get<std::string>();
  try {
    if (kind == "identity") return CondExpectation::identity(B);
    if (kind == "trace") return normalized_trace_expectation(B);
    if (kind == "average") return coordinate_average_expectation(B);
    if (kind == "diagonal") return diagonal_pinching(B);
    if (kind == "pinching") {
      const json& groups = as_array(require(e, "groups", "expectation"), "expectation.groups");
      std::vector<PinchGroup> parts;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::string gp = item("expectation.groups", g);
        PinchGroup pg;
        if (groups[g].contains("keep_block")) {
          pg.keep_block = true;
          pg.block = as_int(groups[g]["keep_block"], child(gp, "keep_block"), 0, 64);
        } else {
          const json& pos = as_array(require(groups[g], "positions", gp), child(gp, "positions"));
          for (std::size_t p = 0; p < pos.size(); ++p) {
            const std::string pp = item(child(gp, "positions"), p);
            if (!pos[p].is_array() || pos[p].size() != 2) throw ConfigError(pp, "expected [block, index]");
            pg.positions.push_back({as_int(pos[p][0], pp, 0, 64), as_int(pos[p][1], pp, 0, 64)});
          }
          if (groups[g].contains("weights")) {
            const json& w = as_array(groups[g]["weights"], child(gp, "weights"));
            for (std::size_t p = 0; p < w.size(); ++p) pg.weights.push_back(as_double(w[p], item(child(gp, "weights"), p)));
          } else {
            pg.weights.assign(pg.positions.size(), 1.0 / std::max<std::size_t>(1, pg.positions.size()));
          }
        }
        parts.push_back(std::move(pg));
      }
      return make_pinching_expectation(B, parts, "pinching");
    }
    // explicit matrix on the canonical basis
    const Eigen::MatrixXcd m = as_matrix(require(e, "matrix", "expectation"), "expectation.matrix", B->dim(), B->dim());
    return CondExpectation(LinearMap(B, B, m, "E"), std::nullopt, true);
  } catch (const AlgebraError& err) {
    throw ConfigError("expectation", err.what());
  }
}

}  // namespace

Context build_context(const Scenario& s) {
  const json& doc = s.doc;
  Context ctx;
  std::vector<int> blocks;
  for (const auto& b : doc["algebra"]["blocks"]) blocks.push_back(b.get<int>());
  ctx.B = make_algebra(blocks, algebra_label(blocks));
  if (doc.contains("expectation")) ctx.E = build_expectation(doc["expectation"], ctx.B);
  ctx.spec = DistributionSpec(ctx.B);
  ctx.symbols.algebra = ctx.B;
  for (int i = 0; i < ctx.B->dim(); ++i) ctx.symbols.constants["e" + std::to_string(i)] = ctx.B->basis(i);
  ctx.symbols.constants["one"] = ctx.B->one();
  if (doc.contains("constants")) {
    if (!doc["constants"].is_object()) throw ConfigError("constants", "expected an object");
    for (const auto& [name, v] : doc["constants"].items())
      ctx.symbols.constants[name] = parse_element(v, ctx.B, child("constants", name));
  }

  std::map<std::string, int> families;
  if (doc.contains("variables")) {
    const json& vars = as_array(doc["variables"], "variables");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::string vp = item("variables", i);
      const std::string name = as_string(require(vars[i], "name", vp), child(vp, "name"));
      const std::string kind = as_string(require(vars[i], "kind", vp), child(vp, "kind"));
      if (kind != "semicircular" && kind != "circular")
        throw ConfigError(child(vp, "kind"), "expected 'semicircular' or 'circular'");
      if (ctx.symbols.constants.count(name)) throw ConfigError(child(vp, "name"), "name already used by a constant");
      int family = -1;
      if (vars[i].contains("family")) {
        const json& f = vars[i]["family"];
        const std::string label = f.is_string() ? f.get<std::string>() : f.dump();
        if (auto it = families.find(label); it != families.end()) family = it->second;
      }
      int id;
      try {
        id = ctx.spec.add_variable(name, kind == "semicircular" ? VariableKind::Semicircular : VariableKind::Circular,
                                   family);
      } catch (const AlgebraError& e) {
        throw ConfigError(child(vp, "name"), e.what());
      }
      if (vars[i].contains("family")) {
        const json& f = vars[i]["family"];
        families[f.is_string() ? f.get<std::string>() : f.dump()] = ctx.spec.family_of(id);
      }
      const json cov = vars[i].contains("covariance") ? vars[i]["covariance"] : json(ctx.E ? "E" : "id");
      const LinearMap m = resolve_map(cov, ctx, child(vp, "covariance"));
      if (kind == "semicircular") {
        ctx.spec.set_covariance({id, false}, {id, false}, m);
      } else {
        ctx.spec.set_covariance({id, false}, {id, true}, m);
        ctx.spec.set_covariance({id, true}, {id, false}, m);
      }
      ctx.symbols.polys[name] = ctx.spec.poly({id, false});
    }
  }
  if (doc.contains("covariances")) {
    const json& covs = as_array(doc["covariances"], "covariances");
    for (std::size_t i = 0; i < covs.size(); ++i) {
      const std::string cp = item("covariances", i);
      auto resolve = [&](const char* key) {
        const std::string n = as_string(require(covs[i], key, cp), child(cp, key));
        const auto g = ctx.spec.find(n);
        if (!g) throw ConfigError(child(cp, key), "unknown variable '" + n + "'");
        return *g;
      };
      const Generator a = resolve("left"), b = resolve("right");
      ctx.spec.set_covariance(a, b, resolve_map(require(covs[i], "map", cp), ctx, child(cp, "map")));
    }
  }
  return ctx;
}

}  // namespace ofp::cli
