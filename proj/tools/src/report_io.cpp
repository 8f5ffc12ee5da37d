#include "ofp/cli/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ofp::cli {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Eigen::MatrixXcd matrix_from(const json& j) {
  const int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cplx(j.at("re").at(r).at(c).get<double>(), j.at("im").at(r).at(c).get<double>());
  return m;
}

}  // namespace

json to_json(const RunReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"residual", number_or_null(c.residual)},
                      {"tol", c.tol},
                      {"pass", c.pass},
                      {"degree", c.degree},
                      {"witness", c.witness}});
  json values = json::array();
  for (const auto& v : r.values) {
    json blocks = json::array();
    for (const auto& b : v.blocks) blocks.push_back(matrix_json(b));
    values.push_back({{"name", v.name}, {"blocks", blocks}});
  }
  return {{"schema_version", r.schema_version},
          {"scenario", r.scenario},
          {"task", r.task},
          {"passed", r.passed},
          {"exit_code", r.exit_code},
          {"error", r.error},
          {"checks", checks},
          {"values", values},
          {"notes", r.notes},
          {"seconds", r.seconds}};
}

RunReport report_from_json(const json& j) {
  RunReport r;
  try {
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw std::runtime_error("unsupported schema_version " + std::to_string(r.schema_version));
    r.scenario = j.at("scenario").get<std::string>();
    r.task = j.at("task").get<std::string>();
    r.passed = j.at("passed").get<bool>();
    r.exit_code = j.at("exit_code").get<int>();
    r.error = j.at("error").get<std::string>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back({c.at("name").get<std::string>(), number_from(c.at("residual")), c.at("tol").get<double>(),
                          c.at("pass").get<bool>(), c.at("degree").get<int>(), c.at("witness").get<std::string>()});
    for (const auto& v : j.at("values")) {
      BlockValue bv{v.at("name").get<std::string>(), {}};
      for (const auto& b : v.at("blocks")) bv.blocks.push_back(matrix_from(b));
      r.values.push_back(std::move(bv));
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.seconds = j.at("seconds").get<double>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("report schema violation: ") + e.what());
  }
  return r;
}

namespace {

std::string format_entry(cplx z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  os << re;
  if (im != 0.0) os << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  return os.str();
}

}  // namespace

void emit_text(const RunReport& r, std::ostream& os) {
  os << "scenario: " << r.scenario << "\n";
  os << "task:     " << r.task << "\n";
  if (!r.error.empty()) os << "error:    " << r.error << "\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    os << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << std::right
       << "  residual " << std::scientific << std::setprecision(3) << c.residual << "  tol " << c.tol
       << std::defaultfloat;
    if (!c.pass && c.degree >= 0) os << "  degree " << c.degree;
    if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
    os << "\n";
  }
  for (const auto& v : r.values) {
    os << v.name << ":\n";
    for (std::size_t b = 0; b < v.blocks.size(); ++b) {
      const auto& m = v.blocks[b];
      std::vector<std::string> cells;
      std::size_t w = 0;
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
          cells.push_back(format_entry(m(i, j)));
          w = std::max(w, cells.back().size());
        }
      if (v.blocks.size() > 1) os << "  block " << b << ":\n";
      for (int i = 0; i < m.rows(); ++i) {
        os << "    [";
        for (int j = 0; j < m.cols(); ++j) os << " " << std::setw(static_cast<int>(w)) << cells[i * m.cols() + j];
        os << " ]\n";
      }
    }
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << "time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n" << std::defaultfloat;
  os << "RESULT: " << (r.exit_code == kExitConfig ? "CONFIG ERROR" : (r.passed ? "PASS" : "FAIL")) << "\n";
}

void emit_structured(const RunReport& r, std::ostream& os) { os << to_json(r).dump(2) << "\n"; }

}  // namespace ofp::cli
