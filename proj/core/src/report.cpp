#include "ofp/report.hpp"

#include <cmath>

namespace ofp {

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool VerificationReport::add(const std::string& name, double residual, double tol, std::string witness, int degree) {
  const bool ok = std::isfinite(residual) && residual <= tol;
  checks.push_back({name, residual, tol, ok, degree, ok ? std::string() : std::move(witness)});
  return ok;
}

void VerificationReport::add_flag(const std::string& name, bool ok, std::string witness) {
  checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok, -1, ok ? std::string() : std::move(witness)});
}

void VerificationReport::add_value(const std::string& name, const Element& v) {
  values.push_back({name, v.blocks()});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (auto v : other.values) {
    v.name = prefix + v.name;
    values.push_back(std::move(v));
  }
  for (const auto& n : other.notes) notes.push_back(prefix + n);
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const BlockValue* VerificationReport::value(const std::string& name) const {
  for (const auto& v : values)
    if (v.name == name) return &v;
  return nullptr;
}

}  // namespace ofp
