#pragma once

#include "ofp/algebra.hpp"

#include <string>
#include <vector>

namespace ofp {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = true;
  int degree = -1;          // first violated degree, -1 when not applicable
  std::string witness;      // human-readable witness on failure
};

struct BlockValue {
  std::string name;
  std::vector<Eigen::MatrixXcd> blocks;
};

struct VerificationReport {
  std::string title;
  std::vector<CheckResult> checks;
  std::vector<BlockValue> values;
  std::vector<std::string> notes;

  bool passed() const;
  // Records residual <= tol as a check and returns whether it passed.
  bool add(const std::string& name, double residual, double tol, std::string witness = {}, int degree = -1);
  void add_flag(const std::string& name, bool ok, std::string witness = {});
  void add_value(const std::string& name, const Element& value);
  void merge(const VerificationReport& other, const std::string& prefix);
  const CheckResult* find(const std::string& name) const;
  const BlockValue* value(const std::string& name) const;
};

}  // namespace ofp
