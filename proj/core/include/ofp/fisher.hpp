#pragma once

#include "ofp/cumulant_checks.hpp"
#include "ofp/distribution.hpp"
#include "ofp/frames.hpp"
#include "ofp/ncpoly.hpp"
#include "ofp/report.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ofp {

// A variable X_i of the system: a formal identity plus its realization as a polynomial in the
// spec's generators (a generator itself, or e.g. a lifted matrix of generators).
struct VariableRealization {
  Generator variable;
  NCPoly poly;
  std::string name;
};

// Candidate xi_i for the conjugate variable of `variable` with respect to the map eta_i on C.
struct ConjugateCandidate {
  Generator variable;
  NCPoly candidate;
  LinearMap wrt;
  std::string name;
};

struct ConjugateReport {
  VerificationReport report;
  bool moment_pass = true;          // moment identity at all degrees <= maxdeg
  bool cumulant_pass = true;        // cumulant conditions at all degrees <= maxdeg
  int moment_first_violation = -1;  // number of variables in the first failing word, -1 when none
  int cumulant_first_violation = -1;
  bool agree = true;
  int verified_to_degree = -1;
};

struct FisherResult {
  Element value;
  int verified_to_degree = -1;
  VerificationReport report;
};

class VerificationFailure : public std::runtime_error {
 public:
  VerificationFailure(const std::string& what, VerificationReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

// Every generator of the spec as a variable realized by itself.
std::vector<VariableRealization> spec_variables(const DistributionSpec& spec);
std::vector<VariableRealization> spec_variables(const DistributionSpec& spec, const std::vector<Generator>& gens);

// Checks the defining moment identity
//   E_B(xi_i c_0 V_1 c_1 ... V_m c_m) = sum_j [V_j = X_i] E_B(eta_i(E_C(c_0 V_1 ... c_{j-1}))) E_B(c_j ... c_m)
// and, independently, the cumulant conditions k1(xi_i c) = 0, k2(xi_i (x) c a) = [a = X_i] E_B(eta_i(c)),
// k_{m+1}(xi_i (x) c_1 a_1 ... c_m a_m) = 0 with a in variables + {1}, for m <= maxdeg over basis
// coefficients. Throws AlgebraError when a candidate references an unknown generator or variable.
ConjugateReport verify_conjugate_system(const DistributionSpec& spec, const std::vector<VariableRealization>& variables,
                                        const std::vector<ConjugateCandidate>& candidates, const CheckOptions& opt);

// E_B(sum_i xi_i xi_i^*) after verification; throws VerificationFailure when the system fails.
FisherResult fisher_information(const DistributionSpec& spec, const std::vector<VariableRealization>& variables,
                                const std::vector<ConjugateCandidate>& candidates, const CheckOptions& opt);

// Value of E_B(sum_i xi_i xi_i^*) without verification.
Element fisher_value(const DistributionSpec& spec, const std::vector<ConjugateCandidate>& candidates);

// xi = sum_i f_i X f_i^* with respect to the identity on C = B, for X semicircular with covariance
// the frame's expectation. Throws AlgebraError when the frame fails reconstruction.
ConjugateCandidate conjugate_semicircular_wrt_id(const DistributionSpec& spec, Generator X, const ModuleFrame& frame,
                                                 double tol = kExactTol);

// Self-adjointness and positivity checks on a Phi* value.
void add_positivity_checks(VerificationReport& rep, const std::string& prefix, const Element& v, double tol);

}  // namespace ofp
