#pragma once

#include "ofp/cumulant_checks.hpp"
#include "ofp/distribution.hpp"
#include "ofp/expectation.hpp"
#include "ofp/fisher.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>

namespace ofp {

// Formal id of the matrix variable A (and A^*) at the M_2 level.
inline constexpr int kMatrixVariableId = 1000;

// Entries a_ij of a 2x2 matrix A over a spec on C, with conjugates x_ij of a_ij (wrt eta_ij) and
// y_ij of a_ij^* (wrt xi_ij). Slots are ordered 11, 12, 21, 22; absent entries are zero. In
// self-adjoint mode A = A^* and only the x_ij are used.
struct EntrySystem {
  DistributionSpec spec;
  std::array<std::optional<Generator>, 4> a;
  std::array<NCPoly, 4> x;
  std::array<NCPoly, 4> y;
  std::array<LinearMap, 4> eta;
  std::array<LinearMap, 4> xi;
  bool self_adjoint = false;
};

struct MatrixSystem {
  DistributionSpec spec;  // amplified to M_2(C)
  NCPoly A;
  NCPoly X1;  // [[x11, x21], [x12, x22]]
  NCPoly X2;  // [[y11, y12], [y21, y22]]
  LinearMap eta;
  LinearMap xi;
  std::vector<VariableRealization> variables;
  std::vector<ConjugateCandidate> candidates;
};

// Entry-level variables and candidates of the system.
std::vector<VariableRealization> entry_variables(const EntrySystem& e);
std::vector<ConjugateCandidate> entry_candidates(const EntrySystem& e);

MatrixSystem theorem5_assemble(const EntrySystem& e);

struct Theorem5Result {
  std::array<Element, 4> formula;  // A11, A12, A21, A22
  Element formula_matrix;
  Element assembled;  // (E_B (x) I_2)(X1 X1^* + X2 X2^*)
  VerificationReport report;
};

// Verifies the entry system, assembles the matrix system, verifies it, and compares the entry
// formula against the assembled-matrix value.
Theorem5Result theorem5_formula(const EntrySystem& e, const CheckOptions& entry_opt, const CheckOptions& matrix_opt);

// Halved matrix candidates wrt the identity under E_B (x) tr_2 compressed to the diagonal, and the
// 1/8 formula. Requires entry conjugates wrt the identity on C.
VerificationReport corollary6_check(const EntrySystem& e, const CheckOptions& entry_opt,
                                    const CheckOptions& matrix_opt);

// Builders.
// [[s1, c], [c^*, s2]] with s1, s2 semicircular and c circular, covariance eta, separate families;
// conjugates s1, c^*, c, s2 wrt eta (self-adjoint mode).
EntrySystem lemma7_entries(const AlgebraPtr& C, const LinearMap& eta, std::optional<LinearMap> outer = std::nullopt);
// Four circular entries in one family with cov(a_r^*, a_q) = cov(a_q, a_r^*) = rho_rq eta; conjugates
// x_p = sum_r (rho^-1)_pr a_r^*, y_p = sum_r ((rho^T)^-1)_pr a_r, all wrt eta. rho = I gives free entries.
EntrySystem correlated_circular_entries(const AlgebraPtr& C, const LinearMap& eta, const Eigen::Matrix4d& rho,
                                        std::optional<LinearMap> outer = std::nullopt);
// Keeps only the listed slots (0..3); dropped entries become zero with zero covariance. Kept
// candidates are not recomputed, so this is meant for uncorrelated entries.
EntrySystem restrict_entries(EntrySystem e, const std::vector<int>& keep);

}  // namespace ofp
