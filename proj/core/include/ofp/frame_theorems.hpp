#pragma once

#include "ofp/cumulant_checks.hpp"
#include "ofp/expectation.hpp"
#include "ofp/frames.hpp"
#include "ofp/report.hpp"

namespace ofp {

struct FrameTheoremResult {
  Element value;         // Phi*_B(c, c^*) extracted from the matrix system
  Element matrix_value;  // Phi* of [[s1, c], [c^*, s2]] at the M_2(B) level
  VerificationReport report;
};

// Circular c over B with covariance E: the frame-built matrix candidate wrt E+ is verified, the
// entries E(y y^*), E(x x^*) are read off against Phi*(s1), Phi*(s2), and Phi*_B(c, c^*: B, E) = 2.
FrameTheoremResult theorem8_check(const CondExpectation& E, const CheckOptions& entry_opt,
                                  const CheckOptions& matrix_opt);

// Same model wrt the identity on B: Phi*_B(c, c^*: B, id) = 2 Index(E), together with the
// single-variable identity Phi*_B(s: B, id) = Index(E).
FrameTheoremResult theorem9_check(const CondExpectation& E, const CheckOptions& entry_opt,
                                  const CheckOptions& matrix_opt);

// Semicircularity of [[s1, c], [c^*, s2]] with covariance eta+ for entries of covariance eta.
VerificationReport lemma7_check(const AlgebraPtr& B, const LinearMap& eta, const CheckOptions& opt);

}  // namespace ofp
