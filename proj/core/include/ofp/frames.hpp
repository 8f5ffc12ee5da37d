#pragma once

#include "ofp/algebra.hpp"
#include "ofp/expectation.hpp"
#include "ofp/report.hpp"

#include <cstdint>
#include <vector>

namespace ofp {

// Normalized tight frame {f_i} of B as a right Hilbert D-module with <x, y> = E(x^* y):
// x = sum_i f_i E(f_i^* x).
struct ModuleFrame {
  CondExpectation inclusion;
  std::vector<Element> vectors;
};

struct FrameResult {
  ModuleFrame frame;
  VerificationReport report;
  double min_eigenvalue = 0.0;  // of the frame operator
};

struct IndexValue {
  Element value;
  ModuleFrame frame;
  VerificationReport report;
};

inline constexpr double kFrameEigenFloor = 1e-8;

Element module_inner(const CondExpectation& E, const Element& x, const Element& y);

// f_k = S^{-1/2} g_k with S(x) = sum_k g_k E(g_k^* x); the canonical basis of B when `spanning`
// is empty. Throws AlgebraError when S is numerically singular or not right D-linear.
FrameResult compute_tight_frame(const CondExpectation& E, const std::vector<Element>& spanning = {},
                                double tol = kExactTol);

// max over basis x of |sum_i f_i E(f_i^* x) - x|.
double frame_reconstruction_residual(const ModuleFrame& frame);

// Index(E) = sum f_i f_i^*, with centrality and frame-independence (against a random invertible
// recombination of the spanning set, seeded) checks.
IndexValue compute_index(const CondExpectation& E, std::uint64_t seed = 1, double tol = kExactTol);

}  // namespace ofp
