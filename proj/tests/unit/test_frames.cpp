#include "ofp/frames.hpp"

#include "doctest.h"

using namespace ofp;

namespace {

Element scalar(const AlgebraPtr& A, double v) { return A->one() * cplx(v); }

}  // namespace

TEST_CASE("index values: identity 1, average on C+C 2, trace on M2 4, trace on M3 9") {
  const AlgebraPtr C = make_algebra({1});
  const AlgebraPtr C2 = make_algebra({1, 1});
  const AlgebraPtr M2 = make_algebra({2});
  const AlgebraPtr M3 = make_algebra({3});
  CHECK(distance(compute_index(CondExpectation::identity(C)).value, scalar(C, 1)) < 1e-9);
  CHECK(distance(compute_index(CondExpectation::identity(M2)).value, scalar(M2, 1)) < 1e-9);
  CHECK(distance(compute_index(coordinate_average_expectation(C2)).value, scalar(C2, 2)) < 1e-9);
  CHECK(distance(compute_index(normalized_trace_expectation(M2)).value, scalar(M2, 4)) < 1e-9);
  CHECK(distance(compute_index(normalized_trace_expectation(M3)).value, scalar(M3, 9)) < 1e-9);
}

TEST_CASE("index of a weighted state on C+C is central but not scalar") {
  const AlgebraPtr C2 = make_algebra({1, 1});
  PinchGroup g;
  g.positions = {{0, 0}, {1, 0}};
  g.weights = {0.25, 0.75};
  const IndexValue iv = compute_index(make_pinching_expectation(C2, {g}, "weighted"));
  CHECK(iv.report.passed());
  CHECK(std::abs(iv.value.coords()(0) - 4.0) < 1e-9);
  CHECK(std::abs(iv.value.coords()(1) - 4.0 / 3.0) < 1e-9);
}

TEST_CASE("tight frames reconstruct every basis element") {
  for (const auto& dims : std::vector<std::vector<int>>{{1, 1}, {2}, {1, 2}}) {
    const AlgebraPtr A = make_algebra(dims);
    for (const CondExpectation& E : {normalized_trace_expectation(A), diagonal_pinching(A), CondExpectation::identity(A)}) {
      const FrameResult fr = compute_tight_frame(E);
      CHECK(fr.report.passed());
      CHECK(frame_reconstruction_residual(fr.frame) < 1e-9);
      CHECK(fr.min_eigenvalue >= kFrameEigenFloor);
    }
  }
}

TEST_CASE("index is independent of the spanning set and central") {
  const AlgebraPtr A = make_algebra({1, 2});
  const CondExpectation E = normalized_trace_expectation(A);
  const IndexValue a = compute_index(E, 1), b = compute_index(E, 99);
  CHECK(a.report.passed());
  CHECK(distance(a.value, b.value) < 1e-8);
  for (int i = 0; i < A->dim(); ++i) CHECK(commutator(a.value, A->basis(i)).max_abs() < 1e-9);
  // Frame from a redundant spanning set gives the same index.
  std::vector<Element> span;
  for (int i = 0; i < A->dim(); ++i) span.push_back(A->basis(i));
  span.push_back(A->one());
  const FrameResult fr = compute_tight_frame(E, span);
  Element sum = A->zero();
  for (const auto& f : fr.frame.vectors) sum += f * f.adjoint();
  CHECK(distance(sum, a.value) < 1e-8);
}

TEST_CASE("non-faithful expectation is rejected") {
  const AlgebraPtr C2 = make_algebra({1, 1});
  PinchGroup g;
  g.positions = {{0, 0}, {1, 0}};
  g.weights = {1.0, 0.0};
  CHECK_THROWS_AS(compute_tight_frame(make_pinching_expectation(C2, {g}, "degenerate")), AlgebraError);
}
