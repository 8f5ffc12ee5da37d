#include "ofp/algebra.hpp"
#include "ofp/expectation.hpp"

#include "doctest.h"

using namespace ofp;

TEST_CASE("matrix units multiply as e_ij e_kl = delta_jk e_il") {
  const AlgebraPtr A = make_algebra({1, 2}, "C+M2");
  CHECK(A->dim() == 5);
  const int e12 = A->index_of(1, 0, 1), e21 = A->index_of(1, 1, 0), e11 = A->index_of(1, 0, 0);
  CHECK(A->product_index(e12, e21) == e11);
  CHECK(A->product_index(e21, e21) == -1);
  CHECK(A->product_index(0, e11) == -1);
  CHECK(distance(A->basis(e12).adjoint(), A->basis(e21)) == 0.0);
  const Element x = A->random(3);
  CHECK(distance(A->one() * x, x) < 1e-15);
  CHECK(distance(x * A->one(), x) < 1e-15);
}

TEST_CASE("2x2 amplification: lift and extract entries") {
  const AlgebraPtr B = make_algebra({1, 2});
  const AlgebraPtr M = amplify2(B);
  CHECK(M->block_dims() == std::vector<int>{2, 4});
  const Element b[4] = {B->random(1), B->random(2), B->random(3), B->random(4)};
  const Element m = join2(M, b[0], b[1], b[2], b[3]);
  for (int k = 0; k < 4; ++k) CHECK(distance(entry_of(B, m, k / 2, k % 2), b[k]) < 1e-15);
  // [b]_{rs} [b']_{st} = [b b']_{rt}
  const Element p = lift_entry(M, b[0], 0, 1) * lift_entry(M, b[1], 1, 0);
  CHECK(distance(p, lift_entry(M, b[0] * b[1], 0, 0)) < 1e-14);
  CHECK(distance(lift_diag(M, B->one()), M->one()) == 0.0);
}

TEST_CASE("normalized trace, coordinate average and diagonal pinching") {
  const AlgebraPtr M2 = make_algebra({2}, "M2");
  const CondExpectation tr = normalized_trace_expectation(M2);
  CHECK(distance(tr(M2->basis(0)), M2->one() * cplx(0.5)) < 1e-15);
  CHECK(tr(M2->basis(1)).is_zero(1e-15));
  CHECK(verify_expectation(tr).passed());

  const AlgebraPtr C2 = make_algebra({1, 1}, "C+C");
  const CondExpectation avg = coordinate_average_expectation(C2);
  CHECK(distance(avg(C2->basis(1)), C2->one() * cplx(0.5)) < 1e-15);
  CHECK(verify_expectation(avg).passed());

  const CondExpectation diag = diagonal_pinching(M2);
  CHECK(distance(diag(M2->basis(0)), M2->basis(0)) == 0.0);
  CHECK(diag(M2->basis(2)).is_zero());
  CHECK(verify_expectation(diag).passed());

  CHECK_THROWS_AS(coordinate_average_expectation(M2), AlgebraError);
}

TEST_CASE("expectation invariants reject a map that is not idempotent") {
  const AlgebraPtr C2 = make_algebra({1, 1});
  Eigen::MatrixXcd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.0;
  CHECK_THROWS_AS(CondExpectation(LinearMap(C2, C2, m), std::nullopt, true), AlgebraError);
  CHECK_NOTHROW(CondExpectation::general(LinearMap(C2, C2, m)));
}

TEST_CASE("weighted pinching onto scalars is a faithful expectation") {
  const AlgebraPtr C2 = make_algebra({1, 1});
  PinchGroup g;
  g.positions = {{0, 0}, {1, 0}};
  g.weights = {0.25, 0.75};
  const CondExpectation E = make_pinching_expectation(C2, {g}, "weighted");
  CHECK(distance(E(C2->basis(0)), C2->one() * cplx(0.25)) < 1e-15);
  CHECK(verify_expectation(E).passed());
}
