#include "ofp/frame_theorems.hpp"
#include "ofp/frames.hpp"
#include "ofp/theorem5.hpp"

#include "doctest.h"

using namespace ofp;

namespace {

const CheckOptions kEntry{4, 1e-9, 256, 1};
const CheckOptions kMatrix{4, 1e-9, 64, 1};

std::vector<CondExpectation> three_expectations() {
  return {CondExpectation::identity(make_algebra({1}, "C")), coordinate_average_expectation(make_algebra({1, 1}, "C+C")),
          normalized_trace_expectation(make_algebra({2}, "M2"))};
}

}  // namespace

TEST_CASE("matrix of semicircular/circular entries is semicircular with covariance eta+") {
  for (const auto& E : three_expectations()) {
    const VerificationReport r = lemma7_check(E.domain(), E.map(), {5, 1e-9, 256, 1});
    INFO(E.domain()->label());
    CHECK(r.passed());
  }
}

TEST_CASE("circular over B: Phi* wrt E is 2, wrt id is 2 Index(E)") {
  const double index[] = {1, 2, 4};
  int k = 0;
  for (const auto& E : three_expectations()) {
    const AlgebraPtr& B = E.domain();
    INFO(B->label());
    const FrameTheoremResult t8 = theorem8_check(E, kEntry, kMatrix);
    CHECK(t8.report.passed());
    CHECK(distance(t8.value, B->one() * cplx(2.0)) < 1e-9);
    const FrameTheoremResult t9 = theorem9_check(E, kEntry, kMatrix);
    CHECK(t9.report.passed());
    CHECK(distance(t9.value, B->one() * cplx(2.0 * index[k])) < 1e-9);
    CHECK(distance(t9.value, compute_index(E).value * cplx(2.0)) < 1e-9);
    ++k;
  }
}

TEST_CASE("2x2 formula matches the assembled system, including cross terms") {
  const AlgebraPtr C = make_algebra({1});
  const LinearMap id = LinearMap::identity(C);
  Eigen::Matrix4d rho = Eigen::Matrix4d::Identity();
  rho(0, 1) = rho(1, 0) = 0.3;
  rho(2, 3) = rho(3, 2) = -0.2;
  rho(0, 3) = rho(3, 0) = 0.1;
  const Theorem5Result r = theorem5_formula(correlated_circular_entries(C, id, rho), kEntry, kMatrix);
  CHECK(r.report.passed());
  CHECK(std::abs(r.formula[1].coords()(0)) > 1e-3);  // A12 cross term is exercised
  CHECK(distance(r.formula_matrix, r.assembled) < 1e-9);
}

TEST_CASE("2x2 formula over C+C for the semicircular/circular entries") {
  const CondExpectation E = coordinate_average_expectation(make_algebra({1, 1}));
  const Theorem5Result r = theorem5_formula(lemma7_entries(E.domain(), E.map(), E.map()), kEntry, kMatrix);
  CHECK(r.report.passed());
  CHECK(distance(r.formula_matrix, r.assembled) < 1e-9);
}

TEST_CASE("restricted entry systems: diagonal only, and the empty system") {
  const AlgebraPtr C = make_algebra({1});
  const LinearMap id = LinearMap::identity(C);
  const EntrySystem full = correlated_circular_entries(C, id, Eigen::Matrix4d::Identity());
  const Theorem5Result diag = theorem5_formula(restrict_entries(full, {0, 3}), kEntry, kMatrix);
  CHECK(diag.report.passed());
  CHECK(diag.formula[1].is_zero(1e-12));
  const Theorem5Result none = theorem5_formula(restrict_entries(full, {}), kEntry, kMatrix);
  CHECK(none.report.passed());
  CHECK(none.assembled.is_zero(1e-12));
}

TEST_CASE("trace-compressed 2x2 Fisher information of four free circulars is diag(1, 1)") {
  const AlgebraPtr C = make_algebra({1});
  const EntrySystem e = correlated_circular_entries(C, LinearMap::identity(C), Eigen::Matrix4d::Identity());
  const VerificationReport r = corollary6_check(e, kEntry, kMatrix);
  CHECK(r.passed());
  const BlockValue* v = r.value("phi*(A, A*)");
  REQUIRE(v != nullptr);
  CHECK((v->blocks[0] - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-9);
  CHECK_THROWS_AS(corollary6_check(lemma7_entries(C, LinearMap::identity(C)), kEntry, kMatrix), AlgebraError);
}
