#include "ofp/fisher.hpp"
#include "ofp/frames.hpp"
#include "ofp/moments.hpp"

#include "doctest.h"

using namespace ofp;

namespace {

struct Scalar {
  AlgebraPtr C = make_algebra({1}, "C");
  DistributionSpec spec{C};
  Generator X;
  Scalar() : X{spec.add_semicircular("X", LinearMap::identity(C)), false} {}
  std::vector<VariableRealization> vars() const { return spec_variables(spec, {X}); }
  ConjugateCandidate cand(const NCPoly& p) const { return {X, p, LinearMap::identity(C), "xi"}; }
};

}  // namespace

TEST_CASE("standard semicircular is its own conjugate, Phi* = 1") {
  Scalar s;
  const CheckOptions opt{8, 1e-9, 1024, 1};
  const ConjugateReport r = verify_conjugate_system(s.spec, s.vars(), {s.cand(s.spec.poly(s.X))}, opt);
  CHECK(r.report.passed());
  CHECK(r.agree);
  CHECK(r.verified_to_degree == 8);
  const FisherResult f = fisher_information(s.spec, s.vars(), {s.cand(s.spec.poly(s.X))}, opt);
  CHECK(std::abs(f.value.coords()(0) - 1.0) < 1e-12);
}

TEST_CASE("definition and cumulant characterization agree on wrong candidates") {
  Scalar s;
  const CheckOptions opt{6, 1e-9, 1024, 1};
  const NCPoly X = s.spec.poly(s.X);
  const std::vector<std::pair<NCPoly, int>> wrong{
      {X * cplx(2.0), 1},  // wrong scale: degree 1 already fails
      {X + X * X * X * cplx(0.1), 1},
      {X * X, 0},  // k1(xi) = E(X^2) != 0
  };
  for (const auto& [p, degree] : wrong) {
    const ConjugateReport r = verify_conjugate_system(s.spec, s.vars(), {s.cand(p)}, opt);
    CHECK_FALSE(r.moment_pass);
    CHECK_FALSE(r.cumulant_pass);
    CHECK(r.agree);
    CHECK(r.moment_first_violation == r.cumulant_first_violation);
    CHECK(r.moment_first_violation == degree);
    CHECK_THROWS_AS(fisher_information(s.spec, s.vars(), {s.cand(p)}, opt), VerificationFailure);
  }
}

TEST_CASE("invalid conjugate-system inputs throw") {
  Scalar s;
  const NCPoly X = s.spec.poly(s.X);
  CHECK_THROWS_AS(verify_conjugate_system(s.spec, s.vars(), {s.cand(X)}, {0, 1e-9, 16, 1}), AlgebraError);
  ConjugateCandidate stray = s.cand(X);
  stray.variable = Generator{7, false};
  CHECK_THROWS_AS(verify_conjugate_system(s.spec, s.vars(), {stray}, {4, 1e-9, 16, 1}), AlgebraError);
}

TEST_CASE("circular pair {c, c*}: conjugates c* and c, Phi* = 2") {
  const AlgebraPtr C = make_algebra({1});
  DistributionSpec spec(C);
  const int c = spec.add_circular("c", LinearMap::identity(C));
  const Generator g{c, false}, gs{c, true};
  const LinearMap id = LinearMap::identity(C);
  const std::vector<ConjugateCandidate> cands{{g, spec.poly(gs), id, "xi_c"}, {gs, spec.poly(g), id, "xi_c*"}};
  const FisherResult f = fisher_information(spec, spec_variables(spec, {g, gs}), cands, {6, 1e-9, 1024, 1});
  CHECK(std::abs(f.value.coords()(0) - 2.0) < 1e-12);
}

TEST_CASE("operator-valued semicircular over M2: frame candidate wrt id gives Index(E)") {
  const AlgebraPtr A = make_algebra({2}, "M2");
  const CondExpectation E = normalized_trace_expectation(A);
  DistributionSpec spec(A);
  const Generator X{spec.add_semicircular("X", E.map()), false};
  const FrameResult fr = compute_tight_frame(E);
  const ConjugateCandidate cand = conjugate_semicircular_wrt_id(spec, X, fr.frame);
  const FisherResult f = fisher_information(spec, spec_variables(spec, {X}), {cand}, {5, 1e-9, 256, 1});
  CHECK(distance(f.value, A->one() * cplx(4.0)) < 1e-9);
  CHECK(distance(f.value, compute_index(E).value) < 1e-9);
  // With respect to E itself, X is its own conjugate and Phi* = E(X^2) = 1.
  const FisherResult g = fisher_information(spec, spec_variables(spec, {X}), {{X, spec.poly(X), E.map(), "X"}},
                                            {5, 1e-9, 256, 1});
  CHECK(distance(g.value, A->one()) < 1e-12);
}
