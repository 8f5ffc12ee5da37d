#include "ofp/cumulant_checks.hpp"
#include "ofp/moments.hpp"
#include "ofp/transform.hpp"

#include "../support/generators.hpp"
#include "../support/matching_oracle.hpp"

#include "doctest.h"

using namespace ofp;
using ofp::testing::Gen;

namespace {

double rel(const Element& a, const Element& b) { return distance(a, b) / std::max(1.0, b.max_abs()); }

Monomial power(const AlgebraPtr& A, Generator g, int n) {
  return make_monomial(std::vector<Element>(n + 1, A->one()), GeneratorWord(n, g));
}

}  // namespace

TEST_CASE("oracle enumerates every perfect matching") {
  CHECK(ofp::testing::all_perfect_matchings(6).size() == 15);
  CHECK(ofp::testing::all_perfect_matchings(8).size() == 105);
  int nc = 0;
  for (const auto& m : ofp::testing::all_perfect_matchings(8)) nc += ofp::testing::is_noncrossing(m);
  CHECK(nc == 14);
  CHECK(noncrossing_pairings(8).size() == 14);
}

TEST_CASE("scalar semicircular even moments are Catalan numbers") {
  const AlgebraPtr C = make_algebra({1}, "C");
  DistributionSpec s(C);
  const Generator X{s.add_semicircular("X", LinearMap::identity(C)), false};
  const double catalan[] = {1, 1, 2, 5, 14};
  for (int k = 1; k <= 4; ++k) {
    const Monomial w = power(C, X, 2 * k);
    CHECK(std::abs(moments_from_cumulants(s, w).coords()(0) - catalan[k]) < 1e-12);
    CHECK(std::abs(pairing_moment(s, w).coords()(0) - catalan[k]) < 1e-12);
    CHECK(std::abs(ofp::testing::brute_force_moment(s, w).coords()(0) - catalan[k]) < 1e-12);
    CHECK(moments_from_cumulants(s, power(C, X, 2 * k - 1)).is_zero(1e-15));
  }
}

TEST_CASE("property: recurrence, pairing and brute-force evaluators agree on random specs") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Gen g(seed);
    const AlgebraPtr A = g.algebra();
    const DistributionSpec s = g.spec(A);
    const Monomial w = g.word(s, g.uniform(0, 6));
    const Element brute = ofp::testing::brute_force_moment(s, w);
    INFO(ofp::testing::describe(g), " algebra ", A->label(), " degree ", w.degree());
    CHECK(rel(moments_from_cumulants(s, w), brute) < 1e-9);
    CHECK(rel(pairing_moment(s, w), brute) < 1e-9);
  }
}

TEST_CASE("property: cumulants of random moments invert the recurrence") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    Gen g(seed);
    const AlgebraPtr A = g.algebra();
    const DistributionSpec s = g.spec(A);
    const Monomial w = g.word(s, g.uniform(1, 5));
    auto oracle = [&](const Monomial& m) { return ofp::testing::brute_force_moment(s, m); };
    const Element k = cumulants_from_moments(oracle, w);
    INFO(ofp::testing::describe(g), " degree ", w.degree());
    if (w.degree() == 2) {
      const LinearMap* cov = s.covariance(w.gens[0], w.gens[1]);
      const Element want = cov ? w.coeffs[0] * (*cov)(w.coeffs[1]) * w.coeffs[2] : A->zero();
      CHECK(rel(k, want) < 1e-9);
    } else {
      CHECK(k.max_abs() < 1e-9 * std::max(1.0, oracle(w).max_abs()));
    }
  }
}

TEST_CASE("roundtrip and dual evaluators over C, C+C and M2") {
  for (const auto& dims : std::vector<std::vector<int>>{{1}, {1, 1}, {2}}) {
    const AlgebraPtr A = make_algebra(dims);
    Gen g(dims.size() * 10 + dims[0]);
    DistributionSpec s(A);
    s.add_semicircular("X", g.expectation(A).map());
    s.add_circular("c", LinearMap::identity(A));
    CheckOptions opt{5, 1e-9, 256, 3};
    CHECK(check_roundtrip(s, s.generators(), opt).passed());
    CHECK(check_dual_evaluators(s, s.generators(), opt).passed());
  }
}

TEST_CASE("freeness holds for independent families and fails on a cross covariance") {
  const AlgebraPtr A = make_algebra({2}, "M2");
  const LinearMap tr = normalized_trace_expectation(A).map();
  DistributionSpec s(A);
  const int x = s.add_semicircular("X", tr);
  const int y = s.add_semicircular("Y", LinearMap::identity(A));
  CheckOptions opt{4, 1e-9, 256, 1};
  const VerificationReport ok = check_freeness(s, declared_families(s), opt);
  CHECK(ok.passed());

  DistributionSpec bad = s;
  bad.set_covariance({x, false}, {y, false}, tr);
  bad.set_covariance({y, false}, {x, false}, tr);
  const VerificationReport fail = check_freeness(bad, declared_families(bad), opt);
  CHECK_FALSE(fail.passed());
  bool witnessed = false;
  for (const auto& c : fail.checks) witnessed = witnessed || (!c.pass && !c.witness.empty());
  CHECK(witnessed);
}

TEST_CASE("freeness with a single family is vacuous") {
  const AlgebraPtr C = make_algebra({1});
  DistributionSpec s(C);
  s.add_semicircular("X", LinearMap::identity(C));
  CHECK(check_freeness(s, declared_families(s), {4, 1e-9, 64, 1}).passed());
}

TEST_CASE("unknown generators are rejected") {
  const AlgebraPtr C = make_algebra({1});
  DistributionSpec s(C);
  s.add_semicircular("X", LinearMap::identity(C));
  const Monomial w = make_monomial({C->one(), C->one(), C->one()}, {Generator{0, false}, Generator{5, false}});
  CHECK_THROWS_AS(moments_from_cumulants(s, w), AlgebraError);
}
