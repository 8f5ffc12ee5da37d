#include "ofp/distribution.hpp"
#include "ofp/word_parser.hpp"

#include "doctest.h"

using namespace ofp;

namespace {

struct Fixture {
  AlgebraPtr A = make_algebra({2}, "M2");
  DistributionSpec spec{A};
  SymbolTable sym;
  int x = -1, c = -1;
  Fixture() {
    x = spec.add_semicircular("X1", LinearMap::identity(A));
    c = spec.add_circular("X2", LinearMap::identity(A));
    sym.algebra = A;
    for (int i = 0; i < 3; ++i) sym.constants["b" + std::to_string(i)] = A->basis(i);
    sym.polys["X1"] = spec.poly({x, false});
    sym.polys["X2"] = spec.poly({c, false});
  }
};

}  // namespace

TEST_CASE("word syntax: coefficients, generators and adjoints") {
  Fixture f;
  const NCPoly p = parse_expression("b0 * X1 * b1 * X2^* * b2", f.sym);
  const auto terms = p.terms();
  REQUIRE(terms.size() == 1);
  const Monomial& m = terms[0];
  CHECK(m.degree() == 2);
  CHECK(m.gens[0] == Generator{f.x, false});
  CHECK(m.gens[1] == Generator{f.c, true});
  CHECK(distance(m.coeffs[0], f.A->basis(0)) == 0.0);
  CHECK(distance(m.coeffs[1], f.A->basis(1)) == 0.0);
  CHECK(distance(m.coeffs[2], f.A->basis(2)) == 0.0);
}

TEST_CASE("word syntax: sums, scalars, parentheses and imaginary unit") {
  Fixture f;
  const NCPoly p = parse_expression("2*(X1 + i*X1) - X1", f.sym);
  const auto terms = p.terms();
  REQUIRE(terms.size() == 1);
  CHECK(std::abs(terms[0].coeffs[0].coords().sum() - cplx(2.0, 4.0)) < 1e-14);  // (1 + 2i) * 1 over M2
  CHECK(parse_expression("(X1 * X2)^*", f.sym).degree() == 2);
  const NCPoly q = parse_expression("X2 * X2^*", f.sym);
  CHECK(q.adjoint().terms().size() == 1);
  CHECK(parse_expression("3", f.sym).degree() == 0);
}

TEST_CASE("word syntax errors carry a position") {
  Fixture f;
  CHECK_THROWS_AS(parse_expression("X1 * Z", f.sym), ParseError);
  CHECK_THROWS_AS(parse_expression("X1 *", f.sym), ParseError);
  CHECK_THROWS_AS(parse_expression("(X1", f.sym), ParseError);
  CHECK_THROWS_AS(parse_expression("X1 X1", f.sym), ParseError);
  try {
    parse_expression("X1 + ?", f.sym);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("polynomial algebra: adjoint reverses words and conjugates coefficients") {
  Fixture f;
  const NCPoly p = parse_expression("b1 * X1 * X2", f.sym);
  const auto t = p.adjoint().terms();
  REQUIRE(t.size() == 1);
  CHECK(t[0].gens[0] == Generator{f.c, true});
  CHECK(t[0].gens[1] == Generator{f.x, true});
  CHECK(distance(t[0].coeffs[2], f.A->basis(2)) == 0.0);
  CHECK(f.spec.canonicalize(p.adjoint()).terms()[0].gens[1] == Generator{f.x, false});
  CHECK((p - p).is_zero(1e-15));
}

TEST_CASE("spec lookup resolves starred names and rejects duplicates") {
  Fixture f;
  CHECK(f.spec.find("X2*") == Generator{f.c, true});
  CHECK(f.spec.find("X1*") == Generator{f.x, false});
  CHECK_FALSE(f.spec.find("Q").has_value());
  CHECK_THROWS_AS(f.spec.add_semicircular("X1", LinearMap::identity(f.A)), AlgebraError);
  CHECK(f.spec.generators().size() == 3);
}
