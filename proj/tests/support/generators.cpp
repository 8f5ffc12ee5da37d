#include "generators.hpp"

namespace ofp::testing {

AlgebraPtr Gen::algebra() {
  static const std::vector<std::vector<int>> shapes{{1}, {1, 1}, {2}, {1, 2}};
  static const std::vector<std::string> labels{"C", "C+C", "M2", "C+M2"};
  const int k = uniform(0, 3);
  return make_algebra(shapes[k], labels[k]);
}

Element Gen::element(const AlgebraPtr& A) {
  Eigen::VectorXcd x(A->dim());
  for (int i = 0; i < A->dim(); ++i) x(i) = complex();
  return A->from_coords(x);
}

LinearMap Gen::map(const AlgebraPtr& A) {
  Eigen::MatrixXcd m(A->dim(), A->dim());
  for (int r = 0; r < A->dim(); ++r)
    for (int c = 0; c < A->dim(); ++c) m(r, c) = complex();
  return LinearMap(A, A, m, "random");
}

CondExpectation Gen::expectation(const AlgebraPtr& A) {
  switch (uniform(0, 2)) {
    case 0:
      return CondExpectation::identity(A);
    case 1:
      return normalized_trace_expectation(A);
    default:
      return diagonal_pinching(A);
  }
}

DistributionSpec Gen::spec(const AlgebraPtr& A) {
  DistributionSpec s(A);
  const int n = uniform(1, 3);
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    const int family = (i > 0 && coin()) ? s.family_of(ids.back()) : -1;
    const bool circ = coin();
    ids.push_back(s.add_variable("v" + std::to_string(i), circ ? VariableKind::Circular : VariableKind::Semicircular,
                                 family));
  }
  for (int a : ids)
    for (int b : ids) {
      if (s.family_of(a) != s.family_of(b)) continue;
      for (bool sa : {false, true})
        for (bool sb : {false, true}) {
          if ((sa && s.variable(a).kind == VariableKind::Semicircular) ||
              (sb && s.variable(b).kind == VariableKind::Semicircular) || coin())
            continue;
          s.set_covariance({a, sa}, {b, sb}, map(A));
        }
    }
  return s;
}

Monomial Gen::word(const DistributionSpec& spec, int degree, bool basis) {
  const auto gens = spec.generators();
  const AlgebraPtr& A = spec.algebra();
  std::vector<Element> coeffs;
  GeneratorWord g;
  for (int i = 0; i <= degree; ++i) coeffs.push_back(basis ? basis_element(A) : element(A));
  for (int i = 0; i < degree; ++i) g.push_back(pick(gens));
  return make_monomial(coeffs, g);
}

std::string describe(const Gen& g) { return "generator seed " + std::to_string(g.seed()); }

}  // namespace ofp::testing
