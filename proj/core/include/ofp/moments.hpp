#pragma once

#include "ofp/distribution.hpp"
#include "ofp/ncpoly.hpp"
#include "ofp/transform.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ofp {

// gamma + sum_k alpha_k g_k beta_k
struct LinearFactor {
  struct Term {
    Element left;
    Generator gen;
    Element right;
  };
  Element constant;
  std::vector<Term> terms;
};

// Decomposition of a polynomial of degree <= 1; nullopt otherwise.
std::optional<LinearFactor> as_linear_factor(const DistributionSpec& spec, const NCPoly& p);

// E_C(f_1 f_2 ... f_n) for degree-<=1 factors, by nested pairing recursion over intervals.
Element moment_of_factors(const DistributionSpec& spec, const std::vector<LinearFactor>& factors);

// E_C(L_1 c_1 L_2 c_2 ... c_{n-1} L_n); letters of degree > 1 are expanded into monomials.
Element moment_of_product(const DistributionSpec& spec, const std::vector<const NCPoly*>& letters,
                          const std::vector<Element>& interior);

// C-valued moment E_C(c_0 g_1 c_1 ... g_m c_m) from the spec's cumulants via the moment-cumulant
// recursion. Throws AlgebraError on unknown generators.
Element moments_from_cumulants(const DistributionSpec& spec, const Monomial& word);

// Same moment by explicit summation over non-crossing pairings with nested covariance evaluation.
Element pairing_moment(const DistributionSpec& spec, const Monomial& word);

// E_B(p) = outer(E_C(p)), linear over terms.
Element expectation_of_polynomial(const DistributionSpec& spec, const NCPoly& p);
// E_C(p) without the outer map.
Element inner_expectation(const DistributionSpec& spec, const NCPoly& p);

// All non-crossing pairings of {0..n-1} as lists of (i, j) with i < j.
std::vector<std::vector<std::pair<int, int>>> noncrossing_pairings(int n);

// Second-order cumulant oracle of the spec for generator letters (alphabet[letter]).
WordFunction spec_cumulant_oracle(const DistributionSpec& spec, const std::vector<Generator>& alphabet);

// Moment oracle over a letter alphabet of polynomials, evaluated with moment_of_product.
WordFunction polynomial_moment_oracle(const DistributionSpec& spec, std::vector<NCPoly> alphabet);

}  // namespace ofp
