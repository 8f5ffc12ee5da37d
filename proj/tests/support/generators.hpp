#pragma once

#include "ofp/distribution.hpp"
#include "ofp/expectation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ofp::testing {

// Seeded generator for property tests; every draw is reproducible from (seed, call order).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  cplx complex() { return {real(), real()}; }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[uniform(0, static_cast<int>(v.size()) - 1)]; }

  // One of C, C+C, M2, C+M2.
  AlgebraPtr algebra();
  Element element(const AlgebraPtr& A);
  Element basis_element(const AlgebraPtr& A) { return A->basis(uniform(0, A->dim() - 1)); }
  // Arbitrary linear map on A (the moment/cumulant identities are linear in the covariances).
  LinearMap map(const AlgebraPtr& A);
  // A faithful conditional expectation on A: identity, trace, or diagonal pinching.
  CondExpectation expectation(const AlgebraPtr& A);
  // 1-3 variables in 1-2 families with random covariances inside each family.
  DistributionSpec spec(const AlgebraPtr& A);
  // Monomial of the given degree with random coefficients (basis elements when `basis`).
  Monomial word(const DistributionSpec& spec, int degree, bool basis = false);

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

std::string describe(const Gen& g);

}  // namespace ofp::testing
