#pragma once

#include "ofp/distribution.hpp"
#include "ofp/moments.hpp"
#include "ofp/report.hpp"

#include <cstdint>
#include <vector>

namespace ofp {

struct CheckOptions {
  int maxdeg = 8;
  double tol = 1e-9;
  std::size_t budget = 1 << 16;  // coefficient tuples per degree before switching to seeded sampling
  std::uint64_t seed = 1;
};

// Both transform directions over all words of length <= maxdeg in `alphabet` with basis interior
// coefficients: spec cumulants -> moments -> cumulants, and moments -> cumulants -> moments.
VerificationReport check_roundtrip(const DistributionSpec& spec, const std::vector<Generator>& alphabet,
                                   const CheckOptions& opt);

// Recurrence evaluator vs explicit non-crossing-pairing summation vs the interval recursion.
VerificationReport check_dual_evaluators(const DistributionSpec& spec, const std::vector<Generator>& alphabet,
                                         const CheckOptions& opt);

// Freeness of the given families: alternating products of centered family elements have zero
// expectation, and mixed cumulants vanish. Reports both methods and whether they agree.
VerificationReport check_freeness(const DistributionSpec& spec, const std::vector<std::vector<Generator>>& families,
                                  const CheckOptions& opt);
// Families as declared in the spec.
std::vector<std::vector<Generator>> declared_families(const DistributionSpec& spec);

// Cumulants of S = [[s1, c], [c*, s2]] under E (x) id_2: k1 = 0, k2(S (x) B S) = eta_plus(B) on a
// basis of M_2(C), k_n = 0 for 3 <= n <= maxdeg. Also compares amplified moments against the
// entrywise expansion of short words.
VerificationReport verify_matrix_semicircular(const DistributionSpec& entry_spec, Generator s1, Generator c,
                                              Generator s2, const LinearMap& eta, const CheckOptions& opt);

// Human-readable word like "X e3 Y" for witnesses.
std::string describe_word(const std::vector<std::string>& letter_names, const std::vector<int>& letters,
                          const std::vector<int>& interior);

}  // namespace ofp
