#pragma once

#include "ofp/algebra.hpp"
#include "ofp/ncpoly.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ofp {

// A word L_0 e_{i_0} L_1 e_{i_1} ... L_{n-1}: letter indices plus n-1 interior basis indices.
using LetterWord = std::vector<int>;
using IndexWord = std::vector<int>;

std::string encode_key(const LetterWord& letters, const IndexWord& interior);

using WordFunction = std::function<Element(const LetterWord&, const IndexWord&)>;

// Memoized moment oracle. Task-local: not safe for concurrent mutation.
class MomentTable {
 public:
  MomentTable(AlgebraPtr alg, WordFunction oracle) : alg_(std::move(alg)), oracle_(std::move(oracle)) {}

  const Element& moment(const LetterWord& letters, const IndexWord& interior);
  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t size() const { return memo_.size(); }

 private:
  AlgebraPtr alg_;
  WordFunction oracle_;
  std::unordered_map<std::string, Element> memo_;
};

// Cumulants obtained from a moment table by inverting the moment-cumulant recursion:
//   E(L_0 c_0 ... L_{n-1}) = sum over V = {0 = v_1 < ... < v_s} of
//     k_s(L_{v_1} d_1 ... d_{s-1} L_{v_s}) * c_{v_s} E(L_{v_s+1} ... L_{n-1}),
// where d_p = c_{v_p} E(gap) c_{v_{p+1}-1} is the moment of the letters strictly between.
class CumulantTable {
 public:
  explicit CumulantTable(MomentTable& moments) : moments_(moments) {}

  const Element& cumulant(const LetterWord& letters, const IndexWord& interior);
  // Forward recursion from cumulant(): reproduces the moment (roundtrip direction).
  Element recompose(const LetterWord& letters, const IndexWord& interior);
  std::size_t size() const { return memo_.size(); }

 private:
  MomentTable& moments_;
  std::unordered_map<std::string, Element> memo_;
};

// Moments generated from a cumulant oracle by the forward recursion.
class ForwardMoments {
 public:
  ForwardMoments(AlgebraPtr alg, WordFunction cumulants) : alg_(std::move(alg)), k_(std::move(cumulants)) {}

  const Element& moment(const LetterWord& letters, const IndexWord& interior);

 private:
  AlgebraPtr alg_;
  WordFunction k_;
  std::unordered_map<std::string, Element> memo_;
};

// Cumulant k^(n) of a word c_0 g_1 c_1 ... g_n c_n from a moment oracle on monomials. Interior
// coefficients are decomposed over the canonical basis; outer coefficients factor out.
// Throws AlgebraError when the oracle fails on a subword.
Element cumulants_from_moments(const std::function<Element(const Monomial&)>& oracle, const Monomial& word);

// Distinct generators of a word in order of first appearance.
std::vector<Generator> word_alphabet(const Monomial& word);
// c_0 * (sum over the basis decomposition of c_1..c_{n-1} of keyed(letters, idx)) * c_n, where the
// letters index `alphabet`.
Element sum_over_basis(const Monomial& word, const std::vector<Generator>& alphabet, const WordFunction& keyed);

// Iterates over all tuples in {0..base-1}^len (lexicographic). Returns false to stop early.
bool for_each_tuple(int len, int base, const std::function<bool(const std::vector<int>&)>& f);

// Visits every tuple of the mixed-radix space when its size is within `budget`, otherwise `budget`
// tuples drawn uniformly with a generator seeded by `seed`. Returns true when exhaustive.
bool for_each_tuple_within(const std::vector<int>& radices, std::size_t budget, std::uint64_t seed,
                           const std::function<void(const std::vector<int>&)>& f);
// Number of tuples, saturating at SIZE_MAX.
std::size_t tuple_count(const std::vector<int>& radices);

}  // namespace ofp
