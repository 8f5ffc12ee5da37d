#include "matching_oracle.hpp"

#include <functional>

namespace ofp::testing {

std::vector<Matching> all_perfect_matchings(int n) {
  std::vector<Matching> out;
  if (n % 2) return out;
  std::vector<bool> used(n, false);
  Matching cur;
  std::function<void()> rec = [&]() {
    int first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      out.push_back(cur);
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.push_back({first, j});
      rec();
      cur.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  rec();
  return out;
}

bool is_noncrossing(const Matching& m) {
  for (const auto& [a, b] : m)
    for (const auto& [c, d] : m)
      if (a < c && c < b && b < d) return false;
  return true;
}

namespace {

struct Evaluator {
  const DistributionSpec& spec;
  const Monomial& w;
  std::vector<int> partner;

  Element cov(int p, int q, const Element& arg) const {
    const LinearMap* m = spec.covariance(w.gens[p], w.gens[q]);
    return m ? (*m)(arg) : arg.algebra()->zero();
  }

  // Letters a..b form a union of complete blocks; coefficient w.coeffs[i] sits left of letter i.
  Element segment(int a, int b) const {
    Element acc = spec.algebra()->one();
    for (int p = a; p <= b;) {
      const int q = partner[p];
      Element arg = w.coeffs[p + 1];
      if (q > p + 1) arg = w.coeffs[p + 1] * segment(p + 1, q - 1) * w.coeffs[q];
      acc = acc * cov(p, q, arg);
      if (q < b) acc = acc * w.coeffs[q + 1];
      p = q + 1;
    }
    return acc;
  }
};

}  // namespace

Element brute_force_moment(const DistributionSpec& spec, const Monomial& word) {
  const int m = word.degree();
  const AlgebraPtr& C = spec.algebra();
  if (m == 0) return word.coeffs[0];
  Element total = C->zero();
  for (const Matching& mt : all_perfect_matchings(m)) {
    if (!is_noncrossing(mt)) continue;
    Evaluator ev{spec, word, std::vector<int>(m)};
    for (const auto& [a, b] : mt) {
      ev.partner[a] = b;
      ev.partner[b] = a;
    }
    total += word.coeffs[0] * ev.segment(0, m - 1) * word.coeffs[m];
  }
  return total;
}

}  // namespace ofp::testing
