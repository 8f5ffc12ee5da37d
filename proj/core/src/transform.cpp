#include "ofp/transform.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

namespace ofp {

std::string encode_key(const LetterWord& letters, const IndexWord& interior) {
  std::string k;
  k.reserve(1 + letters.size() + interior.size());
  k.push_back(static_cast<char>(letters.size()));
  for (int l : letters) k.push_back(static_cast<char>(l));
  for (int i : interior) k.push_back(static_cast<char>(i));
  return k;
}

namespace {

void check_word(const MultiMatrixAlgebra& A, const LetterWord& letters, const IndexWord& interior) {
  if (letters.empty()) throw AlgebraError("empty word");
  if (interior.size() + 1 != letters.size()) throw AlgebraError("interior coefficients must number letters - 1");
  if (letters.size() > 255 || A.dim() > 256) throw AlgebraError("word or algebra too large for keyed tables");
  for (int i : interior)
    if (i < 0 || i >= A.dim()) throw AlgebraError("interior basis index out of range");
  for (int l : letters)
    if (l < 0 || l > 255) throw AlgebraError("letter index out of range");
}

// Sum over V containing the first letter of k(V; d) * tail, optionally skipping V = everything.
template <class MomentFn, class CumulantFn>
Element expand_partitions(const MultiMatrixAlgebra& A, const LetterWord& L, const IndexWord& I, MomentFn&& moment,
                          CumulantFn&& cumulant, bool skip_full) {
  const int n = static_cast<int>(L.size());
  Element total = A.zero();
  const unsigned full = (n > 1) ? ((1u << (n - 1)) - 1u) : 0u;
  std::vector<int> v;
  LetterWord kl;
  IndexWord ki;
  for (unsigned mask = 0; mask <= full; ++mask) {
    if (skip_full && mask == full) continue;
    v.assign(1, 0);
    for (int p = 1; p < n; ++p)
      if (mask & (1u << (p - 1))) v.push_back(p);
    kl.clear();
    ki.clear();
    cplx scale = 1.0;
    bool vanish = false;
    for (std::size_t p = 0; p < v.size(); ++p) {
      kl.push_back(L[v[p]]);
      if (p + 1 == v.size()) break;
      const int a = v[p], b = v[p + 1];
      if (b == a + 1) {
        ki.push_back(I[a]);
        continue;
      }
      const LetterWord gl(L.begin() + a + 1, L.begin() + b);
      const IndexWord gi(I.begin() + a + 1, I.begin() + b - 1);
      const auto s = A.sandwich(I[a], moment(gl, gi), I[b - 1]);
      if (!s) {
        vanish = true;
        break;
      }
      ki.push_back(s->first);
      scale *= s->second;
    }
    if (vanish) continue;
    const Element& k = cumulant(kl, ki);
    if (k.is_zero()) continue;
    const int last = v.back();
    if (last == n - 1) {
      total += k * scale;
    } else {
      const LetterWord tl(L.begin() + last + 1, L.end());
      const IndexWord ti(I.begin() + last + 1, I.end());
      total += (k * (A.basis(I[last]) * moment(tl, ti))) * scale;
    }
  }
  return total;
}

}  // namespace

const Element& MomentTable::moment(const LetterWord& letters, const IndexWord& interior) {
  const std::string key = encode_key(letters, interior);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  check_word(*alg_, letters, interior);
  Element v = oracle_(letters, interior);
  return memo_.emplace(key, std::move(v)).first->second;
}

const Element& CumulantTable::cumulant(const LetterWord& letters, const IndexWord& interior) {
  const std::string key = encode_key(letters, interior);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const MultiMatrixAlgebra& A = *moments_.algebra();
  check_word(A, letters, interior);
  Element m = moments_.moment(letters, interior);
  if (letters.size() > 1) {
    m -= expand_partitions(
        A, letters, interior,
        [this](const LetterWord& l, const IndexWord& i) -> const Element& { return moments_.moment(l, i); },
        [this](const LetterWord& l, const IndexWord& i) -> const Element& { return cumulant(l, i); }, true);
  }
  return memo_.emplace(key, std::move(m)).first->second;
}

Element CumulantTable::recompose(const LetterWord& letters, const IndexWord& interior) {
  const MultiMatrixAlgebra& A = *moments_.algebra();
  check_word(A, letters, interior);
  return expand_partitions(
      A, letters, interior,
      [this](const LetterWord& l, const IndexWord& i) -> const Element& { return moments_.moment(l, i); },
      [this](const LetterWord& l, const IndexWord& i) -> const Element& { return cumulant(l, i); }, false);
}

const Element& ForwardMoments::moment(const LetterWord& letters, const IndexWord& interior) {
  const std::string key = encode_key(letters, interior);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  check_word(*alg_, letters, interior);
  std::map<std::string, Element> kcache;
  Element m = expand_partitions(
      *alg_, letters, interior,
      [this](const LetterWord& l, const IndexWord& i) -> const Element& { return moment(l, i); },
      [&](const LetterWord& l, const IndexWord& i) -> const Element& {
        const std::string kk = encode_key(l, i);
        auto kt = kcache.find(kk);
        if (kt == kcache.end()) kt = kcache.emplace(kk, k_(l, i)).first;
        return kt->second;
      },
      false);
  return memo_.emplace(key, std::move(m)).first->second;
}

bool for_each_tuple(int len, int base, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> t(len, 0);
  if (base <= 0 && len > 0) return true;
  for (;;) {
    if (!f(t)) return false;
    int p = len - 1;
    while (p >= 0 && ++t[p] == base) t[p--] = 0;
    if (p < 0) return true;
  }
}

std::vector<Generator> word_alphabet(const Monomial& word) {
  std::vector<Generator> alphabet;
  for (const auto& g : word.gens)
    if (std::find(alphabet.begin(), alphabet.end(), g) == alphabet.end()) alphabet.push_back(g);
  return alphabet;
}

Element sum_over_basis(const Monomial& word, const std::vector<Generator>& alphabet, const WordFunction& keyed) {
  if (word.gens.empty()) throw AlgebraError("empty word");
  if (word.coeffs.size() != word.gens.size() + 1) throw AlgebraError("malformed monomial");
  const AlgebraPtr& A = word.coeffs.front().algebra();
  LetterWord letters;
  for (const auto& g : word.gens) {
    auto it = std::find(alphabet.begin(), alphabet.end(), g);
    if (it == alphabet.end()) throw AlgebraError("generator missing from alphabet");
    letters.push_back(static_cast<int>(it - alphabet.begin()));
  }
  const int n = static_cast<int>(letters.size());
  std::vector<std::vector<std::pair<int, cplx>>> nz(n - 1);
  for (int p = 0; p + 1 < n; ++p) {
    const auto& c = word.coeffs[p + 1].coords();
    for (int i = 0; i < c.size(); ++i)
      if (c[i] != cplx(0.0)) nz[p].push_back({i, c[i]});
    if (nz[p].empty()) return A->zero();
  }
  Element sum = A->zero();
  std::vector<int> pick(n - 1, 0);
  IndexWord idx(n - 1);
  for (;;) {
    cplx w = 1.0;
    for (int p = 0; p + 1 < n; ++p) {
      idx[p] = nz[p][pick[p]].first;
      w *= nz[p][pick[p]].second;
    }
    sum += keyed(letters, idx) * w;
    int p = n - 2;
    while (p >= 0 && ++pick[p] == static_cast<int>(nz[p].size())) pick[p--] = 0;
    if (p < 0) break;
  }
  return word.coeffs.front() * sum * word.coeffs.back();
}

std::size_t tuple_count(const std::vector<int>& radices) {
  std::size_t n = 1;
  for (int r : radices) {
    if (r <= 0) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(r))
      return std::numeric_limits<std::size_t>::max();
    n *= static_cast<std::size_t>(r);
  }
  return n;
}

bool for_each_tuple_within(const std::vector<int>& radices, std::size_t budget, std::uint64_t seed,
                           const std::function<void(const std::vector<int>&)>& f) {
  const std::size_t total = tuple_count(radices);
  if (total == 0) return true;
  std::vector<int> t(radices.size(), 0);
  if (total <= budget) {
    for (;;) {
      f(t);
      int p = static_cast<int>(t.size()) - 1;
      while (p >= 0 && ++t[p] == radices[p]) t[p--] = 0;
      if (p < 0) return true;
    }
  }
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(sq);
  for (std::size_t s = 0; s < budget; ++s) {
    for (std::size_t p = 0; p < t.size(); ++p)
      t[p] = std::uniform_int_distribution<int>(0, radices[p] - 1)(rng);
    f(t);
  }
  return false;
}

Element cumulants_from_moments(const std::function<Element(const Monomial&)>& oracle, const Monomial& word) {
  if (word.gens.empty()) throw AlgebraError("cumulant of an empty word");
  if (word.coeffs.size() != word.gens.size() + 1) throw AlgebraError("malformed monomial");
  const AlgebraPtr A = word.coeffs.front().algebra();
  const std::vector<Generator> alphabet = word_alphabet(word);
  MomentTable table(A, [&](const LetterWord& l, const IndexWord& idx) {
    Monomial m;
    m.coeffs.push_back(A->one());
    for (std::size_t p = 0; p < l.size(); ++p) {
      m.gens.push_back(alphabet[l[p]]);
      m.coeffs.push_back(p + 1 < l.size() ? A->basis(idx[p]) : A->one());
    }
    try {
      return oracle(m);
    } catch (const AlgebraError&) {
      throw;
    } catch (const std::exception& e) {
      throw AlgebraError(std::string("moment oracle failed on a subword: ") + e.what());
    }
  });
  CumulantTable cum(table);
  return sum_over_basis(word, alphabet,
                        [&](const LetterWord& l, const IndexWord& i) { return cum.cumulant(l, i); });
}

}  // namespace ofp
