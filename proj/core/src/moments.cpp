#include "ofp/moments.hpp"

#include <functional>

namespace ofp {

std::optional<LinearFactor> as_linear_factor(const DistributionSpec& spec, const NCPoly& p) {
  if (p.degree() > 1) return std::nullopt;
  const AlgebraPtr& A = spec.algebra();
  LinearFactor f;
  f.constant = p.valid() ? p.constant_term() : A->zero();
  for (const auto& m : p.terms())
    if (m.degree() == 1) f.terms.push_back({m.coeffs[0], spec.canonical(m.gens[0]), m.coeffs[1]});
  return f;
}

Element moment_of_factors(const DistributionSpec& spec, const std::vector<LinearFactor>& f) {
  const AlgebraPtr& A = spec.algebra();
  const int n = static_cast<int>(f.size());
  if (n == 0) return A->one();
  // F[l][e] = E(f_l ... f_{e-1}); G[l][j] = contribution of pairing a generator of f_l with one of f_j.
  std::vector<std::vector<Element>> F(n + 1, std::vector<Element>(n + 1));
  std::vector<std::vector<Element>> G(n, std::vector<Element>(n));
  const Element one = A->one();
  for (int l = n; l >= 0; --l) {
    F[l][l] = one;
    if (l == n) continue;
    for (int j = l + 1; j < n; ++j) {
      Element g = A->zero();
      bool any = false;
      for (const auto& a : f[l].terms)
        for (const auto& b : f[j].terms) {
          const LinearMap* cov = spec.covariance(a.gen, b.gen);
          if (!cov) continue;
          g += a.left * (*cov)(a.right * F[l + 1][j] * b.left) * b.right;
          any = true;
        }
      G[l][j] = any ? std::move(g) : Element();
    }
    for (int e = l + 1; e <= n; ++e) {
      Element v = f[l].constant.is_zero() ? A->zero() : f[l].constant * F[l + 1][e];
      for (int j = l + 1; j < e; ++j)
        if (G[l][j].valid()) v += G[l][j] * F[j + 1][e];
      F[l][e] = std::move(v);
    }
  }
  return F[0][n];
}

namespace {

void check_generators(const DistributionSpec& spec, const GeneratorWord& gens) {
  for (const auto& g : gens)
    if (!spec.has_variable(g.id)) throw AlgebraError("unknown generator X" + std::to_string(g.id));
}

Element monomial_moment(const DistributionSpec& spec, const Monomial& m) {
  check_generators(spec, m.gens);
  if (m.gens.empty()) return m.coeffs[0];
  std::vector<LinearFactor> fs;
  const Element one = spec.algebra()->one();
  for (std::size_t l = 0; l < m.gens.size(); ++l) {
    LinearFactor f;
    f.constant = spec.algebra()->zero();
    f.terms.push_back({one, spec.canonical(m.gens[l]), m.coeffs[l + 1]});
    fs.push_back(std::move(f));
  }
  return m.coeffs[0] * moment_of_factors(spec, fs);
}

}  // namespace

Element inner_expectation(const DistributionSpec& spec, const NCPoly& p) {
  Element s = spec.algebra()->zero();
  for (const auto& m : p.terms()) s += monomial_moment(spec, m);
  return s;
}

Element expectation_of_polynomial(const DistributionSpec& spec, const NCPoly& p) {
  return spec.outer()(inner_expectation(spec, p));
}

Element moment_of_product(const DistributionSpec& spec, const std::vector<const NCPoly*>& letters,
                          const std::vector<Element>& interior) {
  if (letters.empty()) return spec.algebra()->one();
  if (interior.size() + 1 != letters.size()) throw AlgebraError("interior coefficients must number letters - 1");
  std::vector<LinearFactor> fs;
  for (std::size_t l = 0; l < letters.size(); ++l) {
    auto f = as_linear_factor(spec, *letters[l]);
    if (!f) {
      NCPoly prod = *letters[0];
      for (std::size_t r = 1; r < letters.size(); ++r) prod = prod * interior[r - 1] * *letters[r];
      return inner_expectation(spec, prod);
    }
    for (const auto& t : f->terms) check_generators(spec, {t.gen});
    if (l + 1 < letters.size()) {
      f->constant = f->constant * interior[l];
      for (auto& t : f->terms) t.right = t.right * interior[l];
    }
    fs.push_back(std::move(*f));
  }
  return moment_of_factors(spec, fs);
}

std::vector<std::vector<std::pair<int, int>>> noncrossing_pairings(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  if (n % 2) return out;
  // Pairs the interval [lo, hi) and continues with the pending intervals.
  std::vector<std::pair<int, int>> cur;
  std::function<void(std::vector<std::pair<int, int>>)> go = [&](std::vector<std::pair<int, int>> todo) {
    while (!todo.empty() && todo.back().first >= todo.back().second) todo.pop_back();
    if (todo.empty()) {
      out.push_back(cur);
      return;
    }
    const auto [lo, hi] = todo.back();
    todo.pop_back();
    for (int j = lo + 1; j < hi; j += 2) {
      cur.push_back({lo, j});
      auto next = todo;
      next.push_back({j + 1, hi});
      next.push_back({lo + 1, j});
      go(next);
      cur.pop_back();
    }
  };
  go({{0, n}});
  return out;
}

Element pairing_moment(const DistributionSpec& spec, const Monomial& word) {
  check_generators(spec, word.gens);
  const AlgebraPtr& A = spec.algebra();
  const int m = word.degree();
  if (m == 0) return word.coeffs[0];
  Element total = A->zero();
  for (const auto& pairing : noncrossing_pairings(m)) {
    std::vector<int> partner(m, -1);
    for (const auto& [i, j] : pairing) {
      partner[i] = j;
      partner[j] = i;
    }
    // eval(l, e) = E(g_l c_l ... c_{e-2} g_{e-1}) under this pairing.
    std::function<Element(int, int)> eval = [&](int l, int e) -> Element {
      const int j = partner[l];
      const LinearMap* cov = spec.covariance(word.gens[l], word.gens[j]);
      if (!cov) return A->zero();
      const Element inner = (j == l + 1) ? word.coeffs[l + 1]
                                         : word.coeffs[l + 1] * eval(l + 1, j) * word.coeffs[j];
      Element v = (*cov)(inner);
      if (j + 1 < e) v = v * word.coeffs[j + 1] * eval(j + 1, e);
      return v;
    };
    total += eval(0, m);
  }
  return word.coeffs.front() * total * word.coeffs.back();
}

WordFunction spec_cumulant_oracle(const DistributionSpec& spec, const std::vector<Generator>& alphabet) {
  return [&spec, alphabet](const LetterWord& l, const IndexWord& i) {
    const AlgebraPtr& A = spec.algebra();
    if (l.size() != 2) return A->zero();
    const LinearMap* cov = spec.covariance(alphabet[l[0]], alphabet[l[1]]);
    return cov ? (*cov)(A->basis(i[0])) : A->zero();
  };
}

Element moments_from_cumulants(const DistributionSpec& spec, const Monomial& word) {
  check_generators(spec, word.gens);
  if (word.gens.empty()) return word.coeffs[0];
  const std::vector<Generator> alphabet = word_alphabet(word);
  ForwardMoments fwd(spec.algebra(), spec_cumulant_oracle(spec, alphabet));
  return sum_over_basis(word, alphabet, [&](const LetterWord& l, const IndexWord& i) { return fwd.moment(l, i); });
}

WordFunction polynomial_moment_oracle(const DistributionSpec& spec, std::vector<NCPoly> alphabet) {
  return [&spec, alphabet = std::move(alphabet)](const LetterWord& l, const IndexWord& i) {
    std::vector<const NCPoly*> letters;
    std::vector<Element> interior;
    for (int x : l) letters.push_back(&alphabet[x]);
    for (int x : i) interior.push_back(spec.algebra()->basis(x));
    return moment_of_product(spec, letters, interior);
  };
}

}  // namespace ofp
