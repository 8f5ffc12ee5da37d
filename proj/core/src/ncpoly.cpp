#include "ofp/ncpoly.hpp"

#include <algorithm>
#include <sstream>

namespace ofp {

Monomial Monomial::adjoint() const {
  Monomial r;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r.coeffs.push_back(it->adjoint());
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) r.gens.push_back(it->adjoint());
  return r;
}

Monomial make_monomial(const std::vector<Element>& coeffs, const GeneratorWord& gens) {
  if (coeffs.size() != gens.size() + 1) throw AlgebraError("monomial needs one more coefficient than generators");
  return Monomial{coeffs, gens};
}

NCPoly NCPoly::constant(const Element& c) {
  NCPoly p(c.algebra());
  p.add(Monomial{{c}, {}});
  return p;
}

NCPoly NCPoly::generator(const AlgebraPtr& alg, Generator g) {
  NCPoly p(alg);
  p.add(Monomial{{alg->one(), alg->one()}, {g}});
  return p;
}

NCPoly NCPoly::from_monomial(const Monomial& m) {
  NCPoly p(m.coeffs.front().algebra());
  p.add(m);
  return p;
}

void NCPoly::add(const Monomial& m) {
  if (m.coeffs.size() != m.gens.size() + 1) throw AlgebraError("malformed monomial");
  for (const auto& c : m.coeffs) {
    if (!alg_) alg_ = c.algebra();
    if (!c.algebra()->same_shape(*alg_)) throw AlgebraError("coefficient algebra mismatch in polynomial");
    if (c.is_zero()) return;
  }
  terms_[m.gens].push_back(m.coeffs);
  normalize_word(m.gens);
}

// Merge coefficient tuples that differ in at most one slot; drop tuples that vanish.
void NCPoly::normalize_word(const GeneratorWord& w) {
  auto it = terms_.find(w);
  if (it == terms_.end()) return;
  auto& list = it->second;
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < list.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < list.size() && !merged; ++b) {
        int diff = -1, ndiff = 0;
        for (std::size_t s = 0; s < list[a].size(); ++s)
          if (!(list[a][s].coords() == list[b][s].coords())) {
            diff = static_cast<int>(s);
            ++ndiff;
          }
        if (ndiff == 0) {
          list[a][0] += list[b][0];
        } else if (ndiff == 1) {
          list[a][diff] += list[b][diff];
        } else {
          continue;
        }
        list.erase(list.begin() + static_cast<long>(b));
        merged = true;
      }
    list.erase(std::remove_if(list.begin(), list.end(),
                              [](const std::vector<Element>& t) {
                                return std::any_of(t.begin(), t.end(), [](const Element& c) { return c.is_zero(); });
                              }),
               list.end());
  }
  if (list.empty()) terms_.erase(it);
}

std::vector<Monomial> NCPoly::terms() const {
  std::vector<Monomial> out;
  for (const auto& [w, list] : terms_)
    for (const auto& t : list) out.push_back(Monomial{t, w});
  return out;
}

std::vector<GeneratorWord> NCPoly::words() const {
  std::vector<GeneratorWord> out;
  for (const auto& kv : terms_) out.push_back(kv.first);
  return out;
}

int NCPoly::degree() const {
  int d = -1;
  for (const auto& kv : terms_) d = std::max(d, static_cast<int>(kv.first.size()));
  return d;
}

bool NCPoly::is_zero(double tol) const {
  for (const auto& [w, list] : terms_) {
    (void)list;
    for (const auto& [idx, v] : coefficient_tensor(w))
      if (std::abs(v) > tol) return false;
  }
  return true;
}

Element NCPoly::constant_term() const {
  Element c = alg_->zero();
  auto it = terms_.find(GeneratorWord{});
  if (it != terms_.end())
    for (const auto& t : it->second) c += t[0];
  return c;
}

NCPoly NCPoly::adjoint() const {
  NCPoly r(alg_);
  for (const auto& m : terms()) r.add(m.adjoint());
  return r;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& m : o.terms()) add(m);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  if (!alg_) alg_ = o.alg_;
  for (auto m : o.terms()) {
    m.coeffs[0] *= cplx(-1.0);
    add(m);
  }
  return *this;
}

NCPoly& NCPoly::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, list] : terms_)
    for (auto& t : list) t[0] *= s;
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  if (a.alg_ && b.alg_ && !a.alg_->same_shape(*b.alg_)) throw AlgebraError("poly_mul: algebra mismatch");
  NCPoly r(a.alg_ ? a.alg_ : b.alg_);
  for (const auto& p : a.terms())
    for (const auto& q : b.terms()) {
      Monomial m;
      m.gens = p.gens;
      m.gens.insert(m.gens.end(), q.gens.begin(), q.gens.end());
      m.coeffs.assign(p.coeffs.begin(), p.coeffs.end() - 1);
      m.coeffs.push_back(p.coeffs.back() * q.coeffs.front());
      m.coeffs.insert(m.coeffs.end(), q.coeffs.begin() + 1, q.coeffs.end());
      r.add(m);
    }
  return r;
}

NCPoly operator*(const Element& c, const NCPoly& p) { return NCPoly::constant(c) * p; }
NCPoly operator*(const NCPoly& p, const Element& c) { return p * NCPoly::constant(c); }

std::map<std::vector<int>, cplx> NCPoly::coefficient_tensor(const GeneratorWord& w) const {
  std::map<std::vector<int>, cplx> out;
  auto it = terms_.find(w);
  if (it == terms_.end()) return out;
  for (const auto& t : it->second) {
    std::vector<std::vector<std::pair<int, cplx>>> nz(t.size());
    for (std::size_t s = 0; s < t.size(); ++s)
      for (int i = 0; i < t[s].coords().size(); ++i)
        if (t[s].coords()[i] != cplx(0.0)) nz[s].push_back({i, t[s].coords()[i]});
    std::vector<int> idx(t.size());
    std::vector<std::size_t> pos(t.size(), 0);
    bool empty = std::any_of(nz.begin(), nz.end(), [](const auto& v) { return v.empty(); });
    while (!empty) {
      cplx v = 1.0;
      for (std::size_t s = 0; s < t.size(); ++s) {
        idx[s] = nz[s][pos[s]].first;
        v *= nz[s][pos[s]].second;
      }
      out[idx] += v;
      std::size_t s = 0;
      while (s < t.size() && ++pos[s] == nz[s].size()) pos[s++] = 0;
      if (s == t.size()) break;
    }
  }
  return out;
}

bool NCPoly::approx_equal(const NCPoly& o, double tol) const {
  std::vector<GeneratorWord> ws = words();
  for (const auto& w : o.words())
    if (std::find(ws.begin(), ws.end(), w) == ws.end()) ws.push_back(w);
  for (const auto& w : ws) {
    auto a = coefficient_tensor(w);
    auto b = o.coefficient_tensor(w);
    for (const auto& [k, v] : b) a[k] -= v;
    for (const auto& [k, v] : a)
      if (std::abs(v) > tol) return false;
  }
  return true;
}

std::string NCPoly::to_string(const std::map<int, std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms()) {
    if (!first) os << " + ";
    first = false;
    for (std::size_t i = 0; i < m.coeffs.size(); ++i) {
      os << "(" << ofp::to_string(m.coeffs[i], 4) << ")";
      if (i < m.gens.size()) {
        auto it = names.find(m.gens[i].id);
        os << " " << (it != names.end() ? it->second : "X" + std::to_string(m.gens[i].id))
           << (m.gens[i].starred ? "^*" : "") << " ";
      }
    }
  }
  return os.str();
}

NCPoly poly_mul(const NCPoly& p, const NCPoly& q) { return p * q; }
NCPoly poly_adjoint(const NCPoly& p) { return p.adjoint(); }

MatrixPoly MatrixPoly::adjoint() const {
  MatrixPoly r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j) = at(j, i).adjoint();
  return r;
}

MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b) {
  MatrixPoly r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      NCPoly s(a.at(i, 0).algebra() ? a.at(i, 0).algebra() : b.at(0, j).algebra());
      for (int k = 0; k < 2; ++k) s += a.at(i, k) * b.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

MatrixPoly operator+(const MatrixPoly& a, const MatrixPoly& b) {
  MatrixPoly r;
  for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

NCPoly matrix_lift(const MatrixPoly& entries, const AlgebraPtr& amplified) {
  AlgebraPtr base;
  for (const auto& p : entries.e)
    if (p.algebra()) {
      if (base && !base->same_shape(*p.algebra())) throw AlgebraError("matrix_lift: mixed coefficient algebras");
      base = p.algebra();
    }
  NCPoly out(amplified);
  if (!base) return out;
  std::vector<int> expect;
  for (int d : base->block_dims()) expect.push_back(2 * d);
  if (expect != amplified->block_dims()) throw AlgebraError("matrix_lift: target is not M2 of the entry algebra");
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s)
      for (const auto& m : entries.at(r, s).terms()) {
        Monomial l;
        l.gens = m.gens;
        l.coeffs.push_back(lift_entry(amplified, m.coeffs[0], r, s));
        for (std::size_t i = 1; i < m.coeffs.size(); ++i) l.coeffs.push_back(lift_diag(amplified, m.coeffs[i]));
        out.add(l);
      }
  return out;
}

}  // namespace ofp
