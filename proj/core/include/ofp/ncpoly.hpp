#pragma once

#include "ofp/algebra.hpp"

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

namespace ofp {

// Formal indeterminate X_id or its adjoint X_id^*.
struct Generator {
  int id = 0;
  bool starred = false;

  Generator adjoint() const { return {id, !starred}; }
  auto operator<=>(const Generator&) const = default;
};

using GeneratorWord = std::vector<Generator>;

// c_0 X_{i_1} c_1 ... X_{i_m} c_m
struct Monomial {
  std::vector<Element> coeffs;
  GeneratorWord gens;

  int degree() const { return static_cast<int>(gens.size()); }
  Monomial adjoint() const;
};

Monomial make_monomial(const std::vector<Element>& coeffs, const GeneratorWord& gens);

class NCPoly {
 public:
  NCPoly() = default;
  explicit NCPoly(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static NCPoly constant(const Element& c);
  static NCPoly generator(const AlgebraPtr& alg, Generator g);
  static NCPoly from_monomial(const Monomial& m);

  const AlgebraPtr& algebra() const { return alg_; }
  bool valid() const { return static_cast<bool>(alg_); }

  void add(const Monomial& m);
  std::vector<Monomial> terms() const;
  int num_words() const { return static_cast<int>(terms_.size()); }
  std::vector<GeneratorWord> words() const;
  int degree() const;  // -1 for the zero polynomial
  bool is_zero(double tol = 0.0) const;
  Element constant_term() const;

  NCPoly adjoint() const;
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(cplx s);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, cplx s) { return a *= s; }
  friend NCPoly operator*(cplx s, NCPoly a) { return a *= s; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const Element& c, const NCPoly& p);
  friend NCPoly operator*(const NCPoly& p, const Element& c);

  // Coefficient tensor of a word on the matrix-unit basis (sparse, exact zeros dropped).
  std::map<std::vector<int>, cplx> coefficient_tensor(const GeneratorWord& w) const;
  bool approx_equal(const NCPoly& o, double tol) const;

  std::string to_string(const std::map<int, std::string>& names = {}) const;

 private:
  void normalize_word(const GeneratorWord& w);

  AlgebraPtr alg_;
  std::map<GeneratorWord, std::vector<std::vector<Element>>> terms_;
};

NCPoly poly_mul(const NCPoly& p, const NCPoly& q);
NCPoly poly_adjoint(const NCPoly& p);

// 2x2 matrix of polynomials over B, entries row-major (11, 12, 21, 22).
struct MatrixPoly {
  std::array<NCPoly, 4> e;

  const NCPoly& at(int r, int s) const { return e[2 * r + s]; }
  NCPoly& at(int r, int s) { return e[2 * r + s]; }
  MatrixPoly adjoint() const;  // entrywise adjoint + transpose
  friend MatrixPoly operator*(const MatrixPoly& a, const MatrixPoly& b);
  friend MatrixPoly operator+(const MatrixPoly& a, const MatrixPoly& b);
};

// Polynomial over M_2(B): entry (r,s) monomial c0 g1 c1 ... becomes (c0 (x) e_rs)(g1)(c1 (x) 1)...
NCPoly matrix_lift(const MatrixPoly& entries, const AlgebraPtr& amplified);

}  // namespace ofp
