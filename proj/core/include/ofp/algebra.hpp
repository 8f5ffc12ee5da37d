#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ofp {

using cplx = std::complex<double>;
using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultiMatrixAlgebra;
using AlgebraPtr = std::shared_ptr<const MultiMatrixAlgebra>;

// Matrix unit e_{row,col} inside block `block`.
struct MatrixUnit {
  int block;
  int row;
  int col;
};

class Element;

// Direct sum of full matrix algebras M_{d_0} + ... + M_{d_{k-1}}.
// Canonical basis: matrix units, enumerated block by block, row-major.
class MultiMatrixAlgebra : public std::enable_shared_from_this<MultiMatrixAlgebra> {
 public:
  static AlgebraPtr create(std::vector<int> block_dims, std::string label = {});

  const std::vector<int>& block_dims() const { return dims_; }
  const std::string& label() const { return label_; }
  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int block_dim(int k) const { return dims_[k]; }
  int offset(int k) const { return offsets_[k]; }
  int dim() const { return dim_; }

  MatrixUnit unit(int i) const { return units_[i]; }
  int index_of(int block, int row, int col) const { return offsets_[block] + row * dims_[block] + col; }

  // e_i e_j = e_t or 0 (returns -1)
  int product_index(int i, int j) const;
  // e_i x e_j = s e_t, or nullopt when it vanishes identically
  std::optional<std::pair<int, cplx>> sandwich(int i, const Element& x, int j) const;

  bool same_shape(const MultiMatrixAlgebra& other) const { return dims_ == other.dims_; }

  Element zero() const;
  Element one() const;
  Element basis(int i) const;
  Element from_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const;
  Element from_coords(const Eigen::VectorXcd& coords) const;
  Element random(std::uint64_t seed) const;

 private:
  MultiMatrixAlgebra(std::vector<int> block_dims, std::string label);
  std::vector<int> dims_;
  std::vector<int> offsets_;
  std::vector<MatrixUnit> units_;
  int dim_ = 0;
  std::string label_;
};

AlgebraPtr make_algebra(std::vector<int> block_dims, std::string label = {});

// A tuple of complex block matrices, stored as coordinates on the matrix-unit basis.
class Element {
 public:
  Element() = default;
  Element(AlgebraPtr alg, Eigen::VectorXcd coords);

  const AlgebraPtr& algebra() const { return alg_; }
  const Eigen::VectorXcd& coords() const { return x_; }
  Eigen::VectorXcd& coords() { return x_; }
  bool valid() const { return static_cast<bool>(alg_); }

  Eigen::Map<const RowMatrix> block(int k) const;
  Eigen::Map<RowMatrix> block(int k);
  Eigen::MatrixXcd block_matrix(int k) const { return block(k); }
  std::vector<Eigen::MatrixXcd> blocks() const;

  Element adjoint() const;
  double norm() const;       // max operator norm over blocks
  double max_abs() const;    // max |coordinate|
  cplx trace() const;        // sum of block traces
  bool is_zero(double tol = 0.0) const;
  bool approx_equal(const Element& other, double tol) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(cplx s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, cplx s) { return a *= s; }
  friend Element operator*(cplx s, Element a) { return a *= s; }
  friend Element operator-(Element a) { return a *= cplx(-1.0); }
  friend Element operator*(const Element& a, const Element& b);

 private:
  AlgebraPtr alg_;
  Eigen::VectorXcd x_;
};

Element commutator(const Element& a, const Element& b);
double distance(const Element& a, const Element& b);
std::string to_string(const Element& e, int precision = 6);

// Linear map between algebras, represented by its matrix on the canonical bases.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(AlgebraPtr source, AlgebraPtr target, Eigen::MatrixXcd matrix, std::string label = {});

  template <class F>
  static LinearMap from_function(AlgebraPtr source, AlgebraPtr target, F&& f, std::string label = {}) {
    Eigen::MatrixXcd m(target->dim(), source->dim());
    for (int i = 0; i < source->dim(); ++i) m.col(i) = f(source->basis(i)).coords();
    return LinearMap(std::move(source), std::move(target), std::move(m), std::move(label));
  }
  static LinearMap identity(AlgebraPtr alg);
  static LinearMap zero(AlgebraPtr source, AlgebraPtr target);

  Element operator()(const Element& x) const;
  LinearMap compose(const LinearMap& inner) const;  // (*this) o inner
  LinearMap operator+(const LinearMap& o) const;
  LinearMap operator*(cplx s) const;

  bool valid() const { return static_cast<bool>(src_); }
  const AlgebraPtr& source() const { return src_; }
  const AlgebraPtr& target() const { return tgt_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  bool is_zero(double tol = 0.0) const;
  bool is_identity(double tol = 1e-12) const;
  bool approx_equal(const LinearMap& o, double tol) const;

 private:
  AlgebraPtr src_;
  AlgebraPtr tgt_;
  Eigen::MatrixXcd m_;
  std::string label_;
};

// Unital *-homomorphism D -> B given on the basis of D.
struct AlgebraEmbedding {
  AlgebraPtr source;
  AlgebraPtr target;
  LinearMap map;

  Element operator()(const Element& d) const { return map(d); }
  // max violation of unit, adjoint and multiplicativity on basis pairs
  double homomorphism_defect() const;
};

// 2x2 amplification B -> M_2(B): block k of M_2(B) has size 2 d_k and holds [[b11,b12],[b21,b22]].
AlgebraPtr amplify2(const AlgebraPtr& base);
Element lift_entry(const AlgebraPtr& amplified, const Element& b, int r, int s);
Element lift_diag(const AlgebraPtr& amplified, const Element& b);
Element entry_of(const AlgebraPtr& base, const Element& m, int r, int s);
Element join2(const AlgebraPtr& amplified, const Element& b11, const Element& b12, const Element& b21,
              const Element& b22);
// Entrywise amplification f (x) id_2 of a map on B.
LinearMap amplify_map(const LinearMap& f, const AlgebraPtr& amplified_source, const AlgebraPtr& amplified_target);

}  // namespace ofp
