#include "ofp/algebra.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace ofp {

MultiMatrixAlgebra::MultiMatrixAlgebra(std::vector<int> block_dims, std::string label)
    : dims_(std::move(block_dims)), label_(std::move(label)) {
  if (dims_.empty()) throw AlgebraError("algebra needs at least one block");
  for (int d : dims_) {
    if (d <= 0) throw AlgebraError("block dimensions must be positive");
    offsets_.push_back(dim_);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) units_.push_back({static_cast<int>(offsets_.size()) - 1, r, c});
    dim_ += d * d;
  }
  if (label_.empty()) {
    std::ostringstream os;
    for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "+" : "") << "M" << dims_[k];
    label_ = os.str();
  }
}

AlgebraPtr MultiMatrixAlgebra::create(std::vector<int> block_dims, std::string label) {
  return AlgebraPtr(new MultiMatrixAlgebra(std::move(block_dims), std::move(label)));
}

AlgebraPtr make_algebra(std::vector<int> block_dims, std::string label) {
  return MultiMatrixAlgebra::create(std::move(block_dims), std::move(label));
}

int MultiMatrixAlgebra::product_index(int i, int j) const {
  const MatrixUnit& a = units_[i];
  const MatrixUnit& b = units_[j];
  if (a.block != b.block || a.col != b.row) return -1;
  return index_of(a.block, a.row, b.col);
}

std::optional<std::pair<int, cplx>> MultiMatrixAlgebra::sandwich(int i, const Element& x, int j) const {
  const MatrixUnit& a = units_[i];
  const MatrixUnit& b = units_[j];
  if (a.block != b.block) return std::nullopt;
  const int d = dims_[a.block];
  const cplx s = x.coords()[offsets_[a.block] + a.col * d + b.row];
  if (s == cplx(0.0)) return std::nullopt;
  return std::make_pair(index_of(a.block, a.row, b.col), s);
}

Element MultiMatrixAlgebra::zero() const {
  return Element(shared_from_this(), Eigen::VectorXcd::Zero(dim_));
}

Element MultiMatrixAlgebra::one() const {
  Element e = zero();
  for (int k = 0; k < num_blocks(); ++k)
    for (int r = 0; r < dims_[k]; ++r) e.coords()[index_of(k, r, r)] = 1.0;
  return e;
}

Element MultiMatrixAlgebra::basis(int i) const {
  Element e = zero();
  e.coords()[i] = 1.0;
  return e;
}

Element MultiMatrixAlgebra::from_blocks(const std::vector<Eigen::MatrixXcd>& blocks) const {
  if (static_cast<int>(blocks.size()) != num_blocks()) throw AlgebraError("block count mismatch");
  Element e = zero();
  for (int k = 0; k < num_blocks(); ++k) {
    if (blocks[k].rows() != dims_[k] || blocks[k].cols() != dims_[k])
      throw AlgebraError("block " + std::to_string(k) + " has wrong size");
    e.block(k) = blocks[k];
  }
  return e;
}

Element MultiMatrixAlgebra::from_coords(const Eigen::VectorXcd& coords) const {
  if (coords.size() != dim_) throw AlgebraError("coordinate vector has wrong size");
  return Element(shared_from_this(), coords);
}

Element MultiMatrixAlgebra::random(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = cplx(g(rng), g(rng));
  return Element(shared_from_this(), v);
}

Element::Element(AlgebraPtr alg, Eigen::VectorXcd coords) : alg_(std::move(alg)), x_(std::move(coords)) {}

Eigen::Map<const RowMatrix> Element::block(int k) const {
  const int d = alg_->block_dim(k);
  return Eigen::Map<const RowMatrix>(x_.data() + alg_->offset(k), d, d);
}

Eigen::Map<RowMatrix> Element::block(int k) {
  const int d = alg_->block_dim(k);
  return Eigen::Map<RowMatrix>(x_.data() + alg_->offset(k), d, d);
}

std::vector<Eigen::MatrixXcd> Element::blocks() const {
  std::vector<Eigen::MatrixXcd> out;
  for (int k = 0; k < alg_->num_blocks(); ++k) out.emplace_back(block(k));
  return out;
}

Element Element::adjoint() const {
  Element r(alg_, Eigen::VectorXcd(x_.size()));
  for (int k = 0; k < alg_->num_blocks(); ++k) r.block(k) = block(k).adjoint();
  return r;
}

double Element::norm() const {
  double n = 0.0;
  for (int k = 0; k < alg_->num_blocks(); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block_matrix(k));
    n = std::max(n, svd.singularValues()(0));
  }
  return n;
}

double Element::max_abs() const { return x_.size() ? x_.cwiseAbs().maxCoeff() : 0.0; }

cplx Element::trace() const {
  cplx t = 0.0;
  for (int k = 0; k < alg_->num_blocks(); ++k) t += block(k).trace();
  return t;
}

bool Element::is_zero(double tol) const { return max_abs() <= tol; }

bool Element::approx_equal(const Element& other, double tol) const { return distance(*this, other) <= tol; }

static void check_same(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid()) throw AlgebraError("operation on an empty element");
  if (a.algebra() != b.algebra() && !a.algebra()->same_shape(*b.algebra()))
    throw AlgebraError("elements belong to different algebras (" + a.algebra()->label() + " vs " +
                       b.algebra()->label() + ")");
}

Element& Element::operator+=(const Element& o) {
  check_same(*this, o);
  x_ += o.x_;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same(*this, o);
  x_ -= o.x_;
  return *this;
}

Element& Element::operator*=(cplx s) {
  x_ *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  check_same(a, b);
  Element r(a.algebra(), Eigen::VectorXcd(a.coords().size()));
  for (int k = 0; k < a.algebra()->num_blocks(); ++k) r.block(k).noalias() = a.block(k) * b.block(k);
  return r;
}

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

double distance(const Element& a, const Element& b) {
  check_same(a, b);
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff();
}

std::string to_string(const Element& e, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (int k = 0; k < e.algebra()->num_blocks(); ++k) {
    if (k) os << " (+) ";
    auto b = e.block(k);
    os << "[";
    for (int r = 0; r < b.rows(); ++r) {
      if (r) os << "; ";
      for (int c = 0; c < b.cols(); ++c) {
        if (c) os << ", ";
        const cplx z = b(r, c);
        if (std::abs(z.imag()) < 1e-14)
          os << z.real();
        else
          os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
      }
    }
    os << "]";
  }
  return os.str();
}

LinearMap::LinearMap(AlgebraPtr source, AlgebraPtr target, Eigen::MatrixXcd matrix, std::string label)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)), label_(std::move(label)) {
  if (m_.rows() != tgt_->dim() || m_.cols() != src_->dim()) throw AlgebraError("linear map has wrong shape");
}

LinearMap LinearMap::identity(AlgebraPtr alg) {
  const int n = alg->dim();
  return LinearMap(alg, alg, Eigen::MatrixXcd::Identity(n, n), "id");
}

LinearMap LinearMap::zero(AlgebraPtr source, AlgebraPtr target) {
  const int r = target->dim(), c = source->dim();
  return LinearMap(std::move(source), std::move(target), Eigen::MatrixXcd::Zero(r, c), "0");
}

Element LinearMap::operator()(const Element& x) const {
  if (!x.valid() || !src_->same_shape(*x.algebra()))
    throw AlgebraError("map " + label_ + " applied to an element of the wrong algebra");
  return Element(tgt_, m_ * x.coords());
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  if (!inner.tgt_->same_shape(*src_)) throw AlgebraError("cannot compose maps between mismatched algebras");
  return LinearMap(inner.src_, tgt_, m_ * inner.m_, label_ + "o" + inner.label_);
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
  if (!src_->same_shape(*o.src_) || !tgt_->same_shape(*o.tgt_)) throw AlgebraError("cannot add maps of different shape");
  return LinearMap(src_, tgt_, m_ + o.m_, label_ + "+" + o.label_);
}

LinearMap LinearMap::operator*(cplx s) const { return LinearMap(src_, tgt_, m_ * s, label_); }

bool LinearMap::is_zero(double tol) const { return m_.size() == 0 || m_.cwiseAbs().maxCoeff() <= tol; }

bool LinearMap::is_identity(double tol) const {
  if (m_.rows() != m_.cols()) return false;
  return (m_ - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool LinearMap::approx_equal(const LinearMap& o, double tol) const {
  if (m_.rows() != o.m_.rows() || m_.cols() != o.m_.cols()) return false;
  return (m_ - o.m_).cwiseAbs().maxCoeff() <= tol;
}

double AlgebraEmbedding::homomorphism_defect() const {
  double v = distance(map(source->one()), target->one());
  for (int i = 0; i < source->dim(); ++i) {
    const Element ei = source->basis(i);
    v = std::max(v, distance(map(ei.adjoint()), map(ei).adjoint()));
    for (int j = 0; j < source->dim(); ++j) {
      const Element ej = source->basis(j);
      v = std::max(v, distance(map(ei * ej), map(ei) * map(ej)));
    }
  }
  return v;
}

AlgebraPtr amplify2(const AlgebraPtr& base) {
  std::vector<int> dims;
  for (int d : base->block_dims()) dims.push_back(2 * d);
  return make_algebra(dims, "M2(" + base->label() + ")");
}

Element lift_entry(const AlgebraPtr& amplified, const Element& b, int r, int s) {
  Element m = amplified->zero();
  const AlgebraPtr& base = b.algebra();
  for (int k = 0; k < base->num_blocks(); ++k) {
    const int d = base->block_dim(k);
    m.block(k).block(r * d, s * d, d, d) = b.block(k);
  }
  return m;
}

Element lift_diag(const AlgebraPtr& amplified, const Element& b) {
  return lift_entry(amplified, b, 0, 0) + lift_entry(amplified, b, 1, 1);
}

Element entry_of(const AlgebraPtr& base, const Element& m, int r, int s) {
  Element b = base->zero();
  for (int k = 0; k < base->num_blocks(); ++k) {
    const int d = base->block_dim(k);
    b.block(k) = m.block(k).block(r * d, s * d, d, d);
  }
  return b;
}

Element join2(const AlgebraPtr& amplified, const Element& b11, const Element& b12, const Element& b21,
              const Element& b22) {
  return lift_entry(amplified, b11, 0, 0) + lift_entry(amplified, b12, 0, 1) + lift_entry(amplified, b21, 1, 0) +
         lift_entry(amplified, b22, 1, 1);
}

LinearMap amplify_map(const LinearMap& f, const AlgebraPtr& amplified_source, const AlgebraPtr& amplified_target) {
  const AlgebraPtr& bs = f.source();
  return LinearMap::from_function(
      amplified_source, amplified_target,
      [&](const Element& m) {
        Element out = amplified_target->zero();
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) out += lift_entry(amplified_target, f(entry_of(bs, m, r, s)), r, s);
        return out;
      },
      f.label() + "(x)id2");
}

}  // namespace ofp
