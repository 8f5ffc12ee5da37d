#include "ofp/frames.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace ofp {

Element module_inner(const CondExpectation& E, const Element& x, const Element& y) { return E(x.adjoint() * y); }

FrameResult compute_tight_frame(const CondExpectation& E, const std::vector<Element>& spanning, double tol) {
  const AlgebraPtr& B = E.domain();
  const int n = B->dim();
  std::vector<Element> g = spanning;
  if (g.empty())
    for (int i = 0; i < n; ++i) g.push_back(B->basis(i));

  auto apply_S = [&](const Element& x) {
    Element s = B->zero();
    for (const auto& gk : g) s += gk * E(gk.adjoint() * x);
    return s;
  };
  Eigen::MatrixXcd S(n, n), G(n, n);
  for (int j = 0; j < n; ++j) S.col(j) = apply_S(B->basis(j)).coords();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = canonical_trace(E(B->basis(i).adjoint() * B->basis(j)));

  FrameResult out;
  double right_defect = 0.0;
  for (const auto& d : E.range_basis())
    for (int j = 0; j < n; ++j) {
      const Element b = B->basis(j);
      right_defect = std::max(right_defect, distance(apply_S(b * d), apply_S(b) * d));
    }
  if (right_defect > tol) throw AlgebraError("frame operator is not right D-linear");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs((G + G.adjoint()) / 2.0);
  if (gs.eigenvalues().minCoeff() < kFrameEigenFloor)
    throw AlgebraError("expectation is not faithful: module inner product is degenerate");
  const Eigen::VectorXd gl = gs.eigenvalues();
  const Eigen::MatrixXcd Gh = gs.eigenvectors() * gl.cwiseSqrt().asDiagonal() * gs.eigenvectors().adjoint();
  const Eigen::MatrixXcd Gih =
      gs.eigenvectors() * gl.cwiseSqrt().cwiseInverse().asDiagonal() * gs.eigenvectors().adjoint();
  // S is self-adjoint for <x, y> = x^H G y, so T = G^{1/2} S G^{-1/2} is Hermitian.
  const Eigen::MatrixXcd T = Gh * S * Gih;
  const double herm_defect = (T - T.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ts((T + T.adjoint()) / 2.0);
  out.min_eigenvalue = ts.eigenvalues().minCoeff();
  if (out.min_eigenvalue < kFrameEigenFloor) throw AlgebraError("frame operator is numerically singular");
  const Eigen::MatrixXcd Sih = Gih * ts.eigenvectors() * ts.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                               ts.eigenvectors().adjoint() * Gh;

  out.frame.inclusion = E;
  for (const auto& gk : g) out.frame.vectors.push_back(B->from_coords(Sih * gk.coords()));
  out.report.title = "tight frame for " + B->label() + " over the range of " + E.label();
  out.report.add("frame_operator_self_adjoint", herm_defect, tol);
  out.report.add("frame_operator_right_linear", right_defect, tol);
  out.report.add("frame_operator_positive", out.min_eigenvalue >= kFrameEigenFloor ? 0.0 : 1.0, 0.0);
  out.report.add("reconstruction", frame_reconstruction_residual(out.frame), tol);
  return out;
}

double frame_reconstruction_residual(const ModuleFrame& frame) {
  const CondExpectation& E = frame.inclusion;
  const AlgebraPtr& B = E.domain();
  double r = 0.0;
  for (int i = 0; i < B->dim(); ++i) {
    const Element x = B->basis(i);
    Element s = B->zero();
    for (const auto& f : frame.vectors) s += f * E(f.adjoint() * x);
    r = std::max(r, distance(s, x));
  }
  return r;
}

namespace {

Element frame_index(const ModuleFrame& f) {
  Element s = f.inclusion.domain()->zero();
  for (const auto& v : f.vectors) s += v * v.adjoint();
  return s;
}

}  // namespace

IndexValue compute_index(const CondExpectation& E, std::uint64_t seed, double tol) {
  const AlgebraPtr& B = E.domain();
  const int n = B->dim();
  IndexValue out;
  FrameResult fr = compute_tight_frame(E, {}, tol);
  out.frame = fr.frame;
  out.value = frame_index(out.frame);
  out.report.title = "index of " + E.label() + " on " + B->label();
  out.report.merge(fr.report, "frame.");

  double central = 0.0;
  for (int i = 0; i < n; ++i) central = std::max(central, commutator(out.value, B->basis(i)).max_abs());
  out.report.add("index_central", central, tol);
  out.report.add("index_self_adjoint", distance(out.value, out.value.adjoint()), tol);
  double min_eig = INFINITY;
  for (const auto& blk : out.value.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((blk + blk.adjoint()) / 2.0);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  out.report.add("index_positive_invertible", min_eig >= kFrameEigenFloor ? 0.0 : kFrameEigenFloor - min_eig, 0.0);

  // Second spanning set: random invertible recombination of the canonical basis.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R(i, j) = cplx(nd(rng), nd(rng));
  R += Eigen::MatrixXcd::Identity(n, n) * static_cast<double>(n);
  std::vector<Element> alt;
  for (int k = 0; k < n; ++k) alt.push_back(B->from_coords(R.col(k)));
  FrameResult fr2 = compute_tight_frame(E, alt, tol);
  out.report.add("alternate_frame_reconstruction", frame_reconstruction_residual(fr2.frame), 1e-8);
  out.report.add("index_frame_independent", distance(frame_index(fr2.frame), out.value), 1e-8);
  out.report.add_value("index", out.value);
  return out;
}

}  // namespace ofp
