#include "ofp/expectation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ofp {

cplx canonical_trace(const Element& x) { return x.trace(); }

std::vector<Element> image_basis(const LinearMap& map, double tol) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(map.matrix());
  qr.setThreshold(tol);
  const int r = static_cast<int>(qr.rank());
  Eigen::MatrixXcd q = qr.householderQ();
  std::vector<Element> out;
  for (int i = 0; i < r; ++i) out.push_back(map.target()->from_coords(q.col(i)));
  return out;
}

ExpectationDiagnostics expectation_diagnostics(const LinearMap& E, const std::vector<Element>& range) {
  ExpectationDiagnostics d;
  const AlgebraPtr& B = E.source();
  const Eigen::MatrixXcd& m = E.matrix();
  d.idempotence = (m * m - m).cwiseAbs().maxCoeff();
  for (const auto& r : range) d.fixes_range = std::max(d.fixes_range, distance(E(r), r));
  for (const auto& d1 : range)
    for (const auto& d2 : range)
      for (int i = 0; i < B->dim(); ++i) {
        const Element b = B->basis(i);
        d.bimodule = std::max(d.bimodule, distance(E(d1 * b * d2), d1 * E(b) * d2));
      }
  const int n = B->dim();
  Eigen::MatrixXcd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = canonical_trace(E(B->basis(i).adjoint() * B->basis(j)));
  d.gram_hermitian_defect = (G - G.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((G + G.adjoint()) / 2.0);
  d.gram_min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

CondExpectation::CondExpectation(LinearMap map, std::optional<AlgebraEmbedding> range_embedding, bool validate,
                                 double tol)
    : map_(std::move(map)), emb_(std::move(range_embedding)) {
  if (emb_) {
    for (int i = 0; i < emb_->source->dim(); ++i) range_.push_back((*emb_)(emb_->source->basis(i)));
  } else if (map_.source()->same_shape(*map_.target())) {
    range_ = image_basis(map_);
  }
  if (validate) {
    if (!map_.source()->same_shape(*map_.target()))
      throw AlgebraError("conditional expectation must map an algebra into itself");
    const auto d = expectation_diagnostics(map_, range_);
    std::ostringstream why;
    if (d.idempotence > tol) why << "idempotence violated by " << d.idempotence << "; ";
    if (d.fixes_range > tol) why << "range not fixed (" << d.fixes_range << "); ";
    if (d.bimodule > tol) why << "bimodule property violated by " << d.bimodule << "; ";
    if (d.gram_min_eigenvalue < -tol || d.gram_hermitian_defect > tol) why << "not positive; ";
    if (emb_) {
      const double h = emb_->homomorphism_defect();
      if (h > tol) why << "range embedding is not a unital *-homomorphism (" << h << "); ";
    }
    if (!why.str().empty()) throw AlgebraError("invalid conditional expectation " + map_.label() + ": " + why.str());
    validated_ = true;
  }
}

CondExpectation CondExpectation::identity(const AlgebraPtr& alg) {
  AlgebraEmbedding emb{alg, alg, LinearMap::identity(alg)};
  return CondExpectation(LinearMap::identity(alg), emb, true);
}

CondExpectation CondExpectation::general(LinearMap map) { return CondExpectation(std::move(map), std::nullopt, false); }

CondExpectation make_pinching_expectation(const AlgebraPtr& B, const std::vector<PinchGroup>& partition,
                                          std::string label) {
  if (partition.empty()) throw AlgebraError("partition must contain at least one group");
  std::vector<int> kept(B->num_blocks(), 0);
  std::set<std::pair<int, int>> seen;
  std::vector<int> touched(B->num_blocks(), 0);
  for (const auto& g : partition) {
    if (g.keep_block) {
      if (g.block < 0 || g.block >= B->num_blocks()) throw AlgebraError("kept block index out of range");
      if (kept[g.block]++) throw AlgebraError("block kept twice");
      continue;
    }
    if (g.positions.empty()) throw AlgebraError("trace group without positions");
    if (g.positions.size() != g.weights.size()) throw AlgebraError("one weight per position required");
    double sum = 0.0;
    for (std::size_t p = 0; p < g.positions.size(); ++p) {
      const auto [k, i] = g.positions[p];
      if (k < 0 || k >= B->num_blocks() || i < 0 || i >= B->block_dim(k))
        throw AlgebraError("position (" + std::to_string(k) + "," + std::to_string(i) + ") outside the algebra");
      if (!seen.insert({k, i}).second) throw AlgebraError("position listed in two groups");
      if (!(g.weights[p] > 0.0)) throw AlgebraError("weights must be positive");
      sum += g.weights[p];
      touched[k] = 1;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw AlgebraError("weights of a group must sum to 1 (got " + std::to_string(sum) + ")");
  }
  for (int k = 0; k < B->num_blocks(); ++k) {
    if (kept[k] && touched[k]) throw AlgebraError("block both kept and pinched");
    if (!kept[k])
      for (int i = 0; i < B->block_dim(k); ++i)
        if (!seen.count({k, i}))
          throw AlgebraError("partition inconsistent with blocks: position (" + std::to_string(k) + "," +
                             std::to_string(i) + ") not covered");
  }

  std::vector<int> ddims;
  for (const auto& g : partition) ddims.push_back(g.keep_block ? B->block_dim(g.block) : 1);
  AlgebraPtr D = make_algebra(ddims, "D");

  auto apply = [&](const Element& b) {
    Element out = B->zero();
    for (const auto& g : partition) {
      if (g.keep_block) {
        out.block(g.block) = b.block(g.block);
        continue;
      }
      cplx s = 0.0;
      for (std::size_t p = 0; p < g.positions.size(); ++p)
        s += g.weights[p] * b.block(g.positions[p].first)(g.positions[p].second, g.positions[p].second);
      for (const auto& [k, i] : g.positions) out.block(k)(i, i) = s;
    }
    return out;
  };
  if (label.empty()) label = "pinch";
  LinearMap E = LinearMap::from_function(B, B, apply, label);

  auto embed = [&](const Element& d) {
    Element out = B->zero();
    for (std::size_t gi = 0; gi < partition.size(); ++gi) {
      const auto& g = partition[gi];
      if (g.keep_block)
        out.block(g.block) = d.block(static_cast<int>(gi));
      else
        for (const auto& [k, i] : g.positions) out.block(k)(i, i) = d.block(static_cast<int>(gi))(0, 0);
    }
    return out;
  };
  AlgebraEmbedding emb{D, B, LinearMap::from_function(D, B, embed, "embed")};
  return CondExpectation(E, emb, true);
}

CondExpectation normalized_trace_expectation(const AlgebraPtr& B) {
  PinchGroup g;
  int total = 0;
  for (int d : B->block_dims()) total += d;
  for (int k = 0; k < B->num_blocks(); ++k)
    for (int i = 0; i < B->block_dim(k); ++i) {
      g.positions.push_back({k, i});
      g.weights.push_back(1.0 / total);
    }
  return make_pinching_expectation(B, {g}, "tr");
}

CondExpectation coordinate_average_expectation(const AlgebraPtr& B) {
  for (int d : B->block_dims())
    if (d != 1) throw AlgebraError("coordinate averaging needs a commutative algebra C^k");
  return normalized_trace_expectation(B);
}

CondExpectation diagonal_pinching(const AlgebraPtr& B) {
  std::vector<PinchGroup> parts;
  for (int k = 0; k < B->num_blocks(); ++k)
    for (int i = 0; i < B->block_dim(k); ++i) {
      PinchGroup g;
      g.positions = {{k, i}};
      g.weights = {1.0};
      parts.push_back(g);
    }
  return make_pinching_expectation(B, parts, "diag");
}

VerificationReport verify_expectation(const CondExpectation& E, double tol) {
  VerificationReport rep;
  rep.title = "expectation " + E.label();
  const auto d = expectation_diagnostics(E.map(), E.range_basis());
  rep.add("idempotence", std::max(d.idempotence, d.fixes_range), tol, "E(E(x)) != E(x)");
  rep.add("bimodule", d.bimodule, tol, "E(d1 b d2) != d1 E(b) d2");
  rep.add("positivity", std::max(-d.gram_min_eigenvalue, d.gram_hermitian_defect), tol,
          "Gram form [Tr E(b_i* b_j)] not positive semidefinite");
  // Faithfulness is informational: it does not gate the verdict.
  const bool faithful = d.gram_min_eigenvalue > tol;
  rep.notes.push_back(std::string("faithful: ") + (faithful ? "yes" : "no") + " (min Gram eigenvalue " +
                      std::to_string(d.gram_min_eigenvalue) + ")");
  rep.values.push_back({"gram_min_eigenvalue", {Eigen::MatrixXcd::Constant(1, 1, d.gram_min_eigenvalue)}});
  return rep;
}

CondExpectation expectation_compose(const CondExpectation& outer, const CondExpectation& inner) {
  if (!outer.domain()->same_shape(*inner.domain()))
    throw AlgebraError("expectation_compose: mismatched algebras " + outer.domain()->label() + " and " +
                       inner.domain()->label());
  for (const auto& r : outer.range_basis())
    if (distance(inner(r), r) > kExactTol)
      throw AlgebraError("expectation_compose: range of outer is not contained in range of inner");
  LinearMap m = outer.map().compose(inner.map());
  return CondExpectation(m, outer.range_embedding(), true);
}

}  // namespace ofp
