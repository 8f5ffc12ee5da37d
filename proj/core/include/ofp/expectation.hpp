#pragma once

#include "ofp/algebra.hpp"
#include "ofp/report.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ofp {

inline constexpr double kExactTol = 1e-9;

// Linear map E on B with image D. Expectation invariants are checked at construction
// unless `validate` is false, in which case the same type carries a general linear map
// (covariance maps, amplified maps).
class CondExpectation {
 public:
  CondExpectation() = default;
  CondExpectation(LinearMap map, std::optional<AlgebraEmbedding> range_embedding, bool validate = true,
                  double tol = kExactTol);

  static CondExpectation identity(const AlgebraPtr& alg);
  static CondExpectation general(LinearMap map);  // no invariant checks

  Element operator()(const Element& x) const { return map_(x); }
  const LinearMap& map() const { return map_; }
  const AlgebraPtr& domain() const { return map_.source(); }
  const std::optional<AlgebraEmbedding>& range_embedding() const { return emb_; }
  // Spanning set of the image D inside B.
  const std::vector<Element>& range_basis() const { return range_; }
  bool validated() const { return validated_; }
  const std::string& label() const { return map_.label(); }

 private:
  LinearMap map_;
  std::optional<AlgebraEmbedding> emb_;
  std::vector<Element> range_;
  bool validated_ = false;
};

// Diagonal positions (block, index) grouped into weighted traces, or whole blocks kept.
struct PinchGroup {
  bool keep_block = false;
  int block = -1;                              // used when keep_block
  std::vector<std::pair<int, int>> positions;  // (block, diagonal index)
  std::vector<double> weights;
};

CondExpectation make_pinching_expectation(const AlgebraPtr& B, const std::vector<PinchGroup>& partition,
                                          std::string label = {});

// Common instances.
CondExpectation normalized_trace_expectation(const AlgebraPtr& B);   // one group, uniform weights
CondExpectation coordinate_average_expectation(const AlgebraPtr& B); // C^k -> C, requires 1x1 blocks
CondExpectation diagonal_pinching(const AlgebraPtr& B);              // onto the diagonal subalgebra

struct ExpectationDiagnostics {
  double idempotence = 0.0;
  double fixes_range = 0.0;
  double bimodule = 0.0;
  double gram_min_eigenvalue = 0.0;  // of [Tr E(b_i^* b_j)]
  double gram_hermitian_defect = 0.0;
};

ExpectationDiagnostics expectation_diagnostics(const LinearMap& map, const std::vector<Element>& range_basis);
std::vector<Element> image_basis(const LinearMap& map, double tol = 1e-10);

// Pass requires idempotence, bimodule property and positive semidefinite Gram form within tol;
// faithfulness (positive definite Gram form) is reported as a separate check.
VerificationReport verify_expectation(const CondExpectation& E, double tol = kExactTol);

CondExpectation expectation_compose(const CondExpectation& outer, const CondExpectation& inner);

// Trace used for the Gram form: sum of unnormalized block traces.
cplx canonical_trace(const Element& x);

}  // namespace ofp
