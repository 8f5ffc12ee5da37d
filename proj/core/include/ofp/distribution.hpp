#pragma once

#include "ofp/algebra.hpp"
#include "ofp/ncpoly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ofp {

enum class VariableKind { Semicircular, Circular };

struct VariableDecl {
  std::string name;
  int id = 0;
  VariableKind kind = VariableKind::Semicircular;
  int family = 0;
};

// Joint *-distribution given by cumulants over a coefficient algebra C: first cumulants and
// cumulants of order >= 3 vanish; k2(g_i (x) c g_j) = cov(g_i, g_j)(c). The outer map E_B on C
// (identity when B = C) turns C-valued moments into B-valued ones.
class DistributionSpec {
 public:
  DistributionSpec() = default;
  explicit DistributionSpec(AlgebraPtr C, std::optional<LinearMap> outer = std::nullopt);

  // Returns the generator id. family < 0 opens a new free family.
  int add_semicircular(const std::string& name, const LinearMap& eta, int family = -1);
  // Circular c = (X + iY)/sqrt(2): cov(c, c*) = cov(c*, c) = eta, cov(c, c) = cov(c*, c*) = 0.
  int add_circular(const std::string& name, const LinearMap& eta, int family = -1);
  // Free-standing variable with no covariances yet.
  int add_variable(const std::string& name, VariableKind kind, int family = -1);
  void set_covariance(Generator a, Generator b, const LinearMap& map);

  const AlgebraPtr& algebra() const { return alg_; }
  const LinearMap& outer() const { return outer_; }
  bool outer_is_identity() const { return outer_identity_; }
  void set_outer(const LinearMap& outer);

  const std::vector<VariableDecl>& variables() const { return vars_; }
  const VariableDecl& variable(int id) const;
  bool has_variable(int id) const { return id >= 0 && id < static_cast<int>(vars_.size()); }
  std::optional<Generator> find(const std::string& name) const;  // "c*" resolves to the adjoint
  int family_of(int id) const { return variable(id).family; }
  int num_families() const { return next_family_; }

  // Self-adjoint generators lose their star flag.
  Generator canonical(Generator g) const;
  NCPoly canonicalize(const NCPoly& p) const;
  // All distinct generators: X for semicircular, c and c* for circular.
  std::vector<Generator> generators() const;

  // nullptr when the covariance is zero.
  const LinearMap* covariance(Generator a, Generator b) const;
  const std::map<std::pair<Generator, Generator>, LinearMap>& covariances() const { return cov_; }

  NCPoly poly(Generator g) const { return NCPoly::generator(alg_, canonical(g)); }
  std::string name_of(Generator g) const;
  std::map<int, std::string> names() const;

  // Spec over M_2(C) for the generators g (x) 1: covariances cov (x) id_2, outer E_B (x) id_2.
  DistributionSpec amplified(AlgebraPtr amplified_algebra = nullptr) const;

 private:
  void check_map(const LinearMap& m, const std::string& what) const;

  AlgebraPtr alg_;
  LinearMap outer_;
  bool outer_identity_ = true;
  std::vector<VariableDecl> vars_;
  std::map<std::pair<Generator, Generator>, LinearMap> cov_;
  int next_family_ = 0;
};

// Amplified covariance eta+: [[b11,b12],[b21,b22]] -> diag(eta(b11 + b22), eta(b11 + b22)).
LinearMap eta_plus(const LinearMap& eta, AlgebraPtr amplified = nullptr);

// Block-diagonal map on M_2(C): diag(p(c11) + q(c22), r(c11) + s(c22)) for maps {p, q, r, s};
// invalid (default-constructed) maps count as zero.
LinearMap diagonal_block_map(const std::array<LinearMap, 4>& pqrs, const AlgebraPtr& base, AlgebraPtr amplified);

}  // namespace ofp
