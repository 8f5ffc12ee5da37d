#include "ofp/distribution.hpp"

namespace ofp {

DistributionSpec::DistributionSpec(AlgebraPtr C, std::optional<LinearMap> outer) : alg_(std::move(C)) {
  if (!alg_) throw AlgebraError("distribution spec needs a coefficient algebra");
  if (outer)
    set_outer(*outer);
  else
    outer_ = LinearMap::identity(alg_);
}

void DistributionSpec::set_outer(const LinearMap& outer) {
  check_map(outer, "outer expectation");
  outer_ = outer;
  outer_identity_ = outer.is_identity();
}

void DistributionSpec::check_map(const LinearMap& m, const std::string& what) const {
  if (!m.valid() || !m.source()->same_shape(*alg_) || !m.target()->same_shape(*alg_))
    throw AlgebraError(what + " must be a linear map on " + alg_->label());
}

int DistributionSpec::add_variable(const std::string& name, VariableKind kind, int family) {
  if (name.empty()) throw AlgebraError("variable needs a name");
  for (const auto& v : vars_)
    if (v.name == name) throw AlgebraError("duplicate variable name '" + name + "'");
  if (family < 0) family = next_family_;
  next_family_ = std::max(next_family_, family + 1);
  const int id = static_cast<int>(vars_.size());
  vars_.push_back({name, id, kind, family});
  return id;
}

int DistributionSpec::add_semicircular(const std::string& name, const LinearMap& eta, int family) {
  const int id = add_variable(name, VariableKind::Semicircular, family);
  set_covariance({id, false}, {id, false}, eta);
  return id;
}

int DistributionSpec::add_circular(const std::string& name, const LinearMap& eta, int family) {
  const int id = add_variable(name, VariableKind::Circular, family);
  set_covariance({id, false}, {id, true}, eta);
  set_covariance({id, true}, {id, false}, eta);
  return id;
}

void DistributionSpec::set_covariance(Generator a, Generator b, const LinearMap& map) {
  if (!has_variable(a.id) || !has_variable(b.id)) throw AlgebraError("covariance references an unknown generator");
  check_map(map, "covariance");
  cov_[{canonical(a), canonical(b)}] = map;
}

const VariableDecl& DistributionSpec::variable(int id) const {
  if (!has_variable(id)) throw AlgebraError("unknown generator id " + std::to_string(id));
  return vars_[id];
}

std::optional<Generator> DistributionSpec::find(const std::string& name) const {
  std::string base = name;
  bool star = false;
  if (base.size() > 1 && base.back() == '*') {
    base.pop_back();
    star = true;
  }
  for (const auto& v : vars_)
    if (v.name == base) return canonical({v.id, star});
  return std::nullopt;
}

Generator DistributionSpec::canonical(Generator g) const {
  if (variable(g.id).kind == VariableKind::Semicircular) g.starred = false;
  return g;
}

NCPoly DistributionSpec::canonicalize(const NCPoly& p) const {
  NCPoly out(p.algebra() ? p.algebra() : alg_);
  for (auto m : p.terms()) {
    for (auto& g : m.gens) g = canonical(g);
    out.add(m);
  }
  return out;
}

std::vector<Generator> DistributionSpec::generators() const {
  std::vector<Generator> out;
  for (const auto& v : vars_) {
    out.push_back({v.id, false});
    if (v.kind == VariableKind::Circular) out.push_back({v.id, true});
  }
  return out;
}

const LinearMap* DistributionSpec::covariance(Generator a, Generator b) const {
  auto it = cov_.find({canonical(a), canonical(b)});
  if (it == cov_.end() || it->second.is_zero()) return nullptr;
  return &it->second;
}

std::string DistributionSpec::name_of(Generator g) const {
  g = canonical(g);
  return variable(g.id).name + (g.starred ? "*" : "");
}

std::map<int, std::string> DistributionSpec::names() const {
  std::map<int, std::string> out;
  for (const auto& v : vars_) out[v.id] = v.name;
  return out;
}

DistributionSpec DistributionSpec::amplified(AlgebraPtr amp) const {
  if (!amp) amp = amplify2(alg_);
  DistributionSpec out(amp, amplify_map(outer_, amp, amp));
  out.vars_ = vars_;
  out.next_family_ = next_family_;
  for (const auto& [key, m] : cov_) out.cov_[key] = amplify_map(m, amp, amp);
  return out;
}

LinearMap eta_plus(const LinearMap& eta, AlgebraPtr amp) {
  const AlgebraPtr& base = eta.source();
  if (!amp) amp = amplify2(base);
  auto f = [&](const Element& m) {
    const Element v = eta(entry_of(base, m, 0, 0) + entry_of(base, m, 1, 1));
    return lift_diag(amp, v);
  };
  return LinearMap::from_function(amp, amp, f, eta.label() + "+");
}

LinearMap diagonal_block_map(const std::array<LinearMap, 4>& pqrs, const AlgebraPtr& base, AlgebraPtr amp) {
  if (!amp) amp = amplify2(base);
  auto apply = [&](int k, const Element& x) { return pqrs[k].valid() ? pqrs[k](x) : base->zero(); };
  auto f = [&](const Element& m) {
    const Element c11 = entry_of(base, m, 0, 0);
    const Element c22 = entry_of(base, m, 1, 1);
    const Element z = base->zero();
    return join2(amp, apply(0, c11) + apply(1, c22), z, z, apply(2, c11) + apply(3, c22));
  };
  return LinearMap::from_function(amp, amp, f, "diag-block");
}

}  // namespace ofp
