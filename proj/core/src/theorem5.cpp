#include "ofp/theorem5.hpp"

#include "ofp/moments.hpp"

namespace ofp {

namespace {

const char* kSlot[4] = {"11", "12", "21", "22"};

NCPoly or_zero(const NCPoly& p, const AlgebraPtr& C) { return p.valid() ? p : NCPoly(C); }

Element ev(const DistributionSpec& spec, const NCPoly& p) {
  return expectation_of_polynomial(spec, spec.canonicalize(p));
}

// E_B(p q^*)
Element pair_term(const DistributionSpec& spec, const NCPoly& p, const NCPoly& q) {
  const AlgebraPtr& C = spec.algebra();
  return ev(spec, or_zero(p, C) * or_zero(q, C).adjoint());
}

}  // namespace

std::vector<VariableRealization> entry_variables(const EntrySystem& e) {
  std::vector<Generator> gens;
  auto push = [&](Generator g) {
    g = e.spec.canonical(g);
    for (const auto& h : gens)
      if (h == g) return;
    gens.push_back(g);
  };
  for (const auto& a : e.a)
    if (a) {
      push(*a);
      if (!e.self_adjoint) push(a->adjoint());
    }
  return spec_variables(e.spec, gens);
}

std::vector<ConjugateCandidate> entry_candidates(const EntrySystem& e) {
  const AlgebraPtr& C = e.spec.algebra();
  std::vector<ConjugateCandidate> out;
  for (int k = 0; k < 4; ++k) {
    if (!e.a[k]) continue;
    out.push_back({e.spec.canonical(*e.a[k]), or_zero(e.x[k], C), e.eta[k], std::string("x") + kSlot[k]});
    if (!e.self_adjoint)
      out.push_back({e.spec.canonical(e.a[k]->adjoint()), or_zero(e.y[k], C), e.xi[k], std::string("y") + kSlot[k]});
  }
  return out;
}

MatrixSystem theorem5_assemble(const EntrySystem& e) {
  const AlgebraPtr& C = e.spec.algebra();
  const AlgebraPtr amp = amplify2(C);
  MatrixSystem m;
  m.spec = e.spec.amplified(amp);
  MatrixPoly A, X1, X2;
  for (int k = 0; k < 4; ++k) A.e[k] = e.a[k] ? e.spec.poly(*e.a[k]) : NCPoly(C);
  X1.at(0, 0) = or_zero(e.x[0], C);
  X1.at(0, 1) = or_zero(e.x[2], C);
  X1.at(1, 0) = or_zero(e.x[1], C);
  X1.at(1, 1) = or_zero(e.x[3], C);
  for (int k = 0; k < 4; ++k) X2.e[k] = or_zero(e.y[k], C);
  m.A = matrix_lift(A, amp);
  m.X1 = matrix_lift(X1, amp);
  m.X2 = matrix_lift(X2, amp);
  m.eta = diagonal_block_map({e.eta[0], e.eta[2], e.eta[1], e.eta[3]}, C, amp);
  m.xi = diagonal_block_map({e.xi[0], e.xi[1], e.xi[2], e.xi[3]}, C, amp);
  const Generator gA{kMatrixVariableId, false};
  m.variables.push_back({gA, m.A, "A"});
  m.candidates.push_back({gA, m.X1, m.eta, "X1"});
  if (!e.self_adjoint) {
    m.variables.push_back({gA.adjoint(), m.spec.canonicalize(m.A.adjoint()), "A*"});
    m.candidates.push_back({gA.adjoint(), m.X2, m.xi, "X2"});
  }
  return m;
}

Theorem5Result theorem5_formula(const EntrySystem& e, const CheckOptions& entry_opt, const CheckOptions& matrix_opt) {
  Theorem5Result out;
  VerificationReport& rep = out.report;
  const DistributionSpec& s = e.spec;
  const AlgebraPtr& C = s.algebra();
  rep.title = "2x2 matrix Fisher information over " + C->label();

  const auto entry_vars = entry_variables(e);
  if (!entry_vars.empty()) {
    const ConjugateReport er = verify_conjugate_system(s, entry_vars, entry_candidates(e), entry_opt);
    rep.merge(er.report, "entries.");
  }

  auto X = [&](int k) { return or_zero(e.x[k], C); };
  auto Y = [&](int k) { return e.self_adjoint ? NCPoly(C) : or_zero(e.y[k], C); };
  auto E = [&](const NCPoly& p, const NCPoly& q) { return pair_term(s, p, q); };
  // Entry Fisher information Phi*(a_kk, a_kk^*) = E(x_kk x_kk^* + y_kk y_kk^*).
  const Element phi11 = E(X(0), X(0)) + E(Y(0), Y(0));
  const Element phi22 = E(X(3), X(3)) + E(Y(3), Y(3));
  out.formula[0] = phi11 + E(X(2), X(2)) + E(Y(1), Y(1));
  out.formula[1] = E(X(0), X(1)) + E(X(2), X(3)) + E(Y(0), Y(2)) + E(Y(1), Y(3));
  out.formula[2] = E(X(1), X(0)) + E(X(3), X(2)) + E(Y(2), Y(0)) + E(Y(3), Y(1));
  out.formula[3] = phi22 + E(X(1), X(1)) + E(Y(2), Y(2));

  const MatrixSystem m = theorem5_assemble(e);
  const AlgebraPtr& amp = m.spec.algebra();
  out.formula_matrix = join2(amp, out.formula[0], out.formula[1], out.formula[2], out.formula[3]);
  out.assembled = fisher_value(m.spec, m.candidates);
  if (!entry_vars.empty()) {
    const ConjugateReport mr = verify_conjugate_system(m.spec, m.variables, m.candidates, matrix_opt);
    rep.merge(mr.report, "matrix.");
  } else {
    rep.notes.push_back("no entries: matrix system is empty");
  }
  for (int k = 0; k < 4; ++k)
    rep.add(std::string("A") + kSlot[k] + "_formula_vs_assembled",
            distance(out.formula[k], entry_of(C, out.assembled, k / 2, k % 2)), matrix_opt.tol);
  add_positivity_checks(rep, "phi.", out.assembled, matrix_opt.tol);
  rep.add_value("phi*(A, A*) assembled", out.assembled);
  rep.add_value("phi*(A, A*) entry formula", out.formula_matrix);
  return out;
}

VerificationReport corollary6_check(const EntrySystem& e, const CheckOptions& entry_opt,
                                    const CheckOptions& matrix_opt) {
  if (e.self_adjoint) throw AlgebraError("corollary check needs the pair system {A, A*}");
  const AlgebraPtr& C = e.spec.algebra();
  for (int k = 0; k < 4; ++k)
    if (e.a[k] && (!e.eta[k].is_identity() || !e.xi[k].is_identity()))
      throw AlgebraError("corollary check needs entry conjugates wrt the identity on C");
  VerificationReport rep;
  rep.title = "trace-compressed 2x2 Fisher information over " + C->label();
  const MatrixSystem m = theorem5_assemble(e);
  const AlgebraPtr& amp = m.spec.algebra();
  const LinearMap& outer_B = e.spec.outer();
  const LinearMap T = LinearMap::from_function(
      amp, amp,
      [&](const Element& x) {
        return lift_diag(amp, outer_B((entry_of(C, x, 0, 0) + entry_of(C, x, 1, 1)) * cplx(0.5)));
      },
      "E_B (x) tr_2");
  DistributionSpec tspec = m.spec;
  tspec.set_outer(T);
  const LinearMap id = LinearMap::identity(amp);
  std::vector<ConjugateCandidate> half;
  for (const auto& c : m.candidates) half.push_back({c.variable, c.candidate * cplx(0.5), id, "1/2 " + c.name});

  Element entry_sum = C->zero();
  for (int k = 0; k < 4; ++k)
    if (e.a[k]) entry_sum += pair_term(e.spec, e.x[k], e.x[k]) + pair_term(e.spec, e.y[k], e.y[k]);
  const Element expected = lift_diag(amp, entry_sum * cplx(0.125));

  const auto entry_vars = entry_variables(e);
  Element phi = amp->zero();
  if (entry_vars.empty()) {
    rep.notes.push_back("no entries: vacuous system, Phi* = 0");
  } else {
    rep.merge(verify_conjugate_system(e.spec, entry_vars, entry_candidates(e), entry_opt).report, "entries.");
    rep.merge(verify_conjugate_system(tspec, m.variables, half, matrix_opt).report, "half.");
    phi = fisher_value(tspec, half);
    const Element via_theorem5 = T(fisher_value(m.spec, m.candidates)) * cplx(0.25);
    rep.add("phi_vs_theorem5_compressed", distance(phi, via_theorem5), matrix_opt.tol);
  }
  rep.add("phi_vs_one_eighth_formula", distance(phi, expected), matrix_opt.tol);
  add_positivity_checks(rep, "phi.", phi, matrix_opt.tol);
  rep.add_value("phi*(A, A*)", phi);
  rep.add_value("(1/8) sum of entry phi*", expected);
  return rep;
}

EntrySystem lemma7_entries(const AlgebraPtr& C, const LinearMap& eta, std::optional<LinearMap> outer) {
  EntrySystem e;
  e.spec = DistributionSpec(C, std::move(outer));
  const int s1 = e.spec.add_semicircular("s1", eta);
  const int c = e.spec.add_circular("c", eta);
  const int s2 = e.spec.add_semicircular("s2", eta);
  e.a = {Generator{s1, false}, Generator{c, false}, Generator{c, true}, Generator{s2, false}};
  e.x = {e.spec.poly({s1, false}), e.spec.poly({c, true}), e.spec.poly({c, false}), e.spec.poly({s2, false})};
  for (int k = 0; k < 4; ++k) {
    e.y[k] = NCPoly(C);
    e.eta[k] = eta;
    e.xi[k] = eta;
  }
  e.self_adjoint = true;
  return e;
}

EntrySystem correlated_circular_entries(const AlgebraPtr& C, const LinearMap& eta, const Eigen::Matrix4d& rho,
                                        std::optional<LinearMap> outer) {
  EntrySystem e;
  e.spec = DistributionSpec(C, std::move(outer));
  int family = -1;
  std::array<int, 4> id{};
  for (int k = 0; k < 4; ++k) {
    id[k] = e.spec.add_variable(std::string("a") + kSlot[k], VariableKind::Circular, family);
    family = e.spec.family_of(id[k]);
  }
  for (int r = 0; r < 4; ++r)
    for (int q = 0; q < 4; ++q) {
      if (rho(r, q) == 0.0) continue;
      e.spec.set_covariance({id[r], true}, {id[q], false}, eta * cplx(rho(r, q)));
      e.spec.set_covariance({id[q], false}, {id[r], true}, eta * cplx(rho(r, q)));
    }
  const Eigen::Matrix4d ri = rho.inverse();
  const Eigen::Matrix4d rti = rho.transpose().inverse();
  for (int p = 0; p < 4; ++p) {
    e.a[p] = Generator{id[p], false};
    e.x[p] = NCPoly(C);
    e.y[p] = NCPoly(C);
    for (int r = 0; r < 4; ++r) {
      if (ri(p, r) != 0.0) e.x[p] += e.spec.poly({id[r], true}) * cplx(ri(p, r));
      if (rti(p, r) != 0.0) e.y[p] += e.spec.poly({id[r], false}) * cplx(rti(p, r));
    }
    e.eta[p] = eta;
    e.xi[p] = eta;
  }
  return e;
}

EntrySystem restrict_entries(EntrySystem e, const std::vector<int>& keep) {
  const AlgebraPtr& C = e.spec.algebra();
  for (int k = 0; k < 4; ++k) {
    bool kept = false;
    for (int q : keep) kept = kept || q == k;
    if (kept) continue;
    e.a[k].reset();
    e.x[k] = NCPoly(C);
    e.y[k] = NCPoly(C);
    e.eta[k] = LinearMap();  // a zero entry has zero covariance
    e.xi[k] = LinearMap();
  }
  return e;
}

}  // namespace ofp
