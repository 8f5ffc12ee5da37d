#include "ofp/frame_theorems.hpp"

#include "ofp/fisher.hpp"
#include "ofp/theorem5.hpp"

namespace ofp {

namespace {

struct CircularModel {
  DistributionSpec spec;
  Generator s1, c, s2;
};

CircularModel circular_model(const CondExpectation& E) {
  CircularModel m{DistributionSpec(E.domain()), {}, {}, {}};
  m.s1 = {m.spec.add_semicircular("s1", E.map()), false};
  m.c = {m.spec.add_circular("c", E.map()), false};
  m.s2 = {m.spec.add_semicircular("s2", E.map()), false};
  return m;
}

// sum_i f_i p g(f_i), with g(f) the right-hand coefficient.
template <class Right>
NCPoly sandwich_sum(const AlgebraPtr& alg, const std::vector<Element>& f, const NCPoly& p, Right right) {
  NCPoly out(alg);
  for (const auto& v : f) out += v * p * right(v);
  return out;
}

struct MatrixPieces {
  DistributionSpec spec;
  NCPoly S;
  AlgebraPtr amp;
};

MatrixPieces matrix_model(const CircularModel& m) {
  const AlgebraPtr& B = m.spec.algebra();
  MatrixPieces out{m.spec.amplified(amplify2(B)), NCPoly(), nullptr};
  out.amp = out.spec.algebra();
  MatrixPoly Sm;
  Sm.at(0, 0) = m.spec.poly(m.s1);
  Sm.at(0, 1) = m.spec.poly(m.c);
  Sm.at(1, 0) = m.spec.poly(m.c.adjoint());
  Sm.at(1, 1) = m.spec.poly(m.s2);
  out.S = matrix_lift(Sm, out.amp);
  return out;
}

FrameTheoremResult run(const CondExpectation& E, bool wrt_id, const CheckOptions& entry_opt,
                       const CheckOptions& matrix_opt) {
  FrameTheoremResult out;
  VerificationReport& rep = out.report;
  const AlgebraPtr& B = E.domain();
  const double tol = matrix_opt.tol;
  const CircularModel m = circular_model(E);
  const FrameResult fr = compute_tight_frame(E);
  rep.merge(fr.report, "frame.");
  const std::vector<Element>& f = fr.frame.vectors;
  const LinearMap entry_map = wrt_id ? LinearMap::identity(B) : E.map();

  // Entry conjugates: s1, c^*, c, s2 wrt E, or their frame sandwiches wrt id.
  auto entry_conj = [&](Generator g) {
    const NCPoly p = m.spec.poly(g);
    if (!wrt_id) return p;
    return sandwich_sum(B, f, p, [](const Element& v) { return v.adjoint(); });
  };
  const std::vector<Generator> gens{m.s1, m.c, m.c.adjoint(), m.s2};
  std::vector<ConjugateCandidate> cands;
  for (const auto& g : gens)
    cands.push_back({m.spec.canonical(g), entry_conj(g.adjoint()), entry_map, "xi_" + m.spec.name_of(g)});
  const auto vars = spec_variables(m.spec, gens);
  rep.merge(verify_conjugate_system(m.spec, vars, cands, entry_opt).report, "entries.");

  const Element phi_s1 = fisher_value(m.spec, {cands[0]});
  const Element phi_s2 = fisher_value(m.spec, {cands[3]});
  const Element phi_c_direct = fisher_value(m.spec, {cands[1], cands[2]});

  // Matrix candidate built from the frame.
  const MatrixPieces mp = matrix_model(m);
  const AlgebraPtr& amp = mp.amp;
  NCPoly Y(amp);
  for (const auto& v : f) {
    const Element r = wrt_id ? v.adjoint() : E(v.adjoint());
    Y += lift_diag(amp, v) * mp.S * lift_diag(amp, r);
  }
  const Generator gS{kMatrixVariableId, false};
  const LinearMap plus = eta_plus(entry_map, amp);
  const std::vector<VariableRealization> mvars{{gS, mp.S, "S"}};
  const std::vector<ConjugateCandidate> mcands{{gS, Y, plus, "Y"}};
  rep.merge(verify_conjugate_system(mp.spec, mvars, mcands, matrix_opt).report, "matrix.");
  out.matrix_value = fisher_value(mp.spec, mcands);
  add_positivity_checks(rep, "matrix_phi.", out.matrix_value, tol);

  const Element yy = entry_of(B, out.matrix_value, 0, 0) - phi_s1;
  const Element xx = entry_of(B, out.matrix_value, 1, 1) - phi_s2;
  out.value = yy + xx;
  rep.add("matrix_phi_off_diagonal",
          std::max(entry_of(B, out.matrix_value, 0, 1).max_abs(), entry_of(B, out.matrix_value, 1, 0).max_abs()), tol);
  rep.add("extracted_vs_direct", distance(out.value, phi_c_direct), tol);

  if (!wrt_id) {
    rep.add("phi_s1_is_one", distance(phi_s1, B->one()), tol);
    rep.add("phi_s2_is_one", distance(phi_s2, B->one()), tol);
    rep.add("E(yy*)_is_one", distance(yy, B->one()), tol);
    rep.add("E(xx*)_is_one", distance(xx, B->one()), tol);
    rep.add("matrix_phi_is_two", distance(out.matrix_value, amp->one() * cplx(2.0)), tol);
    rep.add("phi_c_is_two", distance(out.value, B->one() * cplx(2.0)), tol);
  } else {
    const IndexValue idx = compute_index(E, matrix_opt.seed);
    rep.merge(idx.report, "index.");
    rep.add("frame_phi_s1_is_index", distance(phi_s1, idx.value), tol);
    rep.add("frame_phi_s2_is_index", distance(phi_s2, idx.value), tol);
    rep.add("matrix_phi_is_two_index", distance(out.matrix_value, lift_diag(amp, idx.value * cplx(2.0))), tol);
    rep.add("phi_c_is_two_index", distance(out.value, idx.value * cplx(2.0)), tol);
  }
  rep.add_value("phi*(S) matrix", out.matrix_value);
  rep.add_value("phi*(s1)", phi_s1);
  rep.add_value("phi*(s2)", phi_s2);
  rep.add_value("E(yy*)", yy);
  rep.add_value("E(xx*)", xx);
  rep.add_value("phi*(c, c*)", out.value);
  return out;
}

}  // namespace

FrameTheoremResult theorem8_check(const CondExpectation& E, const CheckOptions& entry_opt,
                                  const CheckOptions& matrix_opt) {
  auto r = run(E, false, entry_opt, matrix_opt);
  r.report.title = "Fisher information of a circular element wrt E on " + E.domain()->label();
  return r;
}

FrameTheoremResult theorem9_check(const CondExpectation& E, const CheckOptions& entry_opt,
                                  const CheckOptions& matrix_opt) {
  auto r = run(E, true, entry_opt, matrix_opt);
  r.report.title = "Fisher information of a circular element wrt id on " + E.domain()->label();
  return r;
}

VerificationReport lemma7_check(const AlgebraPtr& B, const LinearMap& eta, const CheckOptions& opt) {
  DistributionSpec spec(B);
  const Generator s1{spec.add_semicircular("s1", eta), false};
  const Generator c{spec.add_circular("c", eta), false};
  const Generator s2{spec.add_semicircular("s2", eta), false};
  return verify_matrix_semicircular(spec, s1, c, s2, eta, opt);
}

}  // namespace ofp
