// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include "ofp/cli/scenario.hpp"
#include "ofp/cumulant_checks.hpp"
#include "ofp/fisher.hpp"
#include "ofp/frame_theorems.hpp"
#include "ofp/frames.hpp"
#include "ofp/moments.hpp"
#include "ofp/montecarlo.hpp"
#include "ofp/theorem5.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ofp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
  void require(const VerificationReport& rep, const std::string& what) {
    for (const auto& c : rep.checks)
      if (!c.pass) {
        pass = false;
        detail << "[failed: " << what << " " << c.name << " residual " << c.residual;
        if (!c.witness.empty()) detail << ", " << c.witness;
        detail << "] ";
        return;
      }
    if (rep.checks.empty()) require(false, what + " produced no checks");
  }
};

const double kTol = 1e-9;

struct Setting {
  std::string label;
  CondExpectation E;
};

std::vector<Setting> settings() {
  return {{"C/id", CondExpectation::identity(make_algebra({1}, "C"))},
          {"C+C/average", coordinate_average_expectation(make_algebra({1, 1}, "C+C"))},
          {"M2/tr", normalized_trace_expectation(make_algebra({2}, "M2"))}};
}

// Words of length <= 8; single-letter alphabets are enumerated exhaustively, the
// two-variable spec is sampled beyond the budget.
void word_battery(Outcome& out, const std::function<VerificationReport(const DistributionSpec&,
                                                                         const std::vector<Generator>&,
                                                                         const CheckOptions&)>& check) {
  for (const auto& s : settings()) {
    DistributionSpec one(s.E.domain());
    const Generator X{one.add_semicircular("X", s.E.map()), false};
    const VerificationReport r1 = check(one, {X}, {8, kTol, 1 << 15, 1});
    out.require(r1, s.label + " semicircular:");
    out.detail << s.label << " X: " << r1.notes.front() << "; ";

    DistributionSpec two(s.E.domain());
    two.add_semicircular("X", s.E.map());
    two.add_circular("c", LinearMap::identity(s.E.domain()));
    out.require(check(two, two.generators(), {8, kTol, 2048, 2}), s.label + " {X, c, c*}:");
  }
}

Outcome criterion1() {
  Outcome out;
  word_battery(out, check_roundtrip);
  return out;
}

Outcome criterion2() {
  Outcome out;
  word_battery(out, check_dual_evaluators);
  const AlgebraPtr C = make_algebra({1}, "C");
  DistributionSpec s(C);
  const Generator X{s.add_semicircular("X", LinearMap::identity(C)), false};
  const double catalan[] = {1, 2, 5, 14};
  for (int k = 1; k <= 4; ++k) {
    const Monomial w = make_monomial(std::vector<Element>(2 * k + 1, C->one()), GeneratorWord(2 * k, X));
    const double rec = moments_from_cumulants(s, w).coords()(0).real();
    const double pair = pairing_moment(s, w).coords()(0).real();
    out.require(std::abs(rec - catalan[k - 1]) < kTol && std::abs(pair - catalan[k - 1]) < kTol,
                "Catalan moment of order " + std::to_string(2 * k));
  }
  out.detail << "scalar even moments 1, 2, 5, 14";
  return out;
}

Outcome criterion3() {
  Outcome out;
  for (const auto& s : settings()) {
    const AlgebraPtr& A = s.E.domain();
    DistributionSpec spec(A);
    const int x = spec.add_semicircular("X", s.E.map());
    const int c = spec.add_circular("c", LinearMap::identity(A));
    const CheckOptions opt{4, kTol, 512, 1};
    out.require(check_freeness(spec, declared_families(spec), opt), s.label + " free families:");

    DistributionSpec bad = spec;
    bad.set_covariance({x, false}, {c, false}, s.E.map());
    bad.set_covariance({c, true}, {x, false}, s.E.map());
    const VerificationReport r = check_freeness(bad, declared_families(bad), opt);
    std::string witness;
    for (const auto& ch : r.checks)
      if (!ch.pass && witness.empty()) witness = ch.witness;
    out.require(!r.passed() && !witness.empty(), s.label + " injected cross covariance must fail with a witness");
    if (s.label == "M2/tr") out.detail << "injected witness on M2: " << witness;
  }
  return out;
}

Outcome criterion4() {
  Outcome out;
  int agreements = 0, scenarios = 0;
  for (const auto& e : std::filesystem::directory_iterator(OFP_SCENARIO_DIR)) {
    if (e.path().extension() != ".json") continue;
    const cli::RunReport r = cli::run_scenario_file(e.path().string(), {});
    ++scenarios;
    for (const auto& c : r.checks) {
      const std::string suffix = "definition_vs_cumulant_agree";
      if (c.name.size() < suffix.size() || c.name.compare(c.name.size() - suffix.size(), suffix.size(), suffix) != 0)
        continue;
      ++agreements;
      out.require(c.pass, r.scenario + " " + c.name + " (" + c.witness + ")");
    }
  }
  // Deliberately wrong candidates: both checks fail, at the same first degree.
  const AlgebraPtr C = make_algebra({1}, "C");
  DistributionSpec s(C);
  const Generator X{s.add_semicircular("X", LinearMap::identity(C)), false};
  const Generator c{s.add_circular("c", LinearMap::identity(C)), false};
  const NCPoly x = s.poly(X);
  const LinearMap id = LinearMap::identity(C);
  const std::vector<std::pair<std::string, ConjugateCandidate>> wrong{
      {"2X", {X, x * cplx(2.0), id, "2X"}},
      {"X + X^3/10", {X, x + x * x * x * cplx(0.1), id, "X + X^3/10"}},
      {"X^2", {X, x * x, id, "X^2"}},
      {"c for c", {c, s.poly(c), id, "c"}},
  };
  int negatives = 0;
  for (const auto& [label, cand] : wrong) {
    const ConjugateReport r = verify_conjugate_system(s, spec_variables(s, {cand.variable}), {cand}, {6, kTol, 1024, 1});
    out.require(!r.moment_pass && !r.cumulant_pass && r.agree, "wrong candidate " + label);
    negatives += !r.moment_pass;
  }
  out.detail << agreements << " bundled candidate systems agree across " << scenarios << " scenarios; " << negatives
             << " wrong candidates fail at the same first degree in both checks";
  out.require(agreements > 0, "no bundled candidate systems found");
  return out;
}

Outcome criterion5() {
  Outcome out;
  for (const auto& s : settings()) out.require(lemma7_check(s.E.domain(), s.E.map(), {6, kTol, 1024, 1}), s.label);
  out.detail << "k1 = 0, k2 = eta+ on a basis of M2(B), k3..k6 = 0 for id, average on C+C, tr on M2";
  return out;
}

const CheckOptions kEntry{8, kTol, 1024, 1};
const CheckOptions kMatrix{6, kTol, 256, 1};

Outcome criterion6() {
  Outcome out;
  for (const auto& s : settings()) {
    const Theorem5Result r = theorem5_formula(lemma7_entries(s.E.domain(), s.E.map(), s.E.map()), kEntry, kMatrix);
    out.require(r.report, s.label);
    out.detail << s.label << " |formula - assembled| = " << distance(r.formula_matrix, r.assembled) << "; ";
  }
  const AlgebraPtr C = make_algebra({1}, "C");
  Eigen::Matrix4d rho = Eigen::Matrix4d::Identity();
  rho(0, 1) = rho(1, 0) = 0.3;
  rho(2, 3) = rho(3, 2) = -0.2;
  rho(0, 3) = rho(3, 0) = 0.1;
  const Theorem5Result r = theorem5_formula(correlated_circular_entries(C, LinearMap::identity(C), rho), kEntry, kMatrix);
  out.require(r.report, "correlated circular entries:");
  out.require(std::abs(r.formula[1].coords()(0)) > 1e-3, "cross term A12 must be non-zero in the correlated case");
  out.detail << "correlated entries A12 = " << r.formula[1].coords()(0).real();
  return out;
}

Outcome criterion7() {
  Outcome out;
  const AlgebraPtr C = make_algebra({1}, "C");
  const VerificationReport r =
      corollary6_check(correlated_circular_entries(C, LinearMap::identity(C), Eigen::Matrix4d::Identity()), kEntry, kMatrix);
  out.require(r, "corollary:");
  const BlockValue* v = r.value("phi*(A, A*)");
  out.require(v && (v->blocks[0] - Eigen::MatrixXcd::Identity(2, 2)).norm() < kTol, "Phi* = diag(1, 1)");
  out.require(r.find("half.definition_vs_cumulant_agree") && r.find("half.definition_vs_cumulant_agree")->pass,
              "{X1/2, X2/2} conjugate verification");
  out.detail << "Phi* = diag(1, 1), {X1/2, X2/2} verified";
  return out;
}

Outcome criterion8() {
  Outcome out;
  for (const auto& s : settings()) {
    const FrameTheoremResult r = theorem8_check(s.E, kEntry, kMatrix);
    out.require(r.report, s.label);
    out.require(distance(r.value, s.E.domain()->one() * cplx(2.0)) < kTol, s.label + " Phi* = 2");
    out.require(r.report.find("E(yy*)_is_one") && r.report.find("E(xx*)_is_one"), s.label + " extraction checks present");
  }
  out.detail << "Phi*(c, c*: B, E) = 2 and E(yy*) = E(xx*) = 1 for all three expectations";
  return out;
}

Outcome criterion9() {
  Outcome out;
  const double want[] = {2, 4, 8};
  int k = 0;
  for (const auto& s : settings()) {
    const AlgebraPtr& B = s.E.domain();
    const FrameTheoremResult r = theorem9_check(s.E, kEntry, kMatrix);
    out.require(r.report, s.label);
    const IndexValue idx = compute_index(s.E, 7);
    out.require(idx.report, s.label + " index:");
    out.require(distance(r.value, B->one() * cplx(want[k])) < kTol, s.label + " value");
    out.require(distance(r.value, idx.value * cplx(2.0)) < kTol, s.label + " Phi* = 2 Index");
    // Frame identity: frame candidate wrt id for a semicircular with covariance E.
    DistributionSpec spec(B);
    const Generator X{spec.add_semicircular("X", s.E.map()), false};
    const ConjugateCandidate cand = conjugate_semicircular_wrt_id(spec, X, compute_tight_frame(s.E).frame);
    const FisherResult f = fisher_information(spec, spec_variables(spec, {X}), {cand}, {6, kTol, 1024, 1});
    out.require(distance(f.value, idx.value) < kTol, s.label + " sum f f* = Index");
    out.detail << s.label << " " << want[k] << "; ";
    ++k;
  }
  return out;
}

Monomial word_of(const AlgebraPtr& A, const GeneratorWord& g) {
  return make_monomial(std::vector<Element>(g.size() + 1, A->one()), g);
}

Outcome criterion10() {
  Outcome out;
  const AlgebraPtr C = make_algebra({1}, "C");
  DistributionSpec spec(C);
  const Generator X{spec.add_semicircular("X", LinearMap::identity(C)), false};
  const Generator c{spec.add_circular("c", LinearMap::identity(C)), false};
  const std::vector<Generator> letters{X, c, c.adjoint()};
  std::vector<Monomial> words;
  for (int n = 1; n <= 6; ++n)
    for_each_tuple(n, 3, [&](const std::vector<int>& t) {
      GeneratorWord g;
      for (int i : t) g.push_back(letters[i]);
      words.push_back(word_of(C, g));
      return true;
    });
  MCConfig cfg;
  cfg.block_algebra = C;
  cfg.N = 256;
  cfg.samples = 100;
  cfg.seed = 2024;
  const VerificationReport r = mc_crosscheck(cfg, spec, words);
  out.require(r, "scalar battery:");

  // Operator-valued realizations: M2 with the trace and C+C with the average.
  for (const auto& s : settings()) {
    if (s.label == "C/id") continue;
    const AlgebraPtr& B = s.E.domain();
    DistributionSpec ov(B);
    const Generator Y{ov.add_semicircular("X", s.E.map()), false};
    std::vector<Monomial> ws;
    for (int i = 0; i < B->dim(); ++i) ws.push_back(make_monomial({B->one(), B->basis(i), B->one()}, {Y, Y}));
    ws.push_back(word_of(B, {Y, Y, Y, Y}));
    ws.push_back(make_monomial({B->one(), B->basis(B->dim() - 1), B->one(), B->basis(0), B->one()}, {Y, Y, Y, Y}));
    MCConfig oc;
    oc.block_algebra = B;
    oc.model = mc_model_for(B);
    oc.N = 256;
    oc.samples = 100;
    oc.seed = 2025;
    out.require(mc_crosscheck(oc, ov, ws), s.label);
  }

  DistributionSpec doubled(C);
  const Generator Z{doubled.add_semicircular("X", LinearMap::identity(C) * cplx(2.0)), false};
  const VerificationReport neg = mc_crosscheck(cfg, doubled, {word_of(C, {Z, Z})});
  out.require(!neg.passed(), "doubled-covariance control must fail");
  out.detail << words.size() << " scalar words of degree <= 6 over {X, c, c*}; M2 and C+C words; doubled covariance fails";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"moment-cumulant roundtrip", criterion1},
      {"dual evaluators", criterion2},
      {"freeness", criterion3},
      {"conjugate definition vs cumulant characterization", criterion4},
      {"matrix semicircular with covariance eta+", criterion5},
      {"2x2 Fisher information formula", criterion6},
      {"trace-compressed 2x2 Fisher information", criterion7},
      {"circular Fisher information wrt E is 2", criterion8},
      {"circular Fisher information wrt id is 2 Index(E)", criterion9},
      {"Monte Carlo oracle", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.detail.str() << ") [" << secs << " s]" << std::endl;
  }
  std::cout << (failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS") << std::endl;
  return failures;
}
