#include "ofp/fisher.hpp"

#include "ofp/moments.hpp"
#include "ofp/transform.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ofp {

std::vector<VariableRealization> spec_variables(const DistributionSpec& spec) {
  return spec_variables(spec, spec.generators());
}

std::vector<VariableRealization> spec_variables(const DistributionSpec& spec, const std::vector<Generator>& gens) {
  std::vector<VariableRealization> out;
  for (const auto& g : gens) out.push_back({spec.canonical(g), spec.poly(g), spec.name_of(g)});
  return out;
}

namespace {

void check_known(const DistributionSpec& spec, const NCPoly& p, const std::string& what) {
  for (const auto& w : p.words())
    for (const auto& g : w)
      if (!spec.has_variable(g.id)) throw AlgebraError(what + " references unknown generator X" + std::to_string(g.id));
}

struct DegreeTracker {
  double worst = 0.0;
  std::string witness;
  int first = -1;
  void see(double r, int degree, double tol, const std::function<std::string()>& w) {
    if (r > tol && (first < 0 || degree < first)) first = degree;
    if (r > worst) {
      worst = r;
      witness = w();
    }
  }
};

}  // namespace

ConjugateReport verify_conjugate_system(const DistributionSpec& spec, const std::vector<VariableRealization>& vars,
                                        const std::vector<ConjugateCandidate>& cands, const CheckOptions& opt) {
  if (opt.maxdeg < 1) throw AlgebraError("maxdeg must be at least 1");
  const AlgebraPtr& C = spec.algebra();
  const int dim = C->dim();
  const int nc = static_cast<int>(cands.size());
  const int nv = static_cast<int>(vars.size());
  const int one_letter = nc + nv;
  const LinearMap& outer = spec.outer();
  const bool outer_id = spec.outer_is_identity();

  std::vector<NCPoly> polys;
  std::vector<std::string> names;
  std::vector<int> var_of_candidate;
  for (const auto& c : cands) {
    check_known(spec, c.candidate, "candidate " + c.name);
    if (!c.wrt.valid() || !c.wrt.source()->same_shape(*C))
      throw AlgebraError("candidate " + c.name + ": map is not defined on the coefficient algebra");
    int k = -1;
    for (int v = 0; v < nv; ++v)
      if (vars[v].variable == c.variable) k = v;
    if (k < 0) throw AlgebraError("candidate " + c.name + " names a variable outside the system");
    var_of_candidate.push_back(k);
    polys.push_back(c.candidate.valid() ? c.candidate : NCPoly(C));
    names.push_back(c.name.empty() ? "xi" : c.name);
  }
  for (const auto& v : vars) {
    check_known(spec, v.poly, "variable " + v.name);
    polys.push_back(v.poly);
    names.push_back(v.name);
  }
  polys.push_back(NCPoly::constant(C->one()));
  names.push_back("1");

  MomentTable mt(C, polynomial_moment_oracle(spec, polys));
  CumulantTable kt(mt);

  ConjugateReport out;
  VerificationReport& rep = out.report;
  rep.title = "conjugate system over " + C->label();
  std::vector<int> sampled_i, sampled_ii;
  const Element one = C->one();

  for (int ci = 0; ci < nc; ++ci) {
    const ConjugateCandidate& cand = cands[ci];
    const std::string tag = names[ci];
    const int own = var_of_candidate[ci];

    // Moment identity.
    DegreeTracker mom;
    std::vector<double> by_degree(opt.maxdeg + 1, 0.0);
    for (int m = 0; m <= opt.maxdeg; ++m) {
      std::vector<int> radices(m, nv);
      radices.insert(radices.end(), m, dim);
      if (!outer_id) radices.push_back(dim);
      const bool all = for_each_tuple_within(radices, opt.budget, opt.seed + 7919 * ci + m, [&](const std::vector<int>& t) {
        // t = V_1..V_m, c_0..c_{m-1}, [c_m]
        auto V = [&](int j) { return t[j - 1]; };           // j = 1..m
        auto cidx = [&](int j) { return t[m + j]; };         // j = 0..m-1
        const Element cm = outer_id ? one : C->basis(t[2 * m]);
        LetterWord letters{ci};
        for (int j = 1; j <= m; ++j) letters.push_back(nc + V(j));
        IndexWord interior;
        for (int j = 0; j < m; ++j) interior.push_back(cidx(j));
        const Element lhs = outer(mt.moment(letters, interior) * cm);
        Element rhs = C->zero();
        for (int j = 1; j <= m; ++j) {
          if (V(j) != own) continue;
          Element left = C->basis(cidx(0));
          if (j > 1) {
            LetterWord l;
            IndexWord in;
            for (int p = 1; p < j; ++p) l.push_back(nc + V(p));
            for (int p = 1; p + 1 < j; ++p) in.push_back(cidx(p));
            left = left * mt.moment(l, in) * C->basis(cidx(j - 1));
          }
          Element right = cm;
          if (j < m) {
            LetterWord l;
            IndexWord in;
            for (int p = j + 1; p <= m; ++p) l.push_back(nc + V(p));
            for (int p = j + 1; p < m; ++p) in.push_back(cidx(p));
            right = C->basis(cidx(j)) * mt.moment(l, in) * cm;
          }
          rhs += outer(cand.wrt(left)) * outer(right);
        }
        const double r = distance(lhs, rhs);
        by_degree[m] = std::max(by_degree[m], r);
        mom.see(r, m, opt.tol, [&] {
          std::ostringstream os;
          os << "E(" << tag;
          if (m > 0) os << " e" << cidx(0) << " ";
          for (int j = 1; j <= m; ++j) {
            os << names[nc + V(j)];
            if (j < m) os << " e" << cidx(j) << " ";
          }
          if (!outer_id) os << " e" << t[2 * m];
          os << ")";
          return os.str();
        });
      });
      if (!all) sampled_i.push_back(m);
    }
    rep.add(tag + ".moment_identity", mom.worst, opt.tol, "worst word " + mom.witness, mom.first);
    {
      std::ostringstream os;
      os << tag << " moment identity residual by degree:";
      for (double r : by_degree) os << " " << r;
      rep.notes.push_back(os.str());
    }

    // Cumulant conditions.
    DegreeTracker cum;
    const double k1 = kt.cumulant({ci}, {}).max_abs();
    cum.see(k1, 0, opt.tol, [&] { return "k1(" + tag + ")"; });
    rep.add(tag + ".k1", k1, opt.tol, "k1(" + tag + ") != 0", k1 > opt.tol ? 0 : -1);
    double k2 = 0.0;
    std::string k2w;
    for (int a = 0; a <= nv; ++a)
      for (int c = 0; c < dim; ++c) {
        const int letter = a < nv ? nc + a : one_letter;
        const Element expect = a == own ? outer(cand.wrt(C->basis(c))) : C->zero();
        const double r = distance(kt.cumulant({ci, letter}, {c}), expect);
        cum.see(r, 1, opt.tol, [&] { return "k2(" + tag + " (x) e" + std::to_string(c) + " " + names[letter] + ")"; });
        if (r > k2) {
          k2 = r;
          k2w = "k2(" + tag + " (x) e" + std::to_string(c) + " " + names[letter] + ")";
        }
      }
    rep.add(tag + ".k2", k2, opt.tol, k2w, k2 > opt.tol ? 1 : -1);
    DegreeTracker hi;
    for (int m = 2; m <= opt.maxdeg; ++m) {
      std::vector<int> radices(m, nv + 1);
      radices.insert(radices.end(), m, dim);
      const bool all = for_each_tuple_within(radices, opt.budget, opt.seed + 104729 * (ci + 1) + m, [&](const std::vector<int>& t) {
        LetterWord letters{ci};
        for (int p = 0; p < m; ++p) letters.push_back(t[p] < nv ? nc + t[p] : one_letter);
        const IndexWord interior(t.begin() + m, t.end());
        const double r = kt.cumulant(letters, interior).max_abs();
        auto w = [&] { return "k" + std::to_string(m + 1) + "(" + describe_word(names, letters, interior) + ")"; };
        cum.see(r, m, opt.tol, w);
        hi.see(r, m, opt.tol, w);
      });
      if (!all) sampled_ii.push_back(m);
    }
    rep.add(tag + ".k_higher", hi.worst, opt.tol, hi.witness, hi.first);

    const bool mp = mom.first < 0, cp = cum.first < 0;
    out.moment_pass = out.moment_pass && mp;
    out.cumulant_pass = out.cumulant_pass && cp;
    auto take_min = [](int& acc, int d) {
      if (d >= 0 && (acc < 0 || d < acc)) acc = d;
    };
    take_min(out.moment_first_violation, mom.first);
    take_min(out.cumulant_first_violation, cum.first);
  }
  out.agree = out.moment_pass == out.cumulant_pass && out.moment_first_violation == out.cumulant_first_violation;
  std::ostringstream why;
  why << "moment identity first fails at degree " << out.moment_first_violation
      << ", cumulant conditions first fail at degree " << out.cumulant_first_violation;
  rep.add_flag("definition_vs_cumulant_agree", out.agree, why.str());
  if (out.moment_pass && out.cumulant_pass) {
    out.verified_to_degree = opt.maxdeg;
  } else {
    int first = opt.maxdeg + 1;
    for (int d : {out.moment_first_violation, out.cumulant_first_violation})
      if (d >= 0) first = std::min(first, d);
    out.verified_to_degree = first - 1;
  }
  rep.notes.push_back("relations checked for degrees 0.." + std::to_string(opt.maxdeg) + " (truncated)");
  auto coverage = [](const std::string& what, const std::vector<int>& s) {
    if (s.empty()) return what + ": all coefficient tuples enumerated";
    std::ostringstream os;
    os << what << ": seeded sampling at degrees";
    for (int d : s) os << " " << d;
    return os.str();
  };
  rep.notes.push_back(coverage("moment identity", sampled_i));
  rep.notes.push_back(coverage("cumulant conditions", sampled_ii));
  return out;
}

Element fisher_value(const DistributionSpec& spec, const std::vector<ConjugateCandidate>& cands) {
  NCPoly sum(spec.algebra());
  for (const auto& c : cands) sum += c.candidate * c.candidate.adjoint();
  return expectation_of_polynomial(spec, spec.canonicalize(sum));
}

void add_positivity_checks(VerificationReport& rep, const std::string& prefix, const Element& v, double tol) {
  rep.add(prefix + "self_adjoint", distance(v, v.adjoint()), tol);
  double min_eig = 0.0;
  for (const auto& blk : v.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((blk + blk.adjoint()) / 2.0);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  rep.add(prefix + "positive_semidefinite", -min_eig, tol);
}

FisherResult fisher_information(const DistributionSpec& spec, const std::vector<VariableRealization>& vars,
                                const std::vector<ConjugateCandidate>& cands, const CheckOptions& opt) {
  ConjugateReport cr = verify_conjugate_system(spec, vars, cands, opt);
  if (!cr.report.passed()) throw VerificationFailure("conjugate system verification failed", cr.report);
  FisherResult out;
  out.value = fisher_value(spec, cands);
  out.verified_to_degree = cr.verified_to_degree;
  out.report = std::move(cr.report);
  add_positivity_checks(out.report, "phi.", out.value, opt.tol);
  out.report.add_value("phi*", out.value);
  return out;
}

ConjugateCandidate conjugate_semicircular_wrt_id(const DistributionSpec& spec, Generator X, const ModuleFrame& frame,
                                                 double tol) {
  if (frame_reconstruction_residual(frame) > tol) throw AlgebraError("frame fails reconstruction");
  const AlgebraPtr& C = spec.algebra();
  if (!frame.inclusion.domain()->same_shape(*C)) throw AlgebraError("frame lives on a different algebra");
  ConjugateCandidate c;
  c.variable = spec.canonical(X);
  c.candidate = NCPoly(C);
  const NCPoly x = spec.poly(X);
  for (const auto& f : frame.vectors) {
    const Element fc = C->from_coords(f.coords());
    c.candidate += fc * x * fc.adjoint();
  }
  c.wrt = LinearMap::identity(C);
  c.name = "xi_" + spec.name_of(X);
  return c;
}

}  // namespace ofp
