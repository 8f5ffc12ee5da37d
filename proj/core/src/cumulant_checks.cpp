#include "ofp/cumulant_checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ofp {

std::string describe_word(const std::vector<std::string>& names, const std::vector<int>& letters,
                          const std::vector<int>& interior) {
  std::ostringstream os;
  for (std::size_t p = 0; p < letters.size(); ++p) {
    os << names[letters[p]];
    if (p < interior.size()) os << " e" << interior[p] << " ";
  }
  return os.str();
}

namespace {

struct WordBattery {
  std::vector<std::string> names;
  std::vector<NCPoly> polys;
};

WordBattery battery_for(const DistributionSpec& spec, const std::vector<Generator>& alphabet) {
  WordBattery b;
  for (const auto& g : alphabet) {
    b.names.push_back(spec.name_of(g));
    b.polys.push_back(spec.poly(g));
  }
  return b;
}

void split_tuple(const std::vector<int>& t, int n, LetterWord& l, IndexWord& i) {
  l.assign(t.begin(), t.begin() + n);
  i.assign(t.begin() + n, t.end());
}

std::vector<int> word_radices(int n, int letters, int dim) {
  std::vector<int> r(n, letters);
  r.insert(r.end(), n - 1, dim);
  return r;
}

struct MaxTracker {
  double value = 0.0;
  std::string witness;
  void see(double r, const std::function<std::string()>& w) {
    if (r > value) {
      value = r;
      witness = w();
    }
  }
};

std::string exhaustive_note(const std::string& what, const std::vector<int>& sampled_degrees) {
  if (sampled_degrees.empty()) return what + ": all coefficient tuples enumerated";
  std::ostringstream os;
  os << what << ": seeded sampling at degrees";
  for (int d : sampled_degrees) os << " " << d;
  return os.str();
}

}  // namespace

VerificationReport check_roundtrip(const DistributionSpec& spec, const std::vector<Generator>& alphabet,
                                   const CheckOptions& opt) {
  VerificationReport rep;
  rep.title = "moment-cumulant roundtrip over " + spec.algebra()->label();
  const AlgebraPtr& A = spec.algebra();
  const WordBattery bat = battery_for(spec, alphabet);
  const WordFunction kspec = spec_cumulant_oracle(spec, alphabet);
  ForwardMoments fwd(A, kspec);
  MomentTable fwd_table(A, [&](const LetterWord& l, const IndexWord& i) { return fwd.moment(l, i); });
  CumulantTable k_from_fwd(fwd_table);
  MomentTable dp(A, polynomial_moment_oracle(spec, bat.polys));
  CumulantTable k_from_dp(dp);

  MaxTracker kr, mr;
  std::vector<int> sampled;
  std::size_t words = 0;
  LetterWord l;
  IndexWord idx;
  for (int n = 1; n <= opt.maxdeg; ++n) {
    const auto radices = word_radices(n, static_cast<int>(alphabet.size()), A->dim());
    const bool all = for_each_tuple_within(radices, opt.budget, opt.seed + n, [&](const std::vector<int>& t) {
      split_tuple(t, n, l, idx);
      ++words;
      kr.see(distance(k_from_fwd.cumulant(l, idx), kspec(l, idx)), [&] { return describe_word(bat.names, l, idx); });
      mr.see(distance(k_from_dp.recompose(l, idx), dp.moment(l, idx)), [&] { return describe_word(bat.names, l, idx); });
    });
    if (!all) sampled.push_back(n);
  }
  rep.add("cumulants->moments->cumulants", kr.value, opt.tol, "worst word " + kr.witness);
  rep.add("moments->cumulants->moments", mr.value, opt.tol, "worst word " + mr.witness);
  rep.notes.push_back(std::to_string(words) + " words up to length " + std::to_string(opt.maxdeg));
  rep.notes.push_back(exhaustive_note("coverage", sampled));
  return rep;
}

VerificationReport check_dual_evaluators(const DistributionSpec& spec, const std::vector<Generator>& alphabet,
                                         const CheckOptions& opt) {
  VerificationReport rep;
  rep.title = "moment evaluators over " + spec.algebra()->label();
  const AlgebraPtr& A = spec.algebra();
  const WordBattery bat = battery_for(spec, alphabet);
  ForwardMoments fwd(A, spec_cumulant_oracle(spec, alphabet));
  MomentTable dp(A, polynomial_moment_oracle(spec, bat.polys));
  MaxTracker pr, ir;
  std::vector<int> sampled;
  std::size_t words = 0;
  LetterWord l;
  IndexWord idx;
  for (int n = 1; n <= opt.maxdeg; ++n) {
    const auto radices = word_radices(n, static_cast<int>(alphabet.size()), A->dim());
    const bool all = for_each_tuple_within(radices, opt.budget, opt.seed + 97 * n, [&](const std::vector<int>& t) {
      split_tuple(t, n, l, idx);
      ++words;
      Monomial m;
      m.coeffs.push_back(A->one());
      for (int p = 0; p < n; ++p) {
        m.gens.push_back(alphabet[l[p]]);
        m.coeffs.push_back(p + 1 < n ? A->basis(idx[p]) : A->one());
      }
      const Element& rec = fwd.moment(l, idx);
      pr.see(distance(rec, pairing_moment(spec, m)), [&] { return describe_word(bat.names, l, idx); });
      ir.see(distance(rec, dp.moment(l, idx)), [&] { return describe_word(bat.names, l, idx); });
    });
    if (!all) sampled.push_back(n);
  }
  rep.add("recurrence_vs_pairings", pr.value, opt.tol, "worst word " + pr.witness);
  rep.add("recurrence_vs_interval_dp", ir.value, opt.tol, "worst word " + ir.witness);
  rep.notes.push_back(std::to_string(words) + " words up to length " + std::to_string(opt.maxdeg));
  rep.notes.push_back(exhaustive_note("coverage", sampled));
  return rep;
}

std::vector<std::vector<Generator>> declared_families(const DistributionSpec& spec) {
  std::vector<std::vector<Generator>> fams(spec.num_families());
  for (const auto& g : spec.generators()) fams[spec.family_of(g.id)].push_back(g);
  fams.erase(std::remove_if(fams.begin(), fams.end(), [](const auto& f) { return f.empty(); }), fams.end());
  return fams;
}

namespace {

// Alternating shapes: (family, degree) sequences with adjacent families distinct, total degree <= maxdeg.
void alternating_shapes(int nfam, int maxdeg, std::vector<std::pair<int, int>>& cur,
                        std::vector<std::vector<std::pair<int, int>>>& out, int used) {
  if (cur.size() >= 2) out.push_back(cur);
  for (int f = 0; f < nfam; ++f) {
    if (!cur.empty() && cur.back().first == f) continue;
    for (int d = 1; d <= 2 && used + d <= maxdeg; ++d) {
      cur.push_back({f, d});
      alternating_shapes(nfam, maxdeg, cur, out, used + d);
      cur.pop_back();
    }
  }
}

}  // namespace

VerificationReport check_freeness(const DistributionSpec& spec, const std::vector<std::vector<Generator>>& families,
                                  const CheckOptions& opt) {
  VerificationReport rep;
  rep.title = "freeness with amalgamation over " + spec.algebra()->label();
  const AlgebraPtr& A = spec.algebra();
  const int dim = A->dim();
  std::vector<std::vector<Generator>> fams;
  for (const auto& f : families)
    if (!f.empty()) fams.push_back(f);
  if (fams.size() < 2) {
    rep.add("alternating_moments", 0.0, opt.tol);
    rep.add("mixed_cumulants", 0.0, opt.tol);
    rep.add_flag("methods_agree", true);
    rep.notes.push_back("fewer than two families: vacuous");
    return rep;
  }
  const int maxdeg = std::max(2, opt.maxdeg);

  // Method 1: alternating centered products.
  std::vector<std::vector<std::pair<int, int>>> shapes;
  std::vector<std::pair<int, int>> cur;
  alternating_shapes(static_cast<int>(fams.size()), maxdeg, cur, shapes, 0);
  const std::size_t per_shape = std::max<std::size_t>(16, opt.budget / std::max<std::size_t>(1, shapes.size()));
  MaxTracker mom;
  int mom_degree = -1;
  bool mom_sampled = false;
  for (std::size_t si = 0; si < shapes.size(); ++si) {
    const auto& shape = shapes[si];
    std::vector<int> radices;
    int total_deg = 0;
    for (const auto& [f, d] : shape) {
      total_deg += d;
      for (int r = 0; r < d; ++r) {
        radices.push_back(static_cast<int>(fams[f].size()));
        radices.push_back(dim);
      }
    }
    const bool all = for_each_tuple_within(radices, per_shape, opt.seed + 1000 + si, [&](const std::vector<int>& t) {
      NCPoly prod = NCPoly::constant(A->one());
      std::string gens, detail;
      std::size_t pos = 0;
      for (const auto& [f, d] : shape) {
        Monomial m;
        m.coeffs.push_back(A->one());
        for (int r = 0; r < d; ++r) {
          const Generator g = fams[f][t[pos]];
          m.gens.push_back(g);
          m.coeffs.push_back(A->basis(t[pos + 1]));
          gens += spec.name_of(g);
          detail += spec.name_of(g) + " e" + std::to_string(t[pos + 1]) + " ";
          pos += 2;
        }
        NCPoly atom = NCPoly::from_monomial(m);
        if (d > 1) atom -= NCPoly::constant(inner_expectation(spec, atom));
        prod = prod * atom;
        detail += "| ";
      }
      const double r = inner_expectation(spec, prod).max_abs();
      if (r > opt.tol && (mom_degree < 0 || total_deg < mom_degree)) mom_degree = total_deg;
      mom.see(r, [&] { return "word " + gens + " (" + detail + ")"; });
    });
    mom_sampled = mom_sampled || !all;
  }

  // Method 2: mixed cumulants of generator words.
  std::vector<Generator> alphabet;
  std::vector<int> fam_of;
  for (std::size_t f = 0; f < fams.size(); ++f)
    for (const auto& g : fams[f]) {
      alphabet.push_back(g);
      fam_of.push_back(static_cast<int>(f));
    }
  const WordBattery bat = battery_for(spec, alphabet);
  MomentTable mt(A, polynomial_moment_oracle(spec, bat.polys));
  CumulantTable kt(mt);
  MaxTracker cum;
  int cum_degree = -1;
  bool cum_sampled = false;
  LetterWord l;
  IndexWord idx;
  for (int n = 2; n <= maxdeg; ++n) {
    const auto radices = word_radices(n, static_cast<int>(alphabet.size()), dim);
    const bool all = for_each_tuple_within(radices, opt.budget, opt.seed + 31 * n, [&](const std::vector<int>& t) {
      split_tuple(t, n, l, idx);
      bool mixed = false;
      for (int p = 1; p < n; ++p) mixed = mixed || fam_of[l[p]] != fam_of[l[0]];
      if (!mixed) return;
      const double r = kt.cumulant(l, idx).max_abs();
      if (r > opt.tol && (cum_degree < 0 || n < cum_degree)) cum_degree = n;
      cum.see(r, [&] {
        std::string gens;
        for (int x : l) gens += bat.names[x];
        return "word " + gens + " (" + describe_word(bat.names, l, idx) + ")";
      });
    });
    cum_sampled = cum_sampled || !all;
  }
  const bool m_ok = rep.add("alternating_moments", mom.value, opt.tol, mom.witness, mom_degree);
  const bool c_ok = rep.add("mixed_cumulants", cum.value, opt.tol, cum.witness, cum_degree);
  rep.add_flag("methods_agree", m_ok == c_ok, "moment method and cumulant method disagree");
  rep.notes.push_back(mom_sampled ? "alternating words: seeded sampling per shape"
                                  : "alternating words: all coefficient tuples enumerated");
  rep.notes.push_back(cum_sampled ? "mixed cumulants: seeded sampling at some degrees"
                                  : "mixed cumulants: all coefficient tuples enumerated");
  return rep;
}

VerificationReport verify_matrix_semicircular(const DistributionSpec& entry_spec, Generator s1, Generator c,
                                              Generator s2, const LinearMap& eta, const CheckOptions& opt) {
  VerificationReport rep;
  const AlgebraPtr& C = entry_spec.algebra();
  rep.title = "matrix semicircularity of [[s1, c], [c*, s2]] over M2(" + C->label() + ")";
  const AlgebraPtr amp = amplify2(C);
  const DistributionSpec mspec = entry_spec.amplified(amp);
  MatrixPoly Sm;
  Sm.at(0, 0) = entry_spec.poly(s1);
  Sm.at(0, 1) = entry_spec.poly(c);
  Sm.at(1, 0) = entry_spec.poly(c.adjoint());
  Sm.at(1, 1) = entry_spec.poly(s2);
  const NCPoly S = matrix_lift(Sm, amp);
  const LinearMap ep = eta_plus(eta, amp);
  MomentTable mt(amp, polynomial_moment_oracle(mspec, {S}));
  CumulantTable kt(mt);
  const std::vector<std::string> names{"S"};
  const int dim = amp->dim();

  rep.add("k1", kt.cumulant({0}, {}).max_abs(), opt.tol, "k1(S) != 0", 1);
  MaxTracker k2;
  for (int i = 0; i < dim; ++i)
    k2.see(distance(kt.cumulant({0, 0}, {i}), ep(amp->basis(i))), [&] { return "B = e" + std::to_string(i); });
  rep.add("k2", k2.value, opt.tol, "k2(S (x) B S) != eta+(B) at " + k2.witness, 2);
  std::vector<int> sampled;
  for (int n = 3; n <= opt.maxdeg; ++n) {
    MaxTracker kn;
    const LetterWord l(n, 0);
    const bool all = for_each_tuple_within(std::vector<int>(n - 1, dim), opt.budget, opt.seed + n,
                                           [&](const std::vector<int>& t) {
                                             kn.see(kt.cumulant(l, t).max_abs(),
                                                    [&] { return describe_word(names, l, t); });
                                           });
    if (!all) sampled.push_back(n);
    rep.add("k" + std::to_string(n), kn.value, opt.tol, "nonzero cumulant at " + kn.witness, n);
  }
  rep.notes.push_back(exhaustive_note("higher cumulants", sampled));

  // Entrywise expansion of short words against the amplified moments.
  MaxTracker ew;
  for (int n = 1; n <= std::min(4, opt.maxdeg); ++n) {
    for_each_tuple_within(std::vector<int>(n - 1, dim), 64, opt.seed + 500 + n, [&](const std::vector<int>& t) {
      MatrixPoly P = Sm;
      for (int p = 0; p + 1 < n; ++p) {
        const Element b = amp->basis(t[p]);
        MatrixPoly B;
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) B.at(r, s) = NCPoly::constant(entry_of(C, b, r, s));
        P = P * B * Sm;
      }
      const Element viaentries =
          join2(amp, inner_expectation(entry_spec, P.at(0, 0)), inner_expectation(entry_spec, P.at(0, 1)),
                inner_expectation(entry_spec, P.at(1, 0)), inner_expectation(entry_spec, P.at(1, 1)));
      ew.see(distance(viaentries, mt.moment(LetterWord(n, 0), t)),
             [&] { return describe_word(names, LetterWord(n, 0), t); });
    });
  }
  rep.add("entrywise_moments", ew.value, opt.tol, "amplified moment differs from entrywise expansion at " + ew.witness);
  rep.add_value("eta_plus(1)", ep(amp->one()));
  return rep;
}

}  // namespace ofp
