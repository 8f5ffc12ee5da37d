#include "ofp/montecarlo.hpp"

#include "ofp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace ofp {

MCModel mc_model_for(const AlgebraPtr& B) {
  if (B->num_blocks() == 1) return MCModel::MatrixTrace;
  for (int d : B->block_dims())
    if (d != 1) throw AlgebraError("Monte Carlo realization supports M_d or C^k only, got " + B->label());
  return MCModel::CoordinateAverage;
}

void validate_mc_config(const MCConfig& cfg) {
  if (!cfg.block_algebra) throw AlgebraError("Monte Carlo config needs an algebra");
  if (cfg.N < 16) throw AlgebraError("Monte Carlo needs N >= 16");
  if (cfg.samples < 10) throw AlgebraError("Monte Carlo needs at least 10 samples");
  if (cfg.jobs < 1) throw AlgebraError("jobs must be positive");
  const AlgebraPtr& B = cfg.block_algebra;
  const bool ok = cfg.model == MCModel::MatrixTrace ? B->num_blocks() == 1
                                                    : std::all_of(B->block_dims().begin(), B->block_dims().end(),
                                                                  [](int d) { return d == 1; });
  if (!ok) throw AlgebraError("unsupported (B, E) pair for the Monte Carlo realization");
}

Eigen::MatrixXcd sample_gue(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = cplx(nd(rng), nd(rng));
  Eigen::MatrixXcd h = (a + a.adjoint()) / std::sqrt(2.0 * n);
  return h;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

namespace {

struct BlockModel {
  AlgebraPtr B;
  MCModel model;
  int d = 1;
  int N = 1;

  Eigen::MatrixXcd small(const Element& b) const {
    if (model == MCModel::MatrixTrace) return b.block_matrix(0);
    return b.coords().asDiagonal();
  }
  Element element(const Eigen::MatrixXcd& m) const {
    if (model == MCModel::MatrixTrace) return B->from_blocks({m});
    return B->from_coords(m.diagonal());
  }
  // M (b (x) I_N)
  Eigen::MatrixXcd right_mul(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& b) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(M.rows(), M.cols());
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
          if (b(t, s) != cplx(0.0)) out.block(r * N, s * N, N, N) += M.block(r * N, t * N, N, N) * b(t, s);
    return out;
  }
  // Normalized block partial trace of L R (R may be empty, meaning the identity).
  Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& L, const Eigen::MatrixXcd* R) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        cplx v = 0.0;
        if (!R) {
          v = L.block(r * N, s * N, N, N).trace();
        } else {
          for (int t = 0; t < d; ++t)
            v += L.block(r * N, t * N, N, N).cwiseProduct(R->block(t * N, s * N, N, N).transpose()).sum();
        }
        out(r, s) = v / static_cast<double>(N);
      }
    return out;
  }
};

struct WordPlan {
  std::vector<Generator> gens;
  std::vector<Eigen::MatrixXcd> coeffs;  // small d x d coefficients c_0..c_m
  bool self_adjoint = false;
};

using ProductCache = std::unordered_map<std::string, Eigen::MatrixXcd>;

void append_key(std::string& key, const Eigen::MatrixXcd& c) {
  key.append(reinterpret_cast<const char*>(c.data()), sizeof(cplx) * c.size());
}

// g_from c_from ... g_to (1-based, inclusive), memoized per sample on the segment's content so
// words sharing a prefix reuse the large products.
const Eigen::MatrixXcd& segment_product(const BlockModel& bm, const WordPlan& w, int from, int to,
                                        const std::map<Generator, Eigen::MatrixXcd>& mats, ProductCache& cache) {
  std::string key;
  for (int j = from; j <= to; ++j) {
    key += std::to_string(w.gens[j - 1].id) + (w.gens[j - 1].starred ? "*" : "") + "|";
    if (j < to) append_key(key, w.coeffs[j]);
  }
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Eigen::MatrixXcd P;
  if (from == to)
    P = mats.at(w.gens[from - 1]);
  else
    P = bm.right_mul(segment_product(bm, w, from, to - 1, mats, cache), w.coeffs[to - 1]) * mats.at(w.gens[to - 1]);
  return cache.emplace(std::move(key), std::move(P)).first->second;
}

Eigen::VectorXcd sample_word(const BlockModel& bm, const WordPlan& w, const std::map<Generator, Eigen::MatrixXcd>& mats,
                             ProductCache& cache) {
  const int m = static_cast<int>(w.gens.size());
  Eigen::MatrixXcd pt;
  if (m == 0) {
    pt = Eigen::MatrixXcd::Identity(bm.d, bm.d);
  } else {
    const int h = (m + 1) / 2;
    // L = g_1 c_1 ... g_h c_h (c_h only if h < m), R = g_{h+1} c_{h+1} ... g_m
    const Eigen::MatrixXcd& L0 = segment_product(bm, w, 1, h, mats, cache);
    if (h < m) {
      const Eigen::MatrixXcd L = bm.right_mul(L0, w.coeffs[h]);
      const Eigen::MatrixXcd& R = segment_product(bm, w, h + 1, m, mats, cache);
      pt = bm.partial_trace(L, &R);
    } else {
      pt = bm.partial_trace(L0, nullptr);
    }
  }
  Eigen::MatrixXcd est = w.coeffs.front() * pt * w.coeffs.back();
  if (w.self_adjoint) est = (est + est.adjoint()).eval() / 2.0;
  return bm.element(est).coords();
}

std::string coefficient_label(const Element& c) {
  const AlgebraPtr& A = c.algebra();
  if (c.approx_equal(A->one(), 0.0)) return "";
  for (int i = 0; i < A->dim(); ++i)
    if (c.approx_equal(A->basis(i), 0.0)) return "e" + std::to_string(i);
  return "(" + to_string(c, 3) + ")";
}

std::string word_label(const DistributionSpec& spec, const Monomial& w) {
  std::string out;
  auto push = [&](const std::string& t) {
    if (t.empty()) return;
    if (!out.empty()) out += " ";
    out += t;
  };
  for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
    push(coefficient_label(w.coeffs[i]));
    if (i < w.gens.size()) push(spec.name_of(w.gens[i]));
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::vector<MCEstimate> mc_moments(const MCConfig& cfg, const DistributionSpec& spec,
                                   const std::vector<Monomial>& words) {
  validate_mc_config(cfg);
  const AlgebraPtr& B = cfg.block_algebra;
  if (!spec.algebra()->same_shape(*B)) throw AlgebraError("spec and Monte Carlo algebra differ");
  BlockModel bm{B, cfg.model, cfg.model == MCModel::MatrixTrace ? B->block_dim(0) : B->num_blocks(), cfg.N};
  const int n = bm.d * cfg.N;

  std::vector<WordPlan> plans;
  std::vector<int> ids;
  for (const auto& w : words) {
    WordPlan p;
    for (const auto& g : w.gens) {
      if (!spec.has_variable(g.id)) throw AlgebraError("word references unknown generator X" + std::to_string(g.id));
      p.gens.push_back(spec.canonical(g));
      if (std::find(ids.begin(), ids.end(), g.id) == ids.end()) ids.push_back(g.id);
    }
    for (const auto& c : w.coeffs) p.coeffs.push_back(bm.small(c));
    const NCPoly poly = spec.canonicalize(NCPoly::from_monomial(w));
    p.self_adjoint = poly.approx_equal(spec.canonicalize(poly.adjoint()), 1e-14);
    plans.push_back(std::move(p));
  }
  std::sort(ids.begin(), ids.end());

  const int S = cfg.samples;
  std::vector<std::vector<Eigen::VectorXcd>> per_sample(S);
  auto run_sample = [&](int s) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    std::map<Generator, Eigen::MatrixXcd> mats;
    for (int id : ids) {
      if (spec.variable(id).kind == VariableKind::Semicircular) {
        mats[{id, false}] = sample_gue(n, rng);
      } else {
        const Eigen::MatrixXcd g1 = sample_gue(n, rng);
        const Eigen::MatrixXcd g2 = sample_gue(n, rng);
        Eigen::MatrixXcd c = (g1 + cplx(0.0, 1.0) * g2) / std::sqrt(2.0);
        mats[{id, true}] = c.adjoint();
        mats[{id, false}] = std::move(c);
      }
    }
    ProductCache cache;
    for (const auto& p : plans) per_sample[s].push_back(sample_word(bm, p, mats, cache));
  };
  const int jobs = std::min(cfg.jobs, S);
  if (jobs <= 1) {
    for (int s = 0; s < S; ++s) run_sample(s);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        for (int s = j; s < S; s += jobs) run_sample(s);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<MCEstimate> out;
  const int dim = B->dim();
  std::vector<double> re(S), im(S);
  for (std::size_t w = 0; w < plans.size(); ++w) {
    MCEstimate e;
    Eigen::VectorXcd mean(dim);
    e.standard_error.resize(dim);
    for (int k = 0; k < dim; ++k) {
      for (int s = 0; s < S; ++s) {
        re[s] = per_sample[s][w](k).real();
        im[s] = per_sample[s][w](k).imag();
      }
      const double mr = pairwise_sum(re.data(), S) / S;
      const double mi = pairwise_sum(im.data(), S) / S;
      for (int s = 0; s < S; ++s) {
        re[s] = (re[s] - mr) * (re[s] - mr) + (im[s] - mi) * (im[s] - mi);
      }
      const double var = pairwise_sum(re.data(), S) / (S - 1);
      mean(k) = cplx(mr, mi);
      e.standard_error(k) = std::sqrt(var / S);
    }
    e.mean = B->from_coords(mean);
    out.push_back(std::move(e));
  }
  return out;
}

MCEstimate mc_moment(const MCConfig& cfg, const DistributionSpec& spec, const Monomial& word) {
  return mc_moments(cfg, spec, {word}).front();
}

VerificationReport mc_crosscheck(const MCConfig& cfg, const DistributionSpec& spec, const std::vector<Monomial>& words) {
  VerificationReport rep;
  rep.title = "Monte Carlo cross-check over " + cfg.block_algebra->label();
  const double floor_tol = cfg.finite_size_constant / cfg.N;
  {
    std::ostringstream os;
    os << "N = " << cfg.N << ", samples = " << cfg.samples << ", seed = " << cfg.seed
       << "; tolerance per coordinate max(3 standard errors, " << cfg.finite_size_constant << " / N)";
    rep.notes.push_back(os.str());
  }
  if (words.empty()) {
    validate_mc_config(cfg);
    rep.notes.push_back("empty word list: vacuous pass");
    return rep;
  }
  const auto est = mc_moments(cfg, spec, words);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const Element sym = spec.outer()(moments_from_cumulants(spec, words[w]));
    const Eigen::VectorXcd dev = est[w].mean.coords() - sym.coords();
    // Normalize each coordinate's deviation by its allowance; pass when <= 1.
    double worst = 0.0, worst_dev = 0.0, worst_allow = 0.0;
    for (int k = 0; k < dev.size(); ++k) {
      const double allow = std::max(3.0 * est[w].standard_error(k), floor_tol);
      const double ratio = std::abs(dev(k)) / allow;
      if (ratio >= worst) {
        worst = ratio;
        worst_dev = std::abs(dev(k));
        worst_allow = allow;
      }
    }
    std::ostringstream wit;
    wit << "deviation " << worst_dev << " exceeds allowance " << worst_allow << "; estimate "
        << to_string(est[w].mean) << " vs symbolic " << to_string(sym);
    const std::string name = word_label(spec, words[w]);
    rep.add("word " + name, worst_dev, worst_allow, wit.str());
    rep.add_value("estimate " + name, est[w].mean);
    rep.add_value("symbolic " + name, sym);
    rep.add_value("standard error " + name, Element(sym.algebra(), est[w].standard_error.cast<cplx>()));
  }
  return rep;
}

}  // namespace ofp
