#include "ofp/cumulant_checks.hpp"
#include "ofp/fisher.hpp"
#include "ofp/frames.hpp"
#include "ofp/moments.hpp"
#include "ofp/montecarlo.hpp"

#include <benchmark/benchmark.h>

using namespace ofp;

namespace {

struct M2Semicircular {
  AlgebraPtr A = make_algebra({2}, "M2");
  CondExpectation E = normalized_trace_expectation(A);
  DistributionSpec spec{A};
  Generator X;
  M2Semicircular() : X{spec.add_semicircular("X", E.map()), false} {}
  Monomial word(int n) const {
    std::vector<Element> coeffs;
    for (int i = 0; i <= n; ++i) coeffs.push_back(A->basis(i % A->dim()));
    return make_monomial(coeffs, GeneratorWord(n, X));
  }
};

// Recurrence evaluator vs explicit pairing sum as the degree grows.
void BM_MomentRecurrence(benchmark::State& state) {
  M2Semicircular m;
  const Monomial w = m.word(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moments_from_cumulants(m.spec, w));
}
BENCHMARK(BM_MomentRecurrence)->DenseRange(2, 12, 2);

void BM_PairingSum(benchmark::State& state) {
  M2Semicircular m;
  const Monomial w = m.word(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairing_moment(m.spec, w));
}
BENCHMARK(BM_PairingSum)->DenseRange(2, 12, 2);

void BM_Roundtrip(benchmark::State& state) {
  M2Semicircular m;
  const CheckOptions opt{static_cast<int>(state.range(0)), 1e-9, 1 << 15, 1};
  for (auto _ : state) benchmark::DoNotOptimize(check_roundtrip(m.spec, {m.X}, opt));
}
BENCHMARK(BM_Roundtrip)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ConjugateVerification(benchmark::State& state) {
  M2Semicircular m;
  const CheckOptions opt{static_cast<int>(state.range(0)), 1e-9, 1024, 1};
  const ConjugateCandidate cand{m.X, m.spec.poly(m.X), m.E.map(), "X"};
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_conjugate_system(m.spec, spec_variables(m.spec, {m.X}), {cand}, opt));
}
BENCHMARK(BM_ConjugateVerification)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Index(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const AlgebraPtr A = make_algebra({d});
  const CondExpectation E = normalized_trace_expectation(A);
  for (auto _ : state) benchmark::DoNotOptimize(compute_index(E));
}
BENCHMARK(BM_Index)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_MonteCarloWord(benchmark::State& state) {
  const AlgebraPtr C = make_algebra({1});
  DistributionSpec spec(C);
  const Generator X{spec.add_semicircular("X", LinearMap::identity(C)), false};
  MCConfig cfg;
  cfg.block_algebra = C;
  cfg.N = static_cast<int>(state.range(0));
  cfg.samples = 10;
  const Monomial w = make_monomial(std::vector<Element>(5, C->one()), GeneratorWord(4, X));
  for (auto _ : state) benchmark::DoNotOptimize(mc_moment(cfg, spec, w));
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_MonteCarloWord)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
