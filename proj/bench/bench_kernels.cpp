// Reference against OpenMP sweep kernels on random 3-SAT factor graphs,
// plus the two model-enumeration engines on a cover encoding.

#include <benchmark/benchmark.h>

#include "survey/cdcl.hpp"
#include "survey/covers.hpp"
#include "survey/factor_graph.hpp"
#include "survey/propagation.hpp"
#include "survey/propagation_kernels.hpp"
#include "survey/rng.hpp"

namespace {

using namespace survey;

FactorGraph random_graph(std::size_t n) {
  return FactorGraph(generate_random_3sat(n, n * 42 / 10, 7));
}

std::vector<double> random_messages(std::size_t count, double hi) {
  Rng rng(11);
  std::vector<double> v(count);
  for (double& x : v) x = hi * uniform01(rng);
  return v;
}

template <typename Kernel>
void run_sp(benchmark::State& state, Kernel kernel) {
  const FactorGraph g = random_graph(static_cast<std::size_t>(state.range(0)));
  const auto eta = random_messages(g.num_edges(), 1.0);
  std::vector<double> next(g.num_edges());
  for (auto _ : state) {
    auto r = kernel(g, eta, next, 0.0);
    benchmark::DoNotOptimize(r);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

template <typename Kernel>
void run_bp(benchmark::State& state, Kernel kernel) {
  const FactorGraph g = random_graph(static_cast<std::size_t>(state.range(0)));
  const auto m = random_messages(g.num_edges(), 0.5);
  std::vector<double> v2c(g.num_edges()), next(g.num_edges());
  for (auto _ : state) {
    auto r = kernel(g, m, v2c, next, 0.5);
    benchmark::DoNotOptimize(r);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_SpSweepReference(benchmark::State& s) { run_sp(s, kernels::sp_sweep_reference); }
void BM_SpSweepParallel(benchmark::State& s) { run_sp(s, kernels::sp_sweep_parallel); }
void BM_BpSweepReference(benchmark::State& s) { run_bp(s, kernels::bp_sweep_reference); }
void BM_BpSweepParallel(benchmark::State& s) { run_bp(s, kernels::bp_sweep_parallel); }

BENCHMARK(BM_SpSweepReference)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_SpSweepParallel)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_BpSweepReference)->Arg(1000)->Arg(5000)->Arg(20000);
BENCHMARK(BM_BpSweepParallel)->Arg(1000)->Arg(5000)->Arg(20000);

void BM_CoverEnumeration(benchmark::State& state) {
  const Formula f = generate_random_3sat(static_cast<std::size_t>(state.range(0)),
                                         static_cast<std::size_t>(state.range(0)) * 42 / 10, 3);
  const SatEngine engine = state.range(1) ? SatEngine::kDpll : SatEngine::kCdcl;
  for (auto _ : state) {
    auto e = enumerate_covers_sat(f, std::numeric_limits<std::size_t>::max(), kUnlimited, engine);
    benchmark::DoNotOptimize(e.covers.size());
  }
  state.SetLabel(state.range(1) ? "dpll" : "cdcl");
}
BENCHMARK(BM_CoverEnumeration)->Args({30, 0})->Args({30, 1})->Args({40, 0})->Args({40, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
