#include <benchmark/benchmark.h>

#include "kcut/angle_optimizer.hpp"
#include "kcut/graph.hpp"
#include "kcut/qaoa1.hpp"

using namespace kcut;

namespace {

CostHamiltonian ensemble_hamiltonian(int n, int d) {
  EnsembleConfig c;
  c.n = n;
  c.d = d;
  c.seed = 42;
  return CostHamiltonian::from_graph(generate_ensemble_graph(c), 3);
}

void BM_PairDensities(benchmark::State &state, Exec exec) {
  const auto H = ensemble_hamiltonian(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
  const auto tables = fourier_tables(H);
  for (auto _ : state)
    benchmark::DoNotOptimize(pair_densities(H, tables, 0.37, exec));
  state.SetItemsProcessed(state.iterations() * H.num_couplings());
}

void BM_Energy(benchmark::State &state, Exec exec) {
  const auto H = ensemble_hamiltonian(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
  const Angles a{{0.1, -0.2, 0.1}, 0.37};
  for (auto _ : state)
    benchmark::DoNotOptimize(energy(H, a, exec));
}

void BM_Optimize(benchmark::State &state, Exec exec) {
  const auto H = ensemble_hamiltonian(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
  OptimizerOptions opts;
  opts.exec = exec;
  for (auto _ : state)
    benchmark::DoNotOptimize(optimize(H, opts));
}

void sizes(benchmark::internal::Benchmark *b) {
  for (int n : {30, 150, 300})
    for (int d : {4, 10})
      b->Args({n, d});
}

} // namespace

BENCHMARK_CAPTURE(BM_PairDensities, serial, Exec::serial)->Apply(sizes);
BENCHMARK_CAPTURE(BM_PairDensities, omp, Exec::parallel)->Apply(sizes);
BENCHMARK_CAPTURE(BM_Energy, serial, Exec::serial)->Apply(sizes);
BENCHMARK_CAPTURE(BM_Energy, omp, Exec::parallel)->Apply(sizes);
BENCHMARK_CAPTURE(BM_Optimize, serial, Exec::serial)->Args({30, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Optimize, omp, Exec::parallel)->Args({30, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
