#include <benchmark/benchmark.h>

#include "ellgas/sampler.hpp"

using namespace ellgas;

static void BM_SamplerSweeps(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, static_cast<int>(state.range(0)));
  cfg.seed = 1;
  cfg.sweeps = 200;
  cfg.burn_in = 0;
  cfg.thin = 200;  // statistics off the hot path
  for (auto _ : state) benchmark::DoNotOptimize(run_sampler(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.sweeps * cfg.params.n);
}
BENCHMARK(BM_SamplerSweeps)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ProjectToBoundary(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, 64);
  const std::complex<double> z(2.1, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(project_to_boundary(z, p));
}
BENCHMARK(BM_ProjectToBoundary);

BENCHMARK_MAIN();
