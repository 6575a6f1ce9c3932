#include <benchmark/benchmark.h>

#include <complex>

#include "ellgas/kernel_density.hpp"
#include "ellgas/orthopoly.hpp"
#include "ellgas/quadrature.hpp"

using namespace ellgas;
using C = std::complex<double>;

static void BM_DensityPoint(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, static_cast<int>(state.range(0)));
  const C z(1.6, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(density(z, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensityPoint)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_EvalPolys(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, static_cast<int>(state.range(0)));
  const C z(0.7, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eval_polys(z, p.n, p));
}
BENCHMARK(BM_EvalPolys)->RangeMultiplier(4)->Range(16, 1024);

static void BM_OutsideExact(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, static_cast<int>(state.range(0)));
  QuadratureConfig cfg;
  cfg.max_refine = 0;  // single-pass rule for a stable figure
  for (auto _ : state) benchmark::DoNotOptimize(expected_outside_exact(p, cfg));
}
BENCHMARK(BM_OutsideExact)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_KernelPair(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, 128);
  const C z(0.4, 0.2), w(0.3, -0.1);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(z, w, p));
}
BENCHMARK(BM_KernelPair);
