#include <benchmark/benchmark.h>

#include <complex>

#include "ellgas/edge_asymptotics.hpp"
#include "ellgas/geometry.hpp"

using namespace ellgas;
using C = std::complex<double>;

static void BM_BoundaryFrame(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, 64);
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_frame(theta, p));
    theta += 0.01;
  }
}
BENCHMARK(BM_BoundaryFrame);

static void BM_EffectivePotential(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, 64);
  const C z(1.2, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(effective_potential(z, p));
}
BENCHMARK(BM_EffectivePotential);

static void BM_EdgeDensity(benchmark::State& state) {
  const auto p = EnsembleParams::make(0.5, 1.0, 256);
  const auto f = boundary_frame(0.4, p);
  double xi = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(edge_density(xi, 0.2, f, p));
    xi = xi >= 3.0 ? -3.0 : xi + 0.05;
  }
}
BENCHMARK(BM_EdgeDensity);
