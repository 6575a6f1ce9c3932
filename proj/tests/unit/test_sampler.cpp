#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "ellgas/geometry.hpp"
#include "ellgas/kernel_density.hpp"
#include "ellgas/sampler.hpp"
#include "oracles.hpp"

using namespace ellgas;
using C = std::complex<double>;

TEST_CASE("energy differences") {
  const auto p = EnsembleParams::make(0.5, 1.0, 3);
  std::vector<C> config = {C(0.3, 0.2), C(-0.5, 0.6), C(0.9, -0.4)};

  // no move, no change
  CHECK(energy_delta(config, 1, config[1], p) == 0.0);

  // single particle: pure potential difference
  {
    const auto p1 = EnsembleParams::make(0.5, 1.0, 1);
    std::vector<C> lone = {C(0.2, 0.1)};
    const C prop(1.1, -0.3);
    CHECK(energy_delta(lone, 0, prop, p1) ==
          doctest::Approx(potential(prop, p1) - potential(lone[0], p1)).epsilon(1e-15));
  }

  // full-energy oracle
  {
    const C prop(0.1, -0.7);
    auto moved = config;
    moved[1] = prop;
    const double direct = energy_delta(config, 1, prop, p);
    const double differenced = total_energy(moved, p) - total_energy(config, p);
    CHECK(std::abs(direct - differenced) <= 1e-10 * std::abs(differenced));
  }

  // coincidence sentinel
  CHECK(std::isinf(energy_delta(config, 0, config[2], p)));
}

TEST_CASE("boundary projection") {
  const auto p = EnsembleParams::make(0.5, 1.0, 8);

  // point on the outward normal ray projects back to its anchor
  {
    const auto f = boundary_frame(0.0, p);
    const auto [theta, dist] = project_to_boundary(f.z0 + 0.7 * f.normal, p);
    CHECK(std::abs(theta) <= 1e-10);
    CHECK(dist == doctest::Approx(0.7).epsilon(1e-10));
  }

  // circle: the angle is the argument
  {
    const auto pc = EnsembleParams::make(0.0, 1.0, 8);
    const C z = std::polar(1.8, 1.234);
    const auto [theta, dist] = project_to_boundary(z, pc);
    CHECK(theta == doctest::Approx(1.234).epsilon(1e-10));
    CHECK(dist == doctest::Approx(0.8).epsilon(1e-10));
  }

  // orthogonality at the nearest point, against a dense-scan oracle
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const C z = std::polar(1.9 + 1.5 * U(rng), 2.0 * std::numbers::pi * U(rng));
    const auto [theta, dist] = project_to_boundary(z, p);
    const auto f = boundary_frame(theta, p);
    CHECK(std::abs(((z - f.z0) * std::conj(f.tangent)).real()) <= 1e-10);
    const auto [theta_scan, dist_scan] = oracles::scan_project(z, p);
    CHECK(std::abs(std::remainder(theta - theta_scan, 2.0 * std::numbers::pi)) <= 1e-6);
    CHECK(std::abs(dist - dist_scan) <= 1e-8);
  }
}

TEST_CASE("sampler configuration validation") {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, 4);
  cfg.sweeps = 100;
  cfg.burn_in = 200;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.burn_in = 10;
  cfg.thin = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.thin = 1;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_scale() == doctest::Approx(0.7 / std::sqrt(cfg.params.N)));
}

TEST_CASE("frozen tape reproducibility") {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, 4);
  cfg.seed = 99;
  cfg.sweeps = 3000;
  cfg.burn_in = 200;
  cfg.chains = 2;
  cfg.store_configs_limit = 8;
  const auto a = run_sampler(cfg);
  const auto b = run_sampler(cfg);
  CHECK(a.outside_counts == b.outside_counts);
  CHECK(a.arclength_bins == b.arclength_bins);
  CHECK(a.acceptance_rate == b.acceptance_rate);
  REQUIRE(a.configs.size() == b.configs.size());
  for (std::size_t i = 0; i < a.configs.size(); ++i) CHECK(a.configs[i] == b.configs[i]);
}

TEST_CASE("batch statistics structure") {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, 4);
  cfg.seed = 7;
  cfg.sweeps = 5000;
  cfg.burn_in = 500;
  cfg.thin = 3;
  cfg.chains = 2;
  const auto b = run_sampler(cfg);

  CHECK(b.samples_per_chain == (cfg.sweeps - cfg.burn_in + cfg.thin - 1) / cfg.thin);
  CHECK(static_cast<long>(b.outside_counts.size()) == b.samples_per_chain * cfg.chains);

  long sum_counts = 0;
  for (int c : b.outside_counts) {
    CHECK(c >= 0);
    CHECK(c <= cfg.params.n);
    sum_counts += c;
  }
  double bin_total = 0.0;
  for (double v : b.arclength_bins) bin_total += v;
  CHECK(bin_total == doctest::Approx(static_cast<double>(sum_counts)).epsilon(1e-12));
  CHECK(!b.rng_name.empty());
}

TEST_CASE("single particle outside probability") {
  // rotation invariant single particle: P(outside) = e^{-NT} = e^{-1}
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.0, 1.0, 1);
  cfg.seed = 12345;
  cfg.sweeps = 300000;
  cfg.burn_in = 2000;
  cfg.chains = 2;
  const auto b = run_sampler(cfg);
  CHECK(std::abs(b.mean_outside - std::exp(-1.0)) <= 3.0 * b.blocked_stderr);
}

TEST_CASE("outside counts match exact quadrature") {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, 2);
  cfg.seed = 777;
  cfg.sweeps = 150000;
  cfg.burn_in = 3000;
  cfg.chains = 4;
  const auto b = run_sampler(cfg);
  const double exact = expected_outside_exact(cfg.params);
  CHECK(std::abs(b.mean_outside - exact) <= 3.0 * b.blocked_stderr);
  CHECK(b.r_hat < 1.05);
  CHECK(!b.acceptance_warning);
}

TEST_CASE("outside counts at moderate particle number") {
  SamplerConfig cfg;
  cfg.params = EnsembleParams::make(0.5, 1.0, 16);
  cfg.seed = 1616;
  cfg.sweeps = 60000;
  cfg.burn_in = 2000;
  cfg.thin = 2;
  cfg.chains = 2;
  const auto b = run_sampler(cfg);
  const double exact = expected_outside_exact(cfg.params);  // ~1.9488
  CHECK(std::abs(b.mean_outside - exact) <= 3.0 * b.blocked_stderr);
  CHECK(std::abs(b.mean_outside - 1.949) <= 0.02);
}

TEST_CASE("statistics helpers") {
  // blocked standard error of an iid series approaches sigma / sqrt(M)
  std::mt19937_64 rng(31);
  std::normal_distribution<double> G(0.0, 2.0);
  std::vector<double> series(1 << 14);
  for (auto& v : series) v = G(rng);
  const double se = blocked_standard_error(series);
  const double iid = 2.0 / std::sqrt(static_cast<double>(series.size()));
  CHECK(se > 0.7 * iid);
  CHECK(se < 1.6 * iid);

  // identical-law chains give a scale reduction near one
  std::vector<std::vector<double>> chains(4, std::vector<double>(4096));
  for (auto& c : chains)
    for (auto& v : c) v = G(rng);
  const double r = gelman_rubin(chains);
  CHECK(r > 0.99);
  CHECK(r < 1.01);
}
