#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ellgas/params.hpp"

namespace ellgas {

/// Metropolis chain configuration.  Identical configs produce bit-identical
/// batches: one independent, documented random stream per chain, and no
/// hidden entropy.
struct SamplerConfig {
  EnsembleParams params;
  std::uint64_t seed = 0;
  long sweeps = 20000;        ///< one sweep = n single-particle proposals
  long burn_in = 2000;
  long thin = 1;              ///< record every thin-th post-burn-in sweep
  double proposal_scale = 0;  ///< <= 0 selects the default 0.7 / sqrt(N)
  int chains = 1;
  int histogram_bins = 140;   ///< arclength bins for escaper projections
  long store_configs_limit = 0;  ///< thinned configurations to retain

  double effective_scale() const;
  void validate() const;  ///< throws std::invalid_argument naming the bound
};

/// Thinned MCMC output with outside-count and projection statistics.
struct SampleBatch {
  std::vector<std::vector<std::complex<double>>> configs;  ///< retained snapshots
  std::vector<int> outside_counts;     ///< per recorded sample, chains concatenated
  std::vector<double> arclength_bins;  ///< escaper projection counts over [0, L)
  double acceptance_rate = 0.0;
  bool acceptance_warning = false;  ///< set when acceptance leaves (0.2, 0.7)

  int chains = 0;
  long samples_per_chain = 0;
  double mean_outside = 0.0;
  double blocked_stderr = 0.0;  ///< blocked standard error of mean_outside
  double r_hat = 0.0;           ///< Gelman-Rubin across chains (1.0 if single chain)
  std::string rng_name;         ///< generator / stream-splitting selection
};

/// Energy change for moving config[particle] to `proposed`:
///   V(z') - V(z) + (2/N) sum_{j != particle} log(|z_j - z| / |z_j - z'|).
/// Returns +infinity when `proposed` collides with another particle within
/// 1e-14 (rejection sentinel).
double energy_delta(std::span<const std::complex<double>> config, int particle,
                    std::complex<double> proposed, const EnsembleParams& p);

/// Total energy sum V(z_k) - (2/N) sum_{j<k} log |z_j - z_k|; used to
/// cross-check energy_delta.
double total_energy(std::span<const std::complex<double>> config,
                    const EnsembleParams& p);

/// Nearest boundary point of an exterior point: Newton-refined angle theta*
/// with (z - gamma(theta*)) orthogonal to the tangent, and the distance.
std::pair<double, double> project_to_boundary(std::complex<double> z,
                                              const EnsembleParams& p);

/// Runs `chains` independent Metropolis chains (in parallel; per-chain
/// statistics are merged in chain order) and collects the batch.
SampleBatch run_sampler(const SamplerConfig& cfg);

/// Blocked standard error of the mean of a (possibly autocorrelated) series:
/// iterated pair-averaging, reporting the plateau value.
double blocked_standard_error(std::span<const double> series);

/// Gelman-Rubin potential scale reduction across chains.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

}  // namespace ellgas
