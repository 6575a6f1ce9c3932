#include "ellgas/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ellgas/geometry.hpp"
#include "ellgas/parallel.hpp"

namespace ellgas {

namespace {

using C = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in (0, 1), from the top 53 bits; never exactly 0 or 1.
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller pair; consumes exactly two uniforms.
std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

bool outside_droplet(C z, const EnsembleParams& p) { return !inside_droplet(z, p); }

// Deterministic start: a sunflower spiral filling 95% of the droplet.
std::vector<C> initial_configuration(const EnsembleParams& p) {
  const double a = capacity(p) * (1.0 + p.t);
  const double b = capacity(p) * (1.0 - p.t);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<C> cfg(static_cast<std::size_t>(p.n));
  for (int j = 0; j < p.n; ++j) {
    const double r = 0.95 * std::sqrt((j + 0.5) / p.n);
    const double ang = golden * j;
    cfg[static_cast<std::size_t>(j)] = C(a * r * std::cos(ang), b * r * std::sin(ang));
  }
  return cfg;
}

// Cumulative arclength lookup s(theta), linear interpolation on a fine grid.
class ArclengthTable {
 public:
  explicit ArclengthTable(const EnsembleParams& p) : table_(kSize + 1) {
    const double dtheta = 2.0 * std::numbers::pi / kSize;
    table_[0] = 0.0;
    for (int i = 1; i <= kSize; ++i)
      table_[i] = table_[i - 1] + arclength((i - 1) * dtheta, i * dtheta, p);
  }
  double total() const { return table_.back(); }
  double operator()(double theta) const {
    const double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    const double pos = theta / two_pi * kSize;
    const int i = std::min(static_cast<int>(pos), kSize - 1);
    const double frac = pos - i;
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  static constexpr int kSize = 8192;
  std::vector<double> table_;
};

struct ChainStats {
  std::vector<int> outside_counts;
  std::vector<double> bins;
  std::vector<std::vector<C>> configs;
  long accepted = 0;
  long proposed = 0;
};

ChainStats run_chain(const SamplerConfig& cfg, int chain, const ArclengthTable& arc) {
  const EnsembleParams& p = cfg.params;
  std::uint64_t stream = cfg.seed;
  for (int k = 0; k <= chain; ++k) splitmix64(stream);  // one stream per chain
  std::mt19937_64 rng(splitmix64(stream));

  const double scale = cfg.effective_scale();
  std::vector<C> config = initial_configuration(p);

  ChainStats stats;
  stats.bins.assign(static_cast<std::size_t>(cfg.histogram_bins), 0.0);
  const long recorded_total = (cfg.sweeps - cfg.burn_in + cfg.thin - 1) / cfg.thin;
  stats.outside_counts.reserve(static_cast<std::size_t>(recorded_total));

  const double L = arc.total();
  for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int i = 0; i < p.n; ++i) {
      const auto [g1, g2] = gaussian_pair(rng);
      const double u = uniform01(rng);
      const C proposed = config[static_cast<std::size_t>(i)] + scale * C(g1, g2);
      const double dE = energy_delta(config, i, proposed, p);
      ++stats.proposed;
      if (dE <= 0.0 || u < std::exp(-p.N * dE)) {
        config[static_cast<std::size_t>(i)] = proposed;
        ++stats.accepted;
      }
    }
    if (sweep < cfg.burn_in || (sweep - cfg.burn_in) % cfg.thin != 0) continue;

    int outside = 0;
    for (const C& z : config) {
      if (!outside_droplet(z, p)) continue;
      ++outside;
      const auto [theta, dist] = project_to_boundary(z, p);
      (void)dist;
      const double s = arc(theta);
      int bin = static_cast<int>(s / L * cfg.histogram_bins);
      bin = std::clamp(bin, 0, cfg.histogram_bins - 1);
      stats.bins[static_cast<std::size_t>(bin)] += 1.0;
    }
    stats.outside_counts.push_back(outside);
    if (static_cast<long>(stats.configs.size()) * cfg.chains < cfg.store_configs_limit)
      stats.configs.push_back(config);
  }
  return stats;
}

}  // namespace

double SamplerConfig::effective_scale() const {
  return proposal_scale > 0.0 ? proposal_scale : 0.7 / std::sqrt(params.N);
}

void SamplerConfig::validate() const {
  params.validate();
  if (!(sweeps > burn_in && burn_in >= 0))
    throw std::invalid_argument("SamplerConfig: need sweeps > burn_in >= 0");
  if (thin < 1) throw std::invalid_argument("SamplerConfig: need thin >= 1");
  if (chains < 1) throw std::invalid_argument("SamplerConfig: need chains >= 1");
  if (histogram_bins < 1) throw std::invalid_argument("SamplerConfig: need histogram_bins >= 1");
  if (!(effective_scale() > 0.0))
    throw std::invalid_argument("SamplerConfig: need proposal_scale > 0");
}

double energy_delta(std::span<const C> config, int particle, C proposed,
                    const EnsembleParams& p) {
  const C z = config[static_cast<std::size_t>(particle)];
  if (proposed == z) return 0.0;
  double interaction = 0.0;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == static_cast<std::size_t>(particle)) continue;
    const double d_new = std::norm(config[j] - proposed);
    if (d_new < 1e-28) return std::numeric_limits<double>::infinity();
    const double d_old = std::norm(config[j] - z);
    interaction += std::log(d_old / d_new);
  }
  return potential(proposed, p) - potential(z, p) + interaction / p.N;
}

double total_energy(std::span<const C> config, const EnsembleParams& p) {
  double e = 0.0;
  for (std::size_t k = 0; k < config.size(); ++k) {
    e += potential(config[k], p);
    for (std::size_t j = 0; j < k; ++j)
      e -= 2.0 / p.N * std::log(std::abs(config[j] - config[k]));
  }
  return e;
}

std::pair<double, double> project_to_boundary(C z, const EnsembleParams& p) {
  const double cap = capacity(p);
  // Initial angle from the exterior conformal image (exact for t = 0).
  double theta;
  const double F0 = foci(p);
  const double dx = std::max(std::abs(z.real()) - F0, 0.0);
  if (std::hypot(dx, z.imag()) > 1e-9)
    theta = std::arg(conformal_to_disk(z, p));
  else
    theta = std::arg(z) * 0.0;  // segment interior: start from theta = 0
  for (int it = 0; it < 60; ++it) {
    const C u = std::polar(1.0, theta);
    const C gamma = cap * (u + p.t * std::conj(u));
    const C dgamma = C(0.0, 1.0) * cap * (u - p.t * std::conj(u));
    const C diff = z - gamma;
    const double g = (diff * std::conj(dgamma)).real();
    // gamma'' = -gamma
    const double gp = -std::norm(dgamma) + (diff * std::conj(-gamma)).real();
    const double step = g / gp;
    theta -= step;
    if (std::abs(step) < 1e-14) break;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return {theta, std::abs(z - boundary_point(theta, p))};
}

SampleBatch run_sampler(const SamplerConfig& cfg) {
  cfg.validate();
  const ArclengthTable arc(cfg.params);

  std::vector<ChainStats> per_chain(static_cast<std::size_t>(cfg.chains));
  parallel_for(static_cast<std::size_t>(cfg.chains), [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c)
      per_chain[c] = run_chain(cfg, static_cast<int>(c), arc);
  });

  SampleBatch batch;
  batch.chains = cfg.chains;
  batch.rng_name = "mt19937_64, one stream per chain seeded by splitmix64(seed)";
  batch.arclength_bins.assign(static_cast<std::size_t>(cfg.histogram_bins), 0.0);

  long accepted = 0, proposed = 0;
  std::vector<std::vector<double>> chain_series;
  for (const ChainStats& cs : per_chain) {
    batch.outside_counts.insert(batch.outside_counts.end(), cs.outside_counts.begin(),
                                cs.outside_counts.end());
    for (std::size_t i = 0; i < batch.arclength_bins.size(); ++i)
      batch.arclength_bins[i] += cs.bins[i];
    for (const auto& conf : cs.configs) batch.configs.push_back(conf);
    accepted += cs.accepted;
    proposed += cs.proposed;
    chain_series.emplace_back(cs.outside_counts.begin(), cs.outside_counts.end());
  }
  batch.samples_per_chain = chain_series.empty() ? 0 : static_cast<long>(chain_series[0].size());
  batch.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  batch.acceptance_warning = !(batch.acceptance_rate > 0.2 && batch.acceptance_rate < 0.7);

  double mean = 0.0;
  for (int c : batch.outside_counts) mean += c;
  mean /= std::max<std::size_t>(1, batch.outside_counts.size());
  batch.mean_outside = mean;

  double var_of_mean = 0.0;
  for (const auto& series : chain_series) {
    const double se = blocked_standard_error(series);
    var_of_mean += se * se;
  }
  batch.blocked_stderr = std::sqrt(var_of_mean) / std::max(1, cfg.chains);
  batch.r_hat = cfg.chains >= 2 ? gelman_rubin(chain_series) : 1.0;
  return batch;
}

double blocked_standard_error(std::span<const double> series) {
  std::vector<double> work(series.begin(), series.end());
  double best = 0.0;
  while (work.size() >= 32) {
    const std::size_t m = work.size();
    double mean = 0.0;
    for (double v : work) mean += v;
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (double v : work) var += (v - mean) * (v - mean);
    var /= static_cast<double>(m - 1);
    best = std::max(best, std::sqrt(var / static_cast<double>(m)));
    std::vector<double> next(m / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = 0.5 * (work[2 * i] + work[2 * i + 1]);
    work.swap(next);
  }
  return best;
}

double gelman_rubin(const std::vector<std::vector<double>>& chains) {
  const std::size_t m = chains.size();
  if (m < 2) return 1.0;
  std::size_t len = std::numeric_limits<std::size_t>::max();
  for (const auto& c : chains) len = std::min(len, c.size());
  if (len < 2) return std::numeric_limits<double>::quiet_NaN();

  std::vector<double> means(m), vars(m);
  for (std::size_t c = 0; c < m; ++c) {
    double mu = 0.0;
    for (std::size_t i = 0; i < len; ++i) mu += chains[c][i];
    mu /= static_cast<double>(len);
    double v = 0.0;
    for (std::size_t i = 0; i < len; ++i) v += (chains[c][i] - mu) * (chains[c][i] - mu);
    means[c] = mu;
    vars[c] = v / static_cast<double>(len - 1);
  }
  double grand = 0.0;
  for (double mu : means) grand += mu;
  grand /= static_cast<double>(m);
  double B = 0.0;
  for (double mu : means) B += (mu - grand) * (mu - grand);
  B *= static_cast<double>(len) / static_cast<double>(m - 1);
  double W = 0.0;
  for (double v : vars) W += v;
  W /= static_cast<double>(m);
  if (W == 0.0) return 1.0;
  const double V = (static_cast<double>(len - 1) / len) * W + B / static_cast<double>(len);
  return std::sqrt(V / W);
}

}  // namespace ellgas
