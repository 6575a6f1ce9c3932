// elliptic-gas: finite-n densities, kernels and edge asymptotics of the
// elliptic-droplet log-gas, with Monte Carlo cross-checks.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellgas/edge_asymptotics.hpp"
#include "ellgas/geometry.hpp"
#include "ellgas/kernel_density.hpp"
#include "ellgas/parallel.hpp"
#include "ellgas/quadrature.hpp"
#include "ellgas/sampler.hpp"
#include "ellgas/validation.hpp"
#include "output.hpp"

#ifndef ELLGAS_VERSION
#define ELLGAS_VERSION "0.0.0"
#endif

namespace {

using namespace ellgas;
using ellgas::cli::format_g17;
using ellgas::cli::RunManifest;
using C = std::complex<double>;
using nlohmann::json;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

RunManifest make_manifest(const std::string& command, const EnsembleParams& p) {
  RunManifest m;
  m.command = command;
  m.params = p;
  m.tool_version = ELLGAS_VERSION;
  return m;
}

// Shared ensemble flags.
struct ParamArgs {
  double t = 0.0;
  double T = 1.0;
  int n = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("-t,--t", t, "asymmetry of the potential, 0 <= t < 1")->required();
    cmd->add_option("-T,--T", T, "total mass (default 1)");
    cmd->add_option("-n,--n", n, "particle count")->required();
  }
  EnsembleParams params() const { return EnsembleParams::make(t, T, n); }
};

int run_edge_profile(const ParamArgs& pa, double theta, double xi_min, double xi_max,
                     int steps, const std::string& include, const std::string& out,
                     const std::string& command) {
  if (steps < 1) throw CLI::ValidationError("edge-profile", "steps must be >= 1");
  const auto p = pa.params();
  const auto frame = boundary_frame(theta, p);
  const bool want_exact = include.find("exact") != std::string::npos;
  const bool want0 = include.find("order0") != std::string::npos;
  const bool want1 = include.find("order1") != std::string::npos;
  const bool want2 = include.find("order2") != std::string::npos;

  Timer timer;
  std::vector<std::vector<std::string>> rows;
  const double sqrtN = std::sqrt(p.N);
  for (int i = 0; i < steps; ++i) {
    const double xi = steps == 1 ? xi_min : xi_min + (xi_max - xi_min) * i / (steps - 1);
    std::vector<std::string> row(7);
    row[0] = format_g17(xi);
    double exact = 0.0;
    if (want_exact) {
      exact = density(frame.z0 + xi / sqrtN * frame.normal, p);
      row[1] = format_g17(exact);
    }
    const double r0 = edge_profile_order0(xi);
    const double r1 = r0 + edge_profile_order1(xi, frame) / sqrtN;
    const double r2 = r1 + edge_profile_order2(xi, frame) / p.N;
    if (want0) row[2] = format_g17(r0);
    if (want1) row[3] = format_g17(r1);
    if (want2) row[4] = format_g17(r2);
    if (want_exact) {
      row[5] = format_g17(exact - r0);
      row[6] = format_g17(exact - r1);
    }
    rows.push_back(std::move(row));
  }
  RunManifest m = make_manifest(command, p);
  m.wall_time = timer.seconds();
  ellgas::cli::emit_csv(out,
                        ellgas::cli::csv_text({"xi", "rho_exact", "rho_erfc", "rho_order1",
                                               "rho_order2", "resid1", "resid2"},
                                              rows),
                        m);
  return 0;
}

int run_density_grid(const ParamArgs& pa, double re_min, double re_max, double im_min,
                     double im_max, int steps, const std::string& out,
                     const std::string& command) {
  if (steps < 2) throw CLI::ValidationError("density-grid", "steps must be >= 2");
  const auto p = pa.params();
  Timer timer;
  std::vector<C> pts;
  pts.reserve(static_cast<std::size_t>(steps) * steps);
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j)
      pts.emplace_back(re_min + (re_max - re_min) * i / (steps - 1),
                       im_min + (im_max - im_min) * j / (steps - 1));
  const auto prof = density_profile(pts, p);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(pts.size());
  for (const auto& [z, rho] : prof.points)
    rows.push_back({format_g17(z.real()), format_g17(z.imag()), format_g17(rho)});

  RunManifest m = make_manifest(command, p);
  const double mass = p.N * prof.normalization;
  m.tolerance_report.push_back(
      {"mass-normalization", std::abs(mass - p.n), 1e-4 * p.n, std::abs(mass - p.n) <= 1e-4 * p.n});
  m.wall_time = timer.seconds();
  ellgas::cli::emit_csv(out, ellgas::cli::csv_text({"re", "im", "rho"}, rows), m);
  return 0;
}

int run_kernel_pair(const ParamArgs& pa, const std::vector<double>& zv,
                    const std::vector<double>& wv, const std::string& out,
                    const std::string& command) {
  const auto p = pa.params();
  const C z(zv[0], zv[1]), w(wv[0], wv[1]);
  Timer timer;
  const auto K = kernel(z, w, p);
  const auto Kt = kernel(w, z, p);
  const auto pre = prekernel(z, w, p);
  json j;
  j["z"] = {z.real(), z.imag()};
  j["w"] = {w.real(), w.imag()};
  j["kernel"] = {{"log_abs", K.value.log_abs()}, {"arg", K.value.arg()}};
  j["prekernel"] = {{"log_abs", pre.value.log_abs()}, {"arg", pre.value.arg()}};
  j["gaussian_scaled_abs"] =
      std::exp(K.value.log_abs() - std::log(p.N) + 0.5 * p.N * std::norm(z - w));
  const double herm = std::abs(K.value.value_shifted(K.value.log_abs()) -
                               std::conj(Kt.value.value_shifted(K.value.log_abs())));
  j["hermitian_residual"] = herm;

  RunManifest m = make_manifest(command, p);
  m.tolerance_report.push_back({"kernel-hermitian", herm, 1e-12, herm <= 1e-12});
  m.wall_time = timer.seconds();
  ellgas::cli::emit_json(out, std::move(j), m);
  return 0;
}

int run_cauchy(const ParamArgs& pa, const std::vector<double>& zv, const std::string& out,
               const std::string& command) {
  const auto p = pa.params();
  const C z(zv[0], zv[1]);
  Timer timer;
  const auto res = cauchy_transform(z, p);
  json j;
  j["z"] = {z.real(), z.imag()};
  j["value"] = {res.value.real(), res.value.imag()};
  j["abs"] = std::abs(res.value);
  j["error_bound"] = res.error_bound;
  j["norm_check"] = res.norm_check;

  RunManifest m = make_manifest(command, p);
  m.tolerance_report.push_back({"cauchy-normalization", std::abs(res.norm_check - 1.0), 1e-7,
                                std::abs(res.norm_check - 1.0) <= 1e-7});
  m.wall_time = timer.seconds();
  ellgas::cli::emit_json(out, std::move(j), m);
  return 0;
}

int run_outside(const ParamArgs& pa, const std::string& method, std::uint64_t seed,
                bool seed_given, long sweeps, long burn_in, long thin, int chains,
                const std::string& out, const std::string& command) {
  const auto p = pa.params();
  Timer timer;
  json j;
  j["method"] = method;
  RunManifest m = make_manifest(command, p);

  if (method == "exact") {
    if (p.n > 512)
      throw CLI::ValidationError("outside", "exact method is limited to n <= 512");
    double resid = 0.0;
    j["n_out"] = expected_outside_exact(p, {}, &resid);
    m.tolerance_report.push_back(
        {"mass-conservation", std::abs(resid), 1e-4, std::abs(resid) <= 1e-4});
  } else if (method == "asymptotic") {
    const auto oc = n_out_asymptotic(p);
    j["n_out"] = oc.total();
    j["leading"] = oc.leading;
    j["correction"] = oc.correction;
    j["k_modulus"] = oc.k_modulus;
    j["perimeter"] = oc.perimeter;
  } else if (method == "mcmc") {
    if (!seed_given) throw CLI::ValidationError("outside", "--seed is required for mcmc");
    SamplerConfig cfg;
    cfg.params = p;
    cfg.seed = seed;
    cfg.sweeps = sweeps;
    cfg.burn_in = burn_in;
    cfg.thin = thin;
    cfg.chains = chains;
    const auto batch = run_sampler(cfg);
    j["n_out"] = batch.mean_outside;
    j["stderr"] = batch.blocked_stderr;
    j["r_hat"] = batch.r_hat;
    j["acceptance_rate"] = batch.acceptance_rate;
    j["rng"] = batch.rng_name;
    m.seed = seed;
  } else {
    throw CLI::ValidationError("outside", "method must be exact, asymptotic or mcmc");
  }
  m.wall_time = timer.seconds();
  ellgas::cli::emit_json(out, std::move(j), m);
  return 0;
}

json batch_to_json(const SampleBatch& batch, bool with_configs) {
  json j;
  j["chains"] = batch.chains;
  j["samples_per_chain"] = batch.samples_per_chain;
  j["mean_outside"] = batch.mean_outside;
  j["blocked_stderr"] = batch.blocked_stderr;
  j["r_hat"] = batch.r_hat;
  j["acceptance_rate"] = batch.acceptance_rate;
  j["acceptance_warning"] = batch.acceptance_warning;
  j["rng"] = batch.rng_name;
  j["outside_counts"] = batch.outside_counts;
  j["arclength_bins"] = batch.arclength_bins;
  if (with_configs) {
    auto configs = json::array();
    for (const auto& conf : batch.configs) {
      auto one = json::array();
      for (const C& z : conf) one.push_back({z.real(), z.imag()});
      configs.push_back(std::move(one));
    }
    j["configs"] = std::move(configs);
  }
  return j;
}

int run_sample(const ParamArgs& pa, std::uint64_t seed, long sweeps, long burn_in, long thin,
               int chains, int bins, long store_configs, const std::string& out,
               const std::string& command) {
  SamplerConfig cfg;
  cfg.params = pa.params();
  cfg.seed = seed;
  cfg.sweeps = sweeps;
  cfg.burn_in = burn_in;
  cfg.thin = thin;
  cfg.chains = chains;
  cfg.histogram_bins = bins;
  cfg.store_configs_limit = store_configs;
  Timer timer;
  const auto batch = run_sampler(cfg);
  json j = batch_to_json(batch, store_configs > 0);
  RunManifest m = make_manifest(command, cfg.params);
  m.seed = seed;
  m.tolerance_report.push_back({"acceptance-window", batch.acceptance_rate, 0.7,
                                !batch.acceptance_warning});
  m.wall_time = timer.seconds();
  ellgas::cli::emit_json(out, std::move(j), m);
  return 0;
}

int run_arclength_hist(const ParamArgs& pa, std::uint64_t seed, long sweeps, long burn_in,
                       long thin, int chains, int bins, const std::string& out,
                       const std::string& command) {
  SamplerConfig cfg;
  cfg.params = pa.params();
  cfg.seed = seed;
  cfg.sweeps = sweeps;
  cfg.burn_in = burn_in;
  cfg.thin = thin;
  cfg.chains = chains;
  cfg.histogram_bins = bins;
  Timer timer;
  const auto batch = run_sampler(cfg);
  const auto& p = cfg.params;

  // bin masses of the closed-form escape density
  const double L = perimeter(p);
  std::vector<double> weight(static_cast<std::size_t>(bins), 0.0);
  double total_weight = 0.0;
  const int fine = 400 * bins;
  for (int i = 0; i < fine; ++i) {
    const double th = 2.0 * std::numbers::pi * (i + 0.5) / fine;
    const double dth = 2.0 * std::numbers::pi / fine;
    const double speed =
        capacity(p) * std::sqrt(1.0 + p.t * p.t - 2.0 * p.t * std::cos(2.0 * th));
    const double s = arclength(0.0, th, p);
    const int bin = std::min(bins - 1, static_cast<int>(s / L * bins));
    const double mass = arclength_escape_density(th, p) * speed * dth;
    weight[static_cast<std::size_t>(bin)] += mass;
    total_weight += mass;
  }
  double observed_total = 0.0;
  for (double v : batch.arclength_bins) observed_total += v;

  double chi2 = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < bins; ++k) {
    const double expected = observed_total * weight[static_cast<std::size_t>(k)] / total_weight;
    const double obs = batch.arclength_bins[static_cast<std::size_t>(k)];
    chi2 += (obs - expected) * (obs - expected) / expected;
    rows.push_back({std::to_string(k), format_g17(L * k / bins), format_g17(L * (k + 1) / bins),
                    format_g17(obs), format_g17(expected)});
  }
  const double chi2_dof = chi2 / (bins - 1);

  RunManifest m = make_manifest(command, p);
  m.seed = seed;
  m.tolerance_report.push_back({"histogram-chi2-dof", chi2_dof, 2.0, chi2_dof <= 2.0});
  m.tolerance_report.push_back({"histogram-escapers", observed_total, 0.0, true});
  m.wall_time = timer.seconds();
  ellgas::cli::emit_csv(out,
                        ellgas::cli::csv_text({"bin", "s_lo", "s_hi", "observed", "expected"}, rows),
                        m);
  return chi2_dof <= 2.0 ? 0 : 1;
}

int run_validate(const std::string& level, std::uint64_t seed, const std::string& out,
                 const std::string& command) {
  Timer timer;
  const auto lvl = level == "full" ? ValidationLevel::full : ValidationLevel::fast;
  const auto results = run_validation(lvl, seed);
  int fails = 0;
  for (const auto& r : results) {
    if (!r.pass) ++fails;
    std::printf("%-4s %-45s value=%.6e bound=%.6e\n", r.pass ? "ok" : "FAIL", r.name.c_str(),
                r.value, r.bound);
  }
  std::printf("%d checks, %d failures\n", static_cast<int>(results.size()), fails);

  if (!out.empty() && out != "-") {
    RunManifest m = make_manifest(command, EnsembleParams{});
    m.seed = seed;
    m.tolerance_report = results;
    m.wall_time = timer.seconds();
    json j;
    j["level"] = level;
    j["checks"] = static_cast<int>(results.size());
    j["failures"] = fails;
    ellgas::cli::emit_json(out, std::move(j), m);
  } else {
    std::cerr << "wall_time_s=" << timer.seconds() << "\n";
  }
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-n density, kernel and edge asymptotics of the elliptic-droplet log-gas"};
  app.set_version_flag("--version", ELLGAS_VERSION);
  app.require_subcommand(1);
  const std::string command = join_args(argc, argv);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = all cores; ELLIPTIC_GAS_THREADS overrides)");

  // edge-profile
  ParamArgs ep_pa;
  double ep_theta = 0.0, ep_xi_min = -3.0, ep_xi_max = 3.0;
  int ep_steps = 61;
  std::string ep_include = "exact,order0,order1,order2";
  std::string ep_out = "-";
  auto* ep = app.add_subcommand("edge-profile",
                                "density profile across the droplet edge (CSV)");
  ep_pa.attach(ep);
  ep->add_option("--theta", ep_theta, "boundary angle");
  ep->add_option("--xi-min", ep_xi_min, "window start in the scaled normal coordinate");
  ep->add_option("--xi-max", ep_xi_max, "window end");
  ep->add_option("--steps", ep_steps, "number of grid points");
  ep->add_option("--include", ep_include, "columns to compute: exact,order0,order1,order2");
  ep->add_option("-o,--output", ep_out, "output path (- for stdout)");

  // density-grid
  ParamArgs dg_pa;
  double dg_re_min = -2.0, dg_re_max = 2.0, dg_im_min = -2.0, dg_im_max = 2.0;
  int dg_steps = 64;
  std::string dg_out = "-";
  auto* dg = app.add_subcommand("density-grid", "density on a rectangular grid (CSV)");
  dg_pa.attach(dg);
  dg->add_option("--re-min", dg_re_min, "");
  dg->add_option("--re-max", dg_re_max, "");
  dg->add_option("--im-min", dg_im_min, "");
  dg->add_option("--im-max", dg_im_max, "");
  dg->add_option("--steps", dg_steps, "grid points per side");
  dg->add_option("-o,--output", dg_out, "output path");

  // kernel-pair
  ParamArgs kp_pa;
  std::vector<double> kp_z{0.0, 0.0}, kp_w{0.0, 0.0};
  std::string kp_out = "-";
  auto* kp = app.add_subcommand("kernel-pair", "kernel and pre-kernel at a point pair (JSON)");
  kp_pa.attach(kp);
  kp->add_option("--z", kp_z, "RE IM")->expected(2)->required();
  kp->add_option("--w", kp_w, "RE IM")->expected(2)->required();
  kp->add_option("-o,--output", kp_out, "output path");

  // cauchy
  ParamArgs cy_pa;
  std::vector<double> cy_z{0.0, 0.0};
  std::string cy_out = "-";
  auto* cy = app.add_subcommand("cauchy",
                                "Cauchy transform of |p_n|^2 e^{-NV} at an interior point (JSON)");
  cy_pa.attach(cy);
  cy->add_option("--z", cy_z, "RE IM")->expected(2)->required();
  cy->add_option("-o,--output", cy_out, "output path");

  // outside
  ParamArgs os_pa;
  std::string os_method = "exact";
  std::uint64_t os_seed = 0;
  long os_sweeps = 200000, os_burn = 5000, os_thin = 1;
  int os_chains = 4;
  std::string os_out = "-";
  auto* os_cmd = app.add_subcommand("outside", "expected number of particles outside (JSON)");
  os_pa.attach(os_cmd);
  os_cmd->add_option("--method", os_method, "exact | asymptotic | mcmc");
  auto* os_seed_opt = os_cmd->add_option("--seed", os_seed, "RNG seed (required for mcmc)");
  os_cmd->add_option("--sweeps", os_sweeps, "mcmc sweeps per chain");
  os_cmd->add_option("--burn-in", os_burn, "mcmc burn-in sweeps");
  os_cmd->add_option("--thin", os_thin, "mcmc thinning stride");
  os_cmd->add_option("--chains", os_chains, "mcmc chains");
  os_cmd->add_option("-o,--output", os_out, "output path");

  // sample
  ParamArgs sm_pa;
  std::uint64_t sm_seed = 0;
  long sm_sweeps = 20000, sm_burn = 2000, sm_thin = 1, sm_store = 0;
  int sm_chains = 1, sm_bins = 140;
  std::string sm_out = "-";
  auto* sm = app.add_subcommand("sample", "Metropolis sampling of the particle gas (JSON)");
  sm_pa.attach(sm);
  sm->add_option("--seed", sm_seed, "RNG seed")->required();
  sm->add_option("--sweeps", sm_sweeps, "sweeps per chain");
  sm->add_option("--burn-in", sm_burn, "burn-in sweeps");
  sm->add_option("--thin", sm_thin, "thinning stride");
  sm->add_option("--chains", sm_chains, "independent chains");
  sm->add_option("--bins", sm_bins, "arclength histogram bins");
  sm->add_option("--store-configs", sm_store, "retain this many thinned configurations");
  sm->add_option("-o,--output", sm_out, "output path");

  // arclength-hist
  ParamArgs ah_pa;
  std::uint64_t ah_seed = 0;
  long ah_sweeps = 420000, ah_burn = 4000, ah_thin = 16;
  int ah_chains = 2, ah_bins = 35;
  std::string ah_out = "-";
  auto* ah = app.add_subcommand("arclength-hist",
                                "escaper projections vs the closed-form arclength density (CSV)");
  ah_pa.attach(ah);
  ah->add_option("--seed", ah_seed, "RNG seed")->required();
  ah->add_option("--sweeps", ah_sweeps, "sweeps per chain");
  ah->add_option("--burn-in", ah_burn, "burn-in sweeps");
  ah->add_option("--thin", ah_thin, "thinning stride");
  ah->add_option("--chains", ah_chains, "independent chains");
  ah->add_option("--bins", ah_bins, "histogram bins");
  ah->add_option("-o,--output", ah_out, "output path");

  // validate
  std::string vl_level = "fast";
  std::uint64_t vl_seed = 2024;
  std::string vl_out;
  auto* vl = app.add_subcommand("validate", "run the invariant check suites");
  vl->add_option("--level", vl_level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  vl->add_option("--seed", vl_seed, "RNG seed for randomized checks");
  vl->add_option("-o,--output", vl_out, "JSON report path");

  // let --threads appear after the subcommand name
  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
    if (threads > 0) set_max_threads(threads);

    if (ep->parsed())
      return run_edge_profile(ep_pa, ep_theta, ep_xi_min, ep_xi_max, ep_steps, ep_include,
                              ep_out, command);
    if (dg->parsed())
      return run_density_grid(dg_pa, dg_re_min, dg_re_max, dg_im_min, dg_im_max, dg_steps,
                              dg_out, command);
    if (kp->parsed()) return run_kernel_pair(kp_pa, kp_z, kp_w, kp_out, command);
    if (cy->parsed()) return run_cauchy(cy_pa, cy_z, cy_out, command);
    if (os_cmd->parsed())
      return run_outside(os_pa, os_method, os_seed, os_seed_opt->count() > 0, os_sweeps,
                         os_burn, os_thin, os_chains, os_out, command);
    if (sm->parsed())
      return run_sample(sm_pa, sm_seed, sm_sweeps, sm_burn, sm_thin, sm_chains, sm_bins,
                        sm_store, sm_out, command);
    if (ah->parsed())
      return run_arclength_hist(ah_pa, ah_seed, ah_sweeps, ah_burn, ah_thin, ah_chains,
                                ah_bins, ah_out, command);
    if (vl->parsed()) return run_validate(vl_level, vl_seed, vl_out, command);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
