#include "ellgas/kernel_density.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ellgas/orthopoly.hpp"
#include "ellgas/parallel.hpp"
#include "ellgas/special_functions.hpp"

namespace ellgas {

namespace {

using C = std::complex<double>;

// Evaluates f over the nodes in parallel and reduces with a pairwise tree
// sum, so the result does not depend on the thread count.
template <class F>
double integrate_nodes(const std::vector<PlanarNode>& nodes, F&& f) {
  std::vector<double> vals(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) vals[i] = nodes[i].w * f(nodes[i].z);
  });
  return pairwise_sum(vals);
}

template <class F>
C integrate_nodes_complex(const std::vector<PlanarNode>& nodes, F&& f) {
  std::vector<double> re(nodes.size()), im(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const C v = nodes[i].w * f(nodes[i].z);
      re[i] = v.real();
      im[i] = v.imag();
    }
  });
  return {pairwise_sum(re), pairwise_sum(im)};
}

// Rule-doubling driver for scalar integrands.
template <class F>
double refine_integral(const EnsembleParams& p, PlanarRegion region,
                       const QuadratureConfig& cfg, F&& f) {
  int radial = cfg.radial, angular = cfg.angular;
  double prev = integrate_nodes(elliptic_polar_rule(p, region, radial, angular, cfg.omega_cut), f);
  for (int pass = 0; pass < cfg.max_refine; ++pass) {
    radial *= 2;
    angular *= 2;
    const double cur =
        integrate_nodes(elliptic_polar_rule(p, region, radial, angular, cfg.omega_cut), f);
    if (std::abs(cur - prev) < cfg.tolerance * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

double log_density_impl(C z, const EnsembleParams& p) {
  LogSumExp acc;
  scaled_recurrence(z, p.n - 1, p, [&](int, C u, double log_scale) {
    if (u != 0.0) acc.add(2.0 * (std::log(std::abs(u)) + log_scale));
  });
  return acc.value() - std::log(p.N) - p.N * potential(z, p);
}

// Sum of p_j(z) conj(p_j(w)) in scaled form.
ScaledComplex correlation_sum(const PolySequence& a, const PolySequence& b) {
  const int jmax = std::min(a.jmax(), b.jmax());
  double max_log = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= jmax; ++j) {
    if (a[j].is_zero() || b[j].is_zero()) continue;
    max_log = std::max(max_log, a[j].log_abs() + b[j].log_abs());
  }
  if (std::isinf(max_log)) return ScaledComplex::zero();
  C sum = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    if (a[j].is_zero() || b[j].is_zero()) continue;
    const double lg = a[j].log_abs() + b[j].log_abs() - max_log;
    sum += std::polar(std::exp(lg), a[j].arg() - b[j].arg());
  }
  if (sum == 0.0) return ScaledComplex::zero();
  return ScaledComplex::from_parts(max_log + std::log(std::abs(sum)), std::arg(sum));
}

double min_boundary_distance(C z, const EnsembleParams& p) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 512; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 512;
    best = std::min(best, std::abs(z - boundary_point(th, p)));
  }
  return best;
}

}  // namespace

double log_density(C z, const EnsembleParams& p) { return log_density_impl(z, p); }

double density(C z, const EnsembleParams& p) { return std::exp(log_density_impl(z, p)); }

KernelValue kernel(C z, C w, const EnsembleParams& p) {
  const PolySequence a = eval_polys(z, p.n - 1, p);
  const PolySequence b = eval_polys(w, p.n - 1, p);
  ScaledComplex s = correlation_sum(a, b);
  if (s.is_zero()) return {s, z, w};
  const double log_weight = -0.5 * p.N * (potential(z, p) + potential(w, p));
  return {ScaledComplex::from_parts(s.log_abs() + log_weight, s.arg()), z, w};
}

KernelValue prekernel(C z, C w, const EnsembleParams& p) {
  const PolySequence a = eval_polys(z, p.n - 1, p);
  const PolySequence b = eval_polys(w, p.n - 1, p);
  ScaledComplex s = correlation_sum(a, b);
  if (s.is_zero()) return {s, z, w};
  const C expo = -p.N * (z * std::conj(w) - 0.5 * p.t * z * z -
                         0.5 * p.t * std::conj(w) * std::conj(w));
  return {ScaledComplex::from_parts(s.log_abs() + expo.real(), s.arg() + expo.imag()), z, w};
}

C density_gradient_cd(C z, const EnsembleParams& p) {
  const PolySequence seq = eval_polys(z, p.n, p);
  const ScaledComplex& pn = seq[p.n];
  const ScaledComplex& pn1 = seq[p.n - 1];
  if (pn.is_zero() || pn1.is_zero()) return 0.0;
  const double log_pair = pn.log_abs() + pn1.log_abs();
  const double d = pn.arg() - pn1.arg();
  const C combo = p.t * std::polar(1.0, d) - std::polar(1.0, -d);
  const double log_amp = log_pair - p.N * potential(z, p) +
                         0.5 * std::log(p.T / (1.0 - p.t * p.t));
  return combo * std::exp(log_amp);
}

DensityProfile density_profile(const std::vector<C>& pts, const EnsembleParams& p,
                               const QuadratureConfig& cfg) {
  DensityProfile prof;
  prof.params = p;
  prof.points.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) prof.points[i] = {pts[i], density(pts[i], p)};
  });
  prof.normalization = integrate_density(p, PlanarRegion::plane, cfg);
  return prof;
}

double integrate_density(const EnsembleParams& p, PlanarRegion region,
                         const QuadratureConfig& cfg) {
  return refine_integral(p, region, cfg,
                         [&](C w) { return std::exp(log_density_impl(w, p)); });
}

std::vector<C> orthonormality_matrix(const EnsembleParams& p, int jmax,
                                     const QuadratureConfig& cfg) {
  if (jmax < 0 || jmax > p.n + 8)
    throw std::invalid_argument("orthonormality_matrix: jmax out of range");
  const int m = jmax + 1;
  const auto nodes = elliptic_polar_rule(p, PlanarRegion::plane, cfg.radial, cfg.angular,
                                         cfg.omega_cut);
  // Fixed-size chunks accumulated in chunk order keep the reduction
  // deterministic regardless of the thread count.
  const std::size_t chunk = 2048;
  const std::size_t nchunks = (nodes.size() + chunk - 1) / chunk;
  std::vector<std::vector<C>> partial(nchunks, std::vector<C>(m * m, 0.0));
  parallel_for(nchunks, [&](std::size_t cb, std::size_t ce) {
    std::vector<C> vals(m);
    for (std::size_t ci = cb; ci < ce; ++ci) {
      auto& acc = partial[ci];
      const std::size_t b = ci * chunk;
      const std::size_t e = std::min(nodes.size(), b + chunk);
      for (std::size_t i = b; i < e; ++i) {
        const PolySequence seq = eval_polys(nodes[i].z, jmax, p);
        const double log_w = -0.5 * p.N * potential(nodes[i].z, p);
        for (int j = 0; j < m; ++j)
          vals[j] = seq[j].is_zero()
                        ? C(0.0)
                        : std::polar(std::exp(seq[j].log_abs() + log_w), seq[j].arg());
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k)
            acc[j * m + k] += nodes[i].w * vals[j] * std::conj(vals[k]);
      }
    }
  });
  std::vector<C> gram(m * m, 0.0);
  for (const auto& part : partial)
    for (int idx = 0; idx < m * m; ++idx) gram[idx] += part[idx];
  return gram;
}

CauchyResult cauchy_transform(C z, const EnsembleParams& p, const QuadratureConfig& cfg,
                              double r0) {
  if (!inside_droplet(z, p) || min_boundary_distance(z, p) < 0.1)
    throw std::domain_error(
        "cauchy_transform: z must lie inside the droplet, 0.1 away from the boundary");

  // |p_n(w)|^2 e^{-NV(w)} without materializing the whole sequence
  auto weight = [&](C w) {
    C top = 0.0;
    double log_scale = 0.0;
    scaled_recurrence(w, p.n, p, [&](int j, C u, double ls) {
      if (j == p.n) {
        top = u;
        log_scale = ls;
      }
    });
    if (top == 0.0) return 0.0;
    return std::exp(2.0 * (std::log(std::abs(top)) + log_scale) - p.N * potential(w, p));
  };

  int radial = cfg.radial, angular = cfg.angular;
  C prev = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  C cur = 0.0;
  double norm = 0.0;
  for (int pass = 0; pass <= cfg.max_refine; ++pass) {
    const auto nodes = elliptic_polar_rule(p, PlanarRegion::plane, radial, angular,
                                           cfg.omega_cut);
    std::vector<double> re(nodes.size()), im(nodes.size()), nrm(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const double wgt = weight(nodes[i].z) * nodes[i].w;
        nrm[i] = wgt;
        if (std::abs(nodes[i].z - z) < r0) {
          re[i] = im[i] = 0.0;
        } else {
          const C v = wgt / (z - nodes[i].z);
          re[i] = v.real();
          im[i] = v.imag();
        }
      }
    });
    cur = {pairwise_sum(re), pairwise_sum(im)};
    norm = pairwise_sum(nrm);
    if (pass > 0) {
      residual = std::abs(cur - prev);
      if (residual < std::max(cfg.tolerance * std::abs(cur), 1e-11)) break;
    }
    prev = cur;
    radial *= 2;
    angular *= 2;
  }

  CauchyResult res;
  res.value = cur;
  res.norm_check = norm;
  res.error_bound = weight(z) * 2.0 * std::numbers::pi * r0 +
                    (std::isfinite(residual) ? residual : 0.0);
  return res;
}

double expected_outside_exact(const EnsembleParams& p, const QuadratureConfig& cfg,
                              double* mass_residual) {
  if (p.n > 512)
    throw std::invalid_argument("expected_outside_exact: n capped at 512 for cost control");
  const double outside = p.N * integrate_density(p, PlanarRegion::exterior, cfg);
  const double inside = p.N * integrate_density(p, PlanarRegion::interior, cfg);
  const double residual = (p.n - inside) - outside;
  if (mass_residual) *mass_residual = residual;
  if (std::abs(residual) > 1e-4 * std::max(1.0, outside))
    throw std::runtime_error("expected_outside_exact: mass conservation check failed");
  return outside;
}

}  // namespace ellgas
