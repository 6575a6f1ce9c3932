#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ellgas/params.hpp"

namespace ellgas {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached rule of size m (Newton on the Legendre recurrence).
const GaussLegendre& gauss_legendre(int m);

/// Deterministic pairwise tree sum; the reduction order depends only on the
/// length, so results are bit-identical no matter how the values were
/// produced.
double pairwise_sum(std::span<const double> v);

/// One node of a planar rule: location and area weight.
struct PlanarNode {
  std::complex<double> z;
  double w;
};

enum class PlanarRegion { interior, exterior, plane };

/// Tensor rule in elliptic-polar coordinates z = phi(rho e^{i theta}):
/// Gauss-Legendre in rho, uniform midpoints in theta, with the weight
/// |phi'|^2 rho carrying the area element.  The radial range is
/// [sqrt(t), 1] for the interior, [1, R] for the exterior and their union
/// for the whole plane, where R is chosen so that N * Omega > omega_cut
/// beyond it.  Radial panels are split at the droplet boundary.
std::vector<PlanarNode> elliptic_polar_rule(const EnsembleParams& p,
                                            PlanarRegion region, int radial,
                                            int angular, double omega_cut = 40.0);

/// Radius R with N * Omega(phi(R)) >= omega_cut on its minimizing direction.
double truncation_radius(const EnsembleParams& p, double omega_cut = 40.0);

}  // namespace ellgas
