#pragma once

// Independent numeric routes used to pin expected values in the tests.
// Everything here deliberately avoids the library's own evaluation paths:
// the effective potential comes from a literal path integral of the Schwarz
// function, polynomials from integer Hermite coefficients, projections from
// a dense scan, sums from double-double accumulation.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ellgas/params.hpp"

namespace oracles {

using C = std::complex<double>;

/// Effective potential as the anchored path integral
///   |z|^2 - |z0|^2 - 2 Re int_{z0}^{z} S(zeta) dzeta,   z0 = phi(1),
/// along a polyline that stays off the focal segment (above for Im z >= 0,
/// below otherwise; both sides averaged on the segment itself).
double omega_path_integral(C z, const ellgas::EnsembleParams& p);

/// Integer coefficient row of the Hermite polynomial H_j (degree j <= 20),
/// index k holding the coefficient of x^k.
std::vector<long long> hermite_coefficients(int j);

/// H_j(x) from the exact coefficients (Horner).
C hermite_eval(int j, C x);

/// Orthonormal polynomial through the scaled-Hermite closed form (valid for
/// t > 0 and modest j, no overflow protection).
C orthonormal_direct(int j, C z, const ellgas::EnsembleParams& p);

/// log(sum of e^{t_i}) by max-shift + double-double accumulation.
double logsumexp_reference(std::span<const double> terms);

/// log(j!) by plain cumulative long-double summation.
double log_factorial_reference(int j);

/// Curvature data assembled from 4th-order finite-difference stencils of the
/// boundary parametrization alone.
struct FdCurvature {
  double kappa;
  double dkappa_ds;
  double d2kappa_ds2;
};
FdCurvature fd_curvature(double theta, const ellgas::EnsembleParams& p, double h = 1e-2);

/// Nearest boundary angle by dense scan plus parabolic refinement.
std::pair<double, double> scan_project(C z, const ellgas::EnsembleParams& p,
                                       int samples = 200000);

/// d/dz of the pre-kernel sum by propagating a first-order perturbation
/// through the recurrence (never using the collapsed two-term identity).
C prekernel_dz_direct(C z, C w, const ellgas::EnsembleParams& p);

}  // namespace oracles
