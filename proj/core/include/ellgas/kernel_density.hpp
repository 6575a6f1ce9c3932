#pragma once

#include <complex>
#include <vector>

#include "ellgas/params.hpp"
#include "ellgas/quadrature.hpp"
#include "ellgas/scaled_complex.hpp"

namespace ellgas {

/// One-point density rho_n(z) = (1/N) sum_{j<n} |p_j(z)|^2 e^{-NV(z)},
/// assembled in log space; strictly positive and finite for finite z.
double density(std::complex<double> z, const EnsembleParams& p);

/// log rho_n(z); useful where the density is exponentially small.
double log_density(std::complex<double> z, const EnsembleParams& p);

/// Correlation kernel value, kept in scaled form: the diagonal grows like N
/// but off-diagonal values decay like e^{-N |z-w|^2 / 2}.
struct KernelValue {
  ScaledComplex value;
  std::complex<double> z;
  std::complex<double> w;
};

/// K_n(z, w) = sum_{j<n} p_j(z) conj(p_j(w)) e^{-N(V(z)+V(w))/2}.
KernelValue kernel(std::complex<double> z, std::complex<double> w,
                   const EnsembleParams& p);

/// Pre-kernel: the kernel stripped of its Gaussian and non-analytic phase
/// factors, analytic in z and anti-analytic in w.
KernelValue prekernel(std::complex<double> z, std::complex<double> w,
                      const EnsembleParams& p);

/// d rho_n / dz through the Christoffel-Darboux collapse:
///   (t p_n conj(p_{n-1}) - p_{n-1} conj(p_n)) sqrt(T) e^{-NV} / sqrt(1-t^2).
std::complex<double> density_gradient_cd(std::complex<double> z,
                                         const EnsembleParams& p);

/// Controls for the planar quadratures: base rule sizes, refinement policy.
struct QuadratureConfig {
  int radial = 96;
  int angular = 256;
  double omega_cut = 40.0;  ///< truncate where N * Omega exceeds this
  int max_refine = 4;       ///< rule-doubling passes
  double tolerance = 1e-8;  ///< stop when successive estimates differ less
};

/// Density grid entry and a profile over a set of points.
struct DensityProfile {
  std::vector<std::pair<std::complex<double>, double>> points;
  EnsembleParams params;
  double normalization = 0.0;  ///< integral of rho over the plane (should be T)
};

DensityProfile density_profile(const std::vector<std::complex<double>>& pts,
                               const EnsembleParams& p,
                               const QuadratureConfig& cfg = {});

/// Integral of rho_n over a region (times 1, not N).
double integrate_density(const EnsembleParams& p, PlanarRegion region,
                         const QuadratureConfig& cfg = {});

/// Gram matrix of the first jmax+1 polynomials against e^{-NV} dA; row-major
/// (jmax+1) x (jmax+1), entry [j][k] = integral p_j conj(p_k) e^{-NV}.
std::vector<std::complex<double>> orthonormality_matrix(const EnsembleParams& p,
                                                        int jmax,
                                                        const QuadratureConfig& cfg = {});

struct CauchyResult {
  std::complex<double> value;
  double error_bound = 0.0;  ///< excised-disk bound plus refinement residual
  double norm_check = 0.0;   ///< same rule applied to |p_n|^2 e^{-NV}; should be 1
};

/// Cauchy transform of |p_n|^2 e^{-NV} at an interior point,
/// integral of |p_n(w)|^2 e^{-NV(w)} / (z - w) dA(w).  A disk of radius r0
/// around z is excised; its contribution is absorbed into error_bound.
/// Throws std::domain_error unless z is inside the droplet with
/// dist(z, boundary) >= 0.1.
CauchyResult cauchy_transform(std::complex<double> z, const EnsembleParams& p,
                              const QuadratureConfig& cfg = {}, double r0 = 1e-3);

/// Expected number of particles outside the droplet, N * integral of rho
/// over the exterior, with a mass-conservation cross-check against
/// n - N * (interior integral).  Throws std::invalid_argument for n > 512.
/// mass_residual, when given, receives the cross-check discrepancy.
double expected_outside_exact(const EnsembleParams& p,
                              const QuadratureConfig& cfg = {},
                              double* mass_residual = nullptr);

}  // namespace ellgas
