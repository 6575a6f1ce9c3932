#pragma once

#include "ellgas/geometry.hpp"
#include "ellgas/params.hpp"

namespace ellgas {

/// Edge profile coefficients in the scaled normal coordinate xi:
/// the density at z0 + xi n / sqrt(N) expands as
///   rho0(xi) + rho1(xi)/sqrt(N) + rho2(xi)/N + O(N^{-3/2+}).

/// Leading profile, erfc(sqrt(2) xi) / (2 pi).  Flat-boundary universal.
double edge_profile_order0(double xi);

/// First correction profile, kappa (xi^2 - 1) e^{-2 xi^2} / (3 sqrt(2 pi^3)).
double edge_profile_order1(double xi, const BoundaryFrame& frame);

/// Second correction profile, odd in xi, with curvature-derivative terms.
double edge_profile_order2(double xi, const BoundaryFrame& frame);

/// Two-variable 1/N correction kernel Psi(xi, eta); reduces to the order-2
/// profile factor at eta = 0.
double edge_psi(double xi, double eta, const BoundaryFrame& frame);

/// Full two-variable edge expansion of the density at
/// z0 + (xi + i eta) n / sqrt(N), through order 1/N.  Meant for the window
/// |xi|, |eta| <= ~4; outside it the expansion saturates to its bulk and
/// vacuum limits anyway.
double edge_density(double xi, double eta, const BoundaryFrame& frame,
                    const EnsembleParams& p);

/// The edge expansion bundled at one boundary point: the three coefficient
/// profiles and the two-variable correction kernel of the same frame.
struct EdgeExpansion {
  BoundaryFrame frame;
  EnsembleParams params;

  double order0(double xi) const { return edge_profile_order0(xi); }
  double order1(double xi) const { return edge_profile_order1(xi, frame); }
  double order2(double xi) const { return edge_profile_order2(xi, frame); }
  double psi(double xi, double eta) const { return edge_psi(xi, eta, frame); }
  double density(double xi, double eta = 0.0) const {
    return edge_density(xi, eta, frame, params);
  }
};

inline EdgeExpansion edge_expansion(double theta, const EnsembleParams& p) {
  return {boundary_frame(theta, p), p};
}

/// Degree-4 Taylor polynomial of the effective potential at the boundary in
/// flat offsets (X normal, Y tangential).
double omega_edge_expansion(double X, double Y, const BoundaryFrame& frame);

/// Expanded e^{-N Omega}: the Gaussian factor e^{-2 N X^2} times the
/// polynomial correction bracket.
double exp_omega_expansion(double X, double Y, const BoundaryFrame& frame, double N);

/// Closed-form expansion of the normal derivative of the density at
/// z0 + X n (valid on the tangent line Y = 0).
double dn_rho_expansion(double X, const BoundaryFrame& frame, const EnsembleParams& p);

/// Closed-form expansion of the tangential derivative of the density at
/// z0 + (X + iY) n.
double dt_rho_expansion(double X, double Y, const BoundaryFrame& frame,
                        const EnsembleParams& p);

/// Expected number of particles outside the droplet: sqrt(n) leading term
/// with complete-elliptic-integral coefficients and the 1/n correction.
struct OutsideCount {
  double leading = 0.0;
  double correction = 0.0;  ///< the 1/n term (signed)
  double k_modulus = 0.0;   ///< k = 2 sqrt(t) / (1 + t)
  double perimeter = 0.0;   ///< boundary length by quadrature
  double total() const { return leading + correction; }
};

OutsideCount n_out_asymptotic(const EnsembleParams& p);

/// Expected number of escaped particles per unit boundary arclength at
/// gamma(theta); constant in theta at leading order.
double arclength_escape_density(double theta, const EnsembleParams& p);

/// Density at z0 + eta t / sqrt(N) computed through the curvilinear route:
/// the tangential displacement is re-expressed in (normal offset, arclength)
/// coordinates and the one-variable edge expansion is applied at the shifted
/// boundary point.  Agrees with edge_density(0, eta) to o(1/N).
double tangential_consistency(double eta, const BoundaryFrame& frame,
                              const EnsembleParams& p);

}  // namespace ellgas
