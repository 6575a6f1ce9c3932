#pragma once

#include <complex>

#include "ellgas/params.hpp"

namespace ellgas {

using Complex = std::complex<double>;

/// Focal half-distance F0 = sqrt(4 t T / (1 - t^2)); the droplet boundary is
/// the ellipse with foci at +-F0.  Zero in the rotation invariant case t = 0.
double foci(const EnsembleParams& p);

/// Logarithmic capacity of the droplet, sqrt(T / (1 - t^2)).
double capacity(const EnsembleParams& p);

/// Robin constant, T (2 log cap - 1); the additive constant that makes the
/// effective potential vanish on the droplet boundary.
double robin_constant(const EnsembleParams& p);

/// Confining potential V(z) = |z|^2 - t Re(z^2).
double potential(Complex z, const EnsembleParams& p);

/// Exterior conformal map from {|u| > sqrt(t)} onto the complement of the
/// focal segment, phi(u) = cap (u + t/u); maps the unit circle to the
/// droplet boundary.
Complex conformal_from_disk(Complex u, const EnsembleParams& p);

/// Derivative phi'(u) = cap (1 - t/u^2).
Complex conformal_from_disk_deriv(Complex u, const EnsembleParams& p);

/// sqrt(1 - F0^2/z^2) realized as sqrt(z-F0) sqrt(z+F0) / z with principal
/// square roots: analytic off the focal segment [-F0, F0] and -> 1 at
/// infinity.  The side of the segment is controlled by the sign of Im z.
Complex focal_sqrt(Complex z, double F0);

/// Inverse conformal map psi: complement of [-F0, F0] -> {|u| > sqrt(t)},
/// normalized so psi(z) ~ z / cap at infinity.  Throws std::domain_error for
/// z within 1e-12 of the focal segment (branch ambiguity).
Complex conformal_to_disk(Complex z, const EnsembleParams& p);

/// psi'(z).
Complex conformal_to_disk_deriv(Complex z, const EnsembleParams& p);

/// Schwarz function of the droplet boundary: analytic off the focal segment
/// with S(z) = conj(z) on the boundary.  Throws for z on the focal segment.
Complex schwarz(Complex z, const EnsembleParams& p);

/// First three derivatives of the Schwarz function, evaluated through the
/// u-plane pullback (well conditioned near the boundary).
Complex schwarz_deriv(Complex z, const EnsembleParams& p, int order);

/// Effective potential Omega = V - 2 T Re g + ell.  Defined and continuous
/// on the whole plane: on the focal segment the two one-sided branch limits
/// are averaged (their real parts agree analytically).  Nonnegative, zero
/// exactly on the droplet boundary, grows like |z|^2 at infinity.
double effective_potential(Complex z, const EnsembleParams& p);

/// Effective potential through the u-plane closed form,
/// Omega(phi(u)) for |u| >= sqrt(t); used mostly internally for truncation
/// radii, cheap and free of branch issues.
double effective_potential_disk(Complex u, const EnsembleParams& p);

/// True iff z lies in the closed droplet (1-t)/(1+t) x^2 + (1+t)/(1-t) y^2 <= T.
bool inside_droplet(Complex z, const EnsembleParams& p);

/// Boundary point gamma(theta) = phi(e^{i theta}).
Complex boundary_point(double theta, const EnsembleParams& p);

/// A boundary point with its outward normal, tangent, curvature and the
/// first two arclength derivatives of the curvature, all from closed forms
/// in theta.
struct BoundaryFrame {
  double theta = 0.0;
  Complex z0;            ///< gamma(theta)
  Complex normal;        ///< outward unit normal
  Complex tangent;       ///< i * normal (counter-clockwise)
  double kappa = 0.0;    ///< curvature, > 0
  double dkappa_ds = 0.0;
  double d2kappa_ds2 = 0.0;
  double abs_dpsi = 0.0;  ///< |psi'(z0)|
};

BoundaryFrame boundary_frame(double theta, const EnsembleParams& p);

/// Flat offsets (X normal, Y tangential) and the matching curvilinear
/// (normal, arclength) coordinates of the same point.
struct PlanarCoords {
  double X = 0.0;
  double Y = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Degree-4 series for the curvilinear coordinates (x, y) of the point
/// z0 + (X + iY) n.  Throws std::domain_error when |X|+|Y| exceeds the
/// locality radius (default 0.2/kappa, keeping the Jacobian 1 + kappa x
/// safely positive).
PlanarCoords coordinate_change(double X, double Y, const BoundaryFrame& frame,
                               double locality = 0.2);

/// Jacobian 1 + kappa x of the (normal offset, arclength) coordinates.
double jacobian(double x, const BoundaryFrame& frame);

/// Arclength along the boundary from theta0 to theta1 (signed,
/// counter-clockwise positive); s(theta=0) = 0 is the convention used
/// throughout.
double arclength(double theta0, double theta1, const EnsembleParams& p);

/// Circumference of the droplet boundary, by quadrature of |phi'|.
double perimeter(const EnsembleParams& p);

}  // namespace ellgas
