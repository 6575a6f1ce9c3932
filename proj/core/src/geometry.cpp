#include "ellgas/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ellgas/quadrature.hpp"

namespace ellgas {

namespace {

// Distance from z to the focal segment [-F0, F0].
double focal_segment_distance(Complex z, double F0) {
  const double dx = std::max(std::abs(z.real()) - F0, 0.0);
  return std::hypot(dx, z.imag());
}

void reject_near_segment(Complex z, const EnsembleParams& p, const char* who) {
  const double F0 = foci(p);
  const double scale = std::max(F0, 1.0);
  if (focal_segment_distance(z, F0) < 1e-12 * scale)
    throw std::domain_error(std::string(who) +
                            ": z within 1e-12 of the focal segment, branch ambiguous");
}

// Re g(z) for the exterior-derived potential g; the log|z| singularity at the
// origin cancels against log|1 + w|, so this stays stable near the segment.
double re_g(Complex z, Complex w) {
  return std::log(std::abs(z)) + std::log(0.5 * std::abs(1.0 + w)) +
         (1.0 / (1.0 + w)).real() - 0.5;
}

}  // namespace

double foci(const EnsembleParams& p) {
  return std::sqrt(4.0 * p.t * p.T / (1.0 - p.t * p.t));
}

double capacity(const EnsembleParams& p) { return std::sqrt(p.T / (1.0 - p.t * p.t)); }

double robin_constant(const EnsembleParams& p) {
  return p.T * (2.0 * std::log(capacity(p)) - 1.0);
}

double potential(Complex z, const EnsembleParams& p) {
  return std::norm(z) - p.t * (z * z).real();
}

Complex conformal_from_disk(Complex u, const EnsembleParams& p) {
  return capacity(p) * (u + p.t / u);
}

Complex conformal_from_disk_deriv(Complex u, const EnsembleParams& p) {
  return capacity(p) * (1.0 - p.t / (u * u));
}

Complex focal_sqrt(Complex z, double F0) {
  if (F0 == 0.0) return 1.0;
  return std::sqrt(z - F0) * std::sqrt(z + F0) / z;
}

Complex conformal_to_disk(Complex z, const EnsembleParams& p) {
  reject_near_segment(z, p, "conformal_to_disk");
  const Complex w = focal_sqrt(z, foci(p));
  return z * (1.0 + w) / (2.0 * capacity(p));
}

Complex conformal_to_disk_deriv(Complex z, const EnsembleParams& p) {
  reject_near_segment(z, p, "conformal_to_disk_deriv");
  const double F0 = foci(p);
  const Complex w = focal_sqrt(z, F0);
  return (1.0 + w + F0 * F0 / (z * z * w)) / (2.0 * capacity(p));
}

Complex schwarz(Complex z, const EnsembleParams& p) {
  reject_near_segment(z, p, "schwarz");
  // t z + (2Tz/F0^2)(1 - w) rewritten cancellation-free; the same expression
  // covers t = 0, where it reduces to T/z.
  const Complex w = focal_sqrt(z, foci(p));
  return p.t * z + 2.0 * p.T / (z * (1.0 + w));
}

Complex schwarz_deriv(Complex z, const EnsembleParams& p, int order) {
  reject_near_segment(z, p, "schwarz_deriv");
  if (order < 1 || order > 3)
    throw std::invalid_argument("schwarz_deriv: order must be 1, 2 or 3");
  const Complex u = conformal_to_disk(z, p);
  const double cap = capacity(p);
  const double t = p.t;
  const Complex u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
  // S(phi(u)) = cap (t u + 1/u); derivatives chained through phi.
  const Complex s1 = cap * (t - 1.0 / u2);
  const Complex s2 = cap * 2.0 / u3;
  const Complex s3 = cap * -6.0 / u4;
  const Complex f1 = cap * (1.0 - t / u2);
  const Complex f2 = cap * 2.0 * t / u3;
  const Complex f3 = cap * -6.0 * t / u4;
  if (order == 1) return s1 / f1;
  const Complex num2 = s2 * f1 - s1 * f2;
  if (order == 2) return num2 / (f1 * f1 * f1);
  return ((s3 * f1 - s1 * f3) * f1 - 3.0 * f2 * num2) / (f1 * f1 * f1 * f1 * f1);
}

double effective_potential_disk(Complex u, const EnsembleParams& p) {
  const double R2 = std::norm(u);
  if (R2 == 0.0) return std::numeric_limits<double>::infinity();
  const double cos2t = (u * u).real() / R2;
  const double t = p.t, T = p.T;
  return T * (1.0 / R2 - 1.0) / (1.0 - t * t) *
             (t * t - R2 + (R2 - 1.0) * t * cos2t) -
         T * std::log(R2);
}

double effective_potential(Complex z, const EnsembleParams& p) {
  const double t = p.t, T = p.T;
  if (t == 0.0) {
    const double r = std::abs(z);
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    return r * r - 2.0 * T * std::log(r / std::sqrt(T)) - T;
  }
  const double F0 = foci(p);
  const double scale = std::max(F0, 1.0);
  if (std::abs(z) < 1e-12 * scale) return -T * std::log(t);  // value at the center
  const double ell = robin_constant(p);
  const double V = potential(z, p);
  if (focal_segment_distance(z, F0) < 1e-12 * scale) {
    // On the segment the two one-sided branch limits share their real part;
    // average them.
    const Complex zp(z.real(), std::abs(z.imag()) + 0.0);
    const Complex zm(z.real(), -(std::abs(z.imag()) + 0.0));
    const double gp = re_g(zp, focal_sqrt(zp, F0));
    const double gm = re_g(zm, focal_sqrt(zm, F0));
    return V - 2.0 * T * 0.5 * (gp + gm) + ell;
  }
  return V - 2.0 * T * re_g(z, focal_sqrt(z, F0)) + ell;
}

bool inside_droplet(Complex z, const EnsembleParams& p) {
  const double x = z.real(), y = z.imag();
  return (1.0 - p.t) / (1.0 + p.t) * x * x + (1.0 + p.t) / (1.0 - p.t) * y * y <= p.T;
}

Complex boundary_point(double theta, const EnsembleParams& p) {
  const Complex u = std::polar(1.0, theta);
  return capacity(p) * (u + p.t * std::conj(u));
}

BoundaryFrame boundary_frame(double theta, const EnsembleParams& p) {
  const double t = p.t, T = p.T;
  const double D = 1.0 + t * t - 2.0 * t * std::cos(2.0 * theta);
  const double omt2 = 1.0 - t * t;
  const Complex u = std::polar(1.0, theta);

  BoundaryFrame f;
  f.theta = theta;
  f.z0 = capacity(p) * (u + t * std::conj(u));
  f.normal = (u - t * std::conj(u)) / std::sqrt(D);
  f.tangent = Complex(0.0, 1.0) * f.normal;
  f.kappa = std::pow(omt2, 1.5) / (std::sqrt(T) * std::pow(D, 1.5));
  f.dkappa_ds = -6.0 * omt2 * omt2 * t * std::sin(2.0 * theta) / (T * std::pow(D, 3.0));
  f.d2kappa_ds2 = -12.0 * std::pow(omt2, 2.5) * t *
                  (2.0 * t * (std::cos(4.0 * theta) - 2.0) + (1.0 + t * t) * std::cos(2.0 * theta)) /
                  (std::pow(T, 1.5) * std::pow(D, 4.5));
  f.abs_dpsi = std::sqrt(omt2 / T) / std::sqrt(D);
  return f;
}

PlanarCoords coordinate_change(double X, double Y, const BoundaryFrame& frame,
                               double locality) {
  const double k = frame.kappa;
  if (std::abs(X) + std::abs(Y) > locality / k)
    throw std::domain_error("coordinate_change: offset exceeds the locality radius " +
                            std::to_string(locality / k));
  const double k1 = frame.dkappa_ds;
  const double k2 = frame.d2kappa_ds2;
  const double X2 = X * X, Y2 = Y * Y, Y3 = Y2 * Y, Y4 = Y2 * Y2;

  PlanarCoords c;
  c.X = X;
  c.Y = Y;
  c.x = X + 0.5 * k * Y2 + k1 / 6.0 * Y3 - 0.5 * k * k * X * Y2 +
        0.5 * k * k * k * X2 * Y2 - 0.5 * k * k1 * X * Y3 +
        (k2 / 24.0 - k * k * k / 8.0) * Y4;
  c.y = Y - k * X * Y + k * k * X2 * Y - 0.5 * k1 * X * Y2 - k * k / 3.0 * Y3 -
        k * k * k * X2 * X * Y + 1.5 * k * k1 * X2 * Y2 - 7.0 / 24.0 * k * k1 * Y4 +
        (k * k * k - k2 / 6.0) * X * Y3;
  return c;
}

double jacobian(double x, const BoundaryFrame& frame) { return 1.0 + frame.kappa * x; }

double arclength(double theta0, double theta1, const EnsembleParams& p) {
  const double cap = capacity(p);
  const double t = p.t;
  auto speed = [&](double th) {
    return cap * std::sqrt(1.0 + t * t - 2.0 * t * std::cos(2.0 * th));
  };
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(theta1 - theta0) / (std::numbers::pi / 8.0))));
  const GaussLegendre& gl = gauss_legendre(24);
  double s = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = theta0 + (theta1 - theta0) * k / panels;
    const double b = theta0 + (theta1 - theta0) * (k + 1) / panels;
    const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += hw * gl.w[i] * speed(mid + hw * gl.x[i]);
  }
  return s;
}

double perimeter(const EnsembleParams& p) { return arclength(0.0, 2.0 * std::numbers::pi, p); }

}  // namespace ellgas
