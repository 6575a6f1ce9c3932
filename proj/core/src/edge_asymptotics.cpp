#include "ellgas/edge_asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "ellgas/special_functions.hpp"

namespace ellgas {

namespace {

const double sqrt_2pi3 = std::sqrt(2.0 * std::pow(std::numbers::pi, 3));
const double two_pi_32 = std::pow(2.0 * std::numbers::pi, 1.5);

}  // namespace

double edge_profile_order0(double xi) {
  return ellgas::erfc(std::sqrt(2.0) * xi) / (2.0 * std::numbers::pi);
}

double edge_profile_order1(double xi, const BoundaryFrame& frame) {
  return frame.kappa / (3.0 * sqrt_2pi3) * (xi * xi - 1.0) * std::exp(-2.0 * xi * xi);
}

double edge_psi(double xi, double eta, const BoundaryFrame& frame) {
  const double k = frame.kappa, k1 = frame.dkappa_ds, k2 = frame.d2kappa_ds2;
  const double xi2 = xi * xi, xi3 = xi2 * xi, xi5 = xi3 * xi2;
  const double eta2 = eta * eta;
  return k * k *
             (2.0 * xi5 - 8.0 * xi3 + 3.0 * xi + 36.0 * xi * eta2 -
              12.0 * xi3 * eta2 + 18.0 * xi * eta2 * eta2) /
             18.0 +
         (k1 * k1 / (9.0 * k * k) - k2 / (12.0 * k)) * xi +
         k1 / 3.0 * (xi2 * eta - eta2 * eta - eta);
}

double edge_profile_order2(double xi, const BoundaryFrame& frame) {
  return std::exp(-2.0 * xi * xi) / sqrt_2pi3 * edge_psi(xi, 0.0, frame);
}

double edge_density(double xi, double eta, const BoundaryFrame& frame,
                    const EnsembleParams& p) {
  const double gauss = std::exp(-2.0 * xi * xi) / sqrt_2pi3;
  return edge_profile_order0(xi) +
         gauss * (frame.kappa / std::sqrt(p.N) * ((xi * xi - 1.0) / 3.0 - eta * eta) +
                  edge_psi(xi, eta, frame) / p.N);
}

double omega_edge_expansion(double X, double Y, const BoundaryFrame& frame) {
  const double k = frame.kappa, k1 = frame.dkappa_ds;
  const double X2 = X * X, Y2 = Y * Y;
  return 2.0 * X2 - 2.0 * k / 3.0 * (X2 * X - 3.0 * X * Y2) +
         0.5 * k * k * (X2 * X2 - 6.0 * X2 * Y2 + Y2 * Y2) -
         2.0 * k1 / 3.0 * (X2 * X * Y - X * Y2 * Y);
}

double exp_omega_expansion(double X, double Y, const BoundaryFrame& frame, double N) {
  const double k = frame.kappa, k1 = frame.dkappa_ds;
  const double X2 = X * X, Y2 = Y * Y;
  const double cubic = X2 * X - 3.0 * X * Y2;
  const double bracket = 1.0 + 2.0 * k * N / 3.0 * cubic -
                         0.5 * k * k * N * (X2 * X2 - 6.0 * X2 * Y2 + Y2 * Y2) +
                         2.0 * k1 * N / 3.0 * (X2 * X * Y - X * Y2 * Y) +
                         2.0 * k * k * N * N / 9.0 * cubic * cubic;
  return std::exp(-2.0 * N * X2) * bracket;
}

double dn_rho_expansion(double X, const BoundaryFrame& frame, const EnsembleParams& p) {
  const double k = frame.kappa, k1 = frame.dkappa_ds, k2 = frame.d2kappa_ds2;
  const double N = p.N;
  const double X2 = X * X, X3 = X2 * X, X4 = X2 * X2, X6 = X3 * X3;
  const double bracket =
      -2.0 - k * (4.0 / 3.0 * N * X3 - 2.0 * X) -
      k * k * (4.0 / 9.0 * N * N * X6 - 7.0 / 3.0 * N * X4 + 2.0 * X2) +
      (k2 / (3.0 * k) - 4.0 * k1 * k1 / (9.0 * k * k)) * X2 +
      (k * k / 6.0 + k1 * k1 / (9.0 * k * k) - k2 / (12.0 * k)) / N;
  return std::sqrt(N / (2.0 * std::pow(std::numbers::pi, 3))) * std::exp(-2.0 * N * X2) *
         bracket;
}

double dt_rho_expansion(double X, double Y, const BoundaryFrame& frame,
                        const EnsembleParams& p) {
  const double k = frame.kappa, k1 = frame.dkappa_ds;
  const double N = p.N;
  const double X2 = X * X, Y2 = Y * Y;
  const double bracket = -2.0 * k * Y +
                         k * k * (4.0 * N * X * Y2 * Y - 4.0 / 3.0 * N * X2 * X * Y +
                                  4.0 * X * Y) +
                         k1 * (X2 / 3.0 - Y2) - k1 / (3.0 * frame.abs_dpsi * N);
  return std::sqrt(N / (2.0 * std::pow(std::numbers::pi, 3))) * std::exp(-2.0 * N * X2) *
         bracket;
}

OutsideCount n_out_asymptotic(const EnsembleParams& p) {
  OutsideCount out;
  const double t = p.t;
  out.k_modulus = 2.0 * std::sqrt(t) / (1.0 + t);
  const double E = ellip_E(out.k_modulus);
  const double K = ellip_K(out.k_modulus);
  const double sqrt_n = std::sqrt(static_cast<double>(p.n));
  out.leading = sqrt_n / two_pi_32 * 4.0 * std::sqrt((1.0 + t) / (1.0 - t)) * E;
  out.correction = -sqrt_n / (p.n * two_pi_32) *
                   ((1.0 + t * t) * E + 2.0 * (1.0 - t) * (1.0 - t) * K) /
                   (9.0 * std::pow(1.0 - t, 1.5) * std::sqrt(1.0 + t));
  out.perimeter = perimeter(p);
  return out;
}

double arclength_escape_density(double theta, const EnsembleParams& p) {
  const BoundaryFrame f = boundary_frame(theta, p);
  const double k = f.kappa, k1 = f.dkappa_ds, k2 = f.d2kappa_ds2;
  const double correction =
      k * k / 12.0 - k1 * k1 / (18.0 * k * k) + k2 / (24.0 * k);
  return std::sqrt(p.N) / two_pi_32 * (1.0 - correction / p.N);
}

double tangential_consistency(double eta, const BoundaryFrame& frame,
                              const EnsembleParams& p) {
  const double N = p.N;
  const double sqrtN = std::sqrt(N);
  // Curvilinear coordinates of z0 + eta t / sqrt(N): normal offset x and
  // arclength offset y along the boundary.
  const double x = frame.kappa * eta * eta / (2.0 * N) +
                   frame.dkappa_ds * eta * eta * eta / (6.0 * N * sqrtN);
  const double y = eta / sqrtN - frame.kappa * frame.kappa * eta * eta * eta / (3.0 * N * sqrtN);

  // Boundary point at arclength s0 + y, via Newton on the arclength function.
  double theta_hat = frame.theta + y / (capacity(p) * std::sqrt(1.0 + p.t * p.t -
                                                                2.0 * p.t * std::cos(2.0 * frame.theta)));
  for (int it = 0; it < 50; ++it) {
    const double s_err = arclength(frame.theta, theta_hat, p) - y;
    const double speed = capacity(p) * std::sqrt(1.0 + p.t * p.t - 2.0 * p.t * std::cos(2.0 * theta_hat));
    theta_hat -= s_err / speed;
    if (std::abs(s_err) < 1e-14 * std::max(1.0, std::abs(y))) break;
  }
  const BoundaryFrame hat = boundary_frame(theta_hat, p);
  const double xi_hat = sqrtN * x;
  return edge_profile_order0(xi_hat) + edge_profile_order1(xi_hat, hat) / sqrtN +
         edge_profile_order2(xi_hat, hat) / N;
}

}  // namespace ellgas
