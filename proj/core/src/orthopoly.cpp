#include "ellgas/orthopoly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ellgas/special_functions.hpp"

namespace ellgas {

namespace {

using C = std::complex<double>;

void reject_far_from_wkb_domain(C z, const EnsembleParams& p) {
  const double F0 = foci(p);
  const double margin = 0.1 * (F0 > 0.0 ? F0 : capacity(p));
  const double dx = std::max(std::abs(z.real()) - F0, 0.0);
  if (std::hypot(dx, z.imag()) < margin)
    throw std::domain_error("wkb: z too close to the focal segment");
}

// h_r by its closed form; analytic everywhere off the focal segment.
C h_r_value(C z, int r, const EnsembleParams& p) {
  const double F0sq = 4.0 * p.t * p.T / (1.0 - p.t * p.t);
  const C w = focal_sqrt(z, foci(p));
  const C z2 = z * z;
  const double rr = r;
  return (F0sq * (1.0 + 2.0 * rr) / (8.0 * (z2 - F0sq)) -
          (1.0 + 6.0 * rr + 6.0 * rr * rr) / (24.0 * w) -
          5.0 * F0sq / (48.0 * (z2 - F0sq) * w)) /
         p.T;
}

}  // namespace

double log_leading_coeff(int j, const EnsembleParams& p) {
  if (j < 0) throw std::domain_error("log_leading_coeff: j must be >= 0");
  // gamma_j = N^{1/4} sqrt(N(1-t^2))^{j+1/2} / sqrt(pi j!)
  return 0.25 * std::log(p.N) + 0.5 * (j + 0.5) * std::log(p.N * (1.0 - p.t * p.t)) -
         0.5 * std::log(std::numbers::pi) - 0.5 * log_factorial(j);
}

PolySequence eval_polys(std::complex<double> z, int jmax, const EnsembleParams& p) {
  if (jmax < 0) throw std::invalid_argument("eval_polys: jmax must be >= 0");
  if (jmax > p.n + 8) throw std::invalid_argument("eval_polys: jmax capped at n + 8");
  PolySequence seq;
  seq.z = z;
  seq.params = p;
  seq.values.resize(static_cast<std::size_t>(jmax) + 1);
  scaled_recurrence(z, jmax, p, [&](int j, std::complex<double> u, double log_scale) {
    if (u == 0.0) {
      seq.values[static_cast<std::size_t>(j)] = ScaledComplex::zero();
    } else {
      seq.values[static_cast<std::size_t>(j)] =
          ScaledComplex::from_parts(std::log(std::abs(u)) + log_scale, std::arg(u));
    }
  });
  return seq;
}

double hermite_ode_residual(std::complex<double> z, int k, const EnsembleParams& p) {
  if (k < 0 || k > p.n) throw std::invalid_argument("hermite_ode_residual: need 0 <= k <= n");
  if (k == 0) return 0.0;

  // Propagate (p_j, p_j', p_j'') jointly through the recurrence, with one
  // common rescaling so ratios stay exact.
  const double omt2 = 1.0 - p.t * p.t;
  C pm = 0.0, dpm = 0.0, d2pm = 0.0;
  C pc = std::sqrt(p.N) * std::pow(omt2, 0.25) / std::sqrt(std::numbers::pi);
  C dpc = 0.0, d2pc = 0.0;
  double r_cur = 0.0;
  for (int j = 0; j < k; ++j) {
    const double r_next = std::sqrt((j + 1) / (p.N * omt2));
    const C pn = (z * pc - p.t * r_cur * pm) / r_next;
    const C dpn = (pc + z * dpc - p.t * r_cur * dpm) / r_next;
    const C d2pn = (2.0 * dpc + z * d2pc - p.t * r_cur * d2pm) / r_next;
    pm = pc; dpm = dpc; d2pm = d2pc;
    pc = pn; dpc = dpn; d2pc = d2pn;
    r_cur = r_next;
    const double m = std::abs(pc);
    if (m > 1e100) {
      pm /= m; dpm /= m; d2pm /= m;
      pc /= m; dpc /= m; d2pc /= m;
    }
  }
  const double F0sq = 4.0 * p.t * p.T / omt2;
  const C a = F0sq / (2.0 * p.N * p.T) * d2pc;
  const C b = -2.0 * z * dpc;
  const C c = 2.0 * static_cast<double>(k) * pc;
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  if (scale == 0.0) return 0.0;
  return std::abs(a + b + c) / scale;
}

WkbExpansion wkb(std::complex<double> z, int r, const EnsembleParams& p) {
  reject_far_from_wkb_domain(z, p);
  const double F0 = foci(p);
  const double F0sq = F0 * F0;
  const double ell = robin_constant(p);
  const C w = focal_sqrt(z, F0);
  const C z2 = z * z;

  WkbExpansion e;
  e.r = r;
  e.g_val = std::log(z) + std::log(0.5 * (1.0 + w)) + 1.0 / (1.0 + w) - 0.5;
  e.h_r_val = h_r_value(z, r, p);

  // Same expansion organized as exp(N T Y_{-1} + Y_0 + Y_1 / N):
  // Y_{-1} = g - ell/(2T), e^{Y_0} = sqrt(psi') psi^r, Y_1 = h_r.
  // Y_{-1} uses a cancellation-free rewrite of
  // z^2 (1-w)^2 / (2 F0^2) - log(2 z (1-w) / F0^2) - ell/(2T).
  const C opw = 1.0 + w;
  const double rr = r;
  e.y_minus1 = F0sq / (2.0 * z2 * opw * opw) + std::log(0.5 * z * opw) - ell / (2.0 * p.T);
  e.y0 = 0.5 * std::log(0.5 + 0.5 / w) + rr * std::log(0.5 * z * opw) -
         (rr + 0.5) * std::log(capacity(p));
  if (F0 == 0.0) {
    e.y1 = C(-(1.0 + 6.0 * rr + 6.0 * rr * rr) / (24.0 * p.T), 0.0);
  } else {
    e.y1 = (3.0 * F0sq * (2.0 * w - 1.0 + 4.0 * rr * (1.0 + w + rr)) -
            2.0 * z2 * (1.0 + 6.0 * rr * (rr + 1.0))) /
           (48.0 * p.T * w * (z2 - F0sq));
  }
  return e;
}

ScaledComplex wkb_eval_p(std::complex<double> z, int r, const EnsembleParams& p) {
  const WkbExpansion e = wkb(z, r, p);
  const std::complex<double> psi = conformal_to_disk(z, p);
  const std::complex<double> dpsi = conformal_to_disk_deriv(z, p);
  const double ell = robin_constant(p);
  const std::complex<double> expo =
      static_cast<double>(p.n) * e.g_val + e.h_r_val / p.N;
  const double log_abs = 0.25 * std::log(p.N / (2.0 * std::pow(std::numbers::pi, 3))) +
                         r * std::log(std::abs(psi)) + 0.5 * std::log(std::abs(dpsi)) +
                         expo.real() - p.N * ell / 2.0;
  const double arg = r * std::arg(psi) + 0.5 * std::arg(dpsi) + expo.imag();
  return ScaledComplex::from_parts(log_abs, arg);
}

std::pair<double, double> h_boundary_relations(const BoundaryFrame& frame,
                                               const EnsembleParams& p) {
  const C h0 = h_r_value(frame.z0, 0, p);
  const C hm1 = h_r_value(frame.z0, -1, p);
  const double re_sum = (h0 + hm1).real();
  const double im_diff = (h0 - hm1).imag() / frame.abs_dpsi;

  const double k = frame.kappa;
  const double re_expect = -k * k / 12.0 + frame.d2kappa_ds2 / (24.0 * k);
  const double im_expect = frame.dkappa_ds / (6.0 * k);
  if (std::abs(re_sum - re_expect) > 1e-10 * std::max(1.0, std::abs(re_expect)) ||
      std::abs(im_diff - im_expect) > 1e-10 * std::max(1.0, std::abs(im_expect)))
    throw std::runtime_error("h_boundary_relations: curvature identity violated");
  return {re_sum, im_diff};
}

}  // namespace ellgas
