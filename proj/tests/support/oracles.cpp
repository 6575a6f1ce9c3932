#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ellgas/geometry.hpp"
#include "ellgas/orthopoly.hpp"
#include "ellgas/quadrature.hpp"

namespace oracles {

namespace {

// Schwarz function with the branch picked by the sign of Im z.
C schwarz_at(C z, const ellgas::EnsembleParams& p) {
  const C w = ellgas::focal_sqrt(z, ellgas::foci(p));
  return p.t * z + 2.0 * p.T / (z * (1.0 + w));
}

double leg_integral_re(C a, C b, const ellgas::EnsembleParams& p) {
  const auto& gl = ellgas::gauss_legendre(64);
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 0.25)));
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const C pa = a + (b - a) * (static_cast<double>(k) / panels);
    const C pb = a + (b - a) * (static_cast<double>(k + 1) / panels);
    const C mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    C sum = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i)
      sum += gl.w[i] * schwarz_at(mid + gl.x[i] * half, p);
    acc += (half * sum).real();
  }
  return acc;
}

double omega_one_side(C z, const ellgas::EnsembleParams& p, double side) {
  const C z0 = ellgas::conformal_from_disk(1.0, p);
  const double H = side * (std::abs(ellgas::foci(p)) + 1.0);
  // z0 -> z0 + iH -> Re z + iH -> z, all legs off the segment
  const C c1(z0.real(), H);
  const C c2(z.real(), H);
  const double integral =
      leg_integral_re(z0, c1, p) + leg_integral_re(c1, c2, p) + leg_integral_re(c2, z, p);
  return std::norm(z) - std::norm(z0) - 2.0 * integral;
}

}  // namespace

double omega_path_integral(C z, const ellgas::EnsembleParams& p) {
  if (p.t == 0.0) throw std::invalid_argument("omega_path_integral: needs t > 0");
  const double F0 = ellgas::foci(p);
  const double seg_dist = std::hypot(std::max(std::abs(z.real()) - F0, 0.0), z.imag());
  if (seg_dist < 1e-9)
    return 0.5 * (omega_one_side(C(z.real(), 1e-13), p, +1.0) +
                  omega_one_side(C(z.real(), -1e-13), p, -1.0));
  return omega_one_side(z, p, z.imag() >= 0.0 ? +1.0 : -1.0);
}

std::vector<long long> hermite_coefficients(int j) {
  if (j < 0 || j > 20) throw std::invalid_argument("hermite_coefficients: 0 <= j <= 20");
  // H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}
  std::vector<long long> prev{1};
  if (j == 0) return prev;
  std::vector<long long> cur{0, 2};
  for (int k = 1; k < j; ++k) {
    std::vector<long long> next(static_cast<std::size_t>(k) + 2, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * k * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

C hermite_eval(int j, C x) {
  const auto coeff = hermite_coefficients(j);
  C acc = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;)
    acc = acc * x + static_cast<double>(coeff[i]);
  return acc;
}

C orthonormal_direct(int j, C z, const ellgas::EnsembleParams& p) {
  if (p.t <= 0.0) throw std::invalid_argument("orthonormal_direct: needs t > 0");
  double log_fact = 0.0;
  for (int k = 2; k <= j; ++k) log_fact += std::log(static_cast<double>(k));
  const double pref = 0.5 * j * std::log(0.5 * p.t) + 0.25 * std::log(1.0 - p.t * p.t) +
                      0.5 * (std::log(p.N / std::numbers::pi) - log_fact);
  const C arg = std::sqrt(p.N * (1.0 - p.t * p.t) / (2.0 * p.t)) * z;
  return std::exp(pref) * hermite_eval(j, arg);
}

double logsumexp_reference(std::span<const double> terms) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double t : terms) mx = std::max(mx, t);
  // double-double (two-sum) accumulation of exp(t - mx)
  double hi = 0.0, lo = 0.0;
  for (double t : terms) {
    const double x = std::exp(t - mx);
    const double s = hi + x;
    const double e = (std::abs(hi) >= std::abs(x)) ? (hi - s) + x : (x - s) + hi;
    hi = s;
    lo += e;
  }
  return mx + std::log(hi + lo);
}

double log_factorial_reference(int j) {
  long double acc = 0.0L;
  for (int k = 2; k <= j; ++k) acc += std::log(static_cast<long double>(k));
  return static_cast<double>(acc);
}

FdCurvature fd_curvature(double theta, const ellgas::EnsembleParams& p, double h) {
  auto G = [&](double th) { return ellgas::boundary_point(th, p); };
  const C m3 = G(theta - 3 * h), m2 = G(theta - 2 * h), m1 = G(theta - h), z0 = G(theta),
          p1 = G(theta + h), p2 = G(theta + 2 * h), p3 = G(theta + 3 * h);
  const C d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
  const C d2 = (-p2 + 16.0 * p1 - 30.0 * z0 + 16.0 * m1 - m2) / (12.0 * h * h);
  const C d3 = (m3 - 8.0 * m2 + 13.0 * m1 - 13.0 * p1 + 8.0 * p2 - p3) / (8.0 * h * h * h);
  const C d4 = (-p3 + 12.0 * p2 - 39.0 * p1 + 56.0 * z0 - 39.0 * m1 + 12.0 * m2 - m3) /
               (6.0 * h * h * h * h);

  const double speed2 = std::norm(d1);
  const double speed = std::sqrt(speed2);
  const double A = (std::conj(d1) * d2).imag();
  const double B = speed2 * speed;
  const double A1 = (std::conj(d1) * d3).imag();
  const double rdot = (std::conj(d1) * d2).real();
  const double B1 = 3.0 * speed * rdot;
  const double A2 = (std::conj(d2) * d3).imag() + (std::conj(d1) * d4).imag();
  const double B2 =
      3.0 * (rdot * rdot / speed + speed * (std::norm(d2) + (std::conj(d1) * d3).real()));
  const double k1 = (A1 * B - A * B1) / (B * B);
  const double k2 = (A2 * B - A * B2) / (B * B) - 2.0 * B1 * (A1 * B - A * B1) / (B * B * B);

  FdCurvature f;
  f.kappa = A / B;
  f.dkappa_ds = k1 / speed;
  f.d2kappa_ds2 = k2 / speed2 - k1 * rdot / (speed2 * speed2);
  return f;
}

std::pair<double, double> scan_project(C z, const ellgas::EnsembleParams& p, int samples) {
  double best_th = 0.0, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * std::numbers::pi * i / samples;
    const double d = std::abs(z - ellgas::boundary_point(th, p));
    if (d < best_d) {
      best_d = d;
      best_th = th;
    }
  }
  const double h = 2.0 * std::numbers::pi / samples;
  const double dm = std::abs(z - ellgas::boundary_point(best_th - h, p));
  const double dp = std::abs(z - ellgas::boundary_point(best_th + h, p));
  const double refined = best_th + 0.5 * h * (dm - dp) / (dm - 2.0 * best_d + dp);
  return {refined, std::abs(z - ellgas::boundary_point(refined, p))};
}

C prekernel_dz_direct(C z, C w, const ellgas::EnsembleParams& p) {
  const double omt2 = 1.0 - p.t * p.t;
  const auto seqw = ellgas::eval_polys(w, p.n - 1, p);
  std::vector<C> val(static_cast<std::size_t>(p.n)), der(static_cast<std::size_t>(p.n));
  std::vector<double> lsc(static_cast<std::size_t>(p.n));
  C pm = 0.0, dpm = 0.0;
  C pc = std::sqrt(p.N) * std::pow(omt2, 0.25) / std::sqrt(std::numbers::pi);
  C dpc = 0.0;
  double scale = 0.0, r_cur = 0.0;
  val[0] = pc;
  der[0] = dpc;
  lsc[0] = 0.0;
  for (int k = 0; k + 1 < p.n; ++k) {
    const double r_next = std::sqrt((k + 1) / (p.N * omt2));
    const C pn = (z * pc - p.t * r_cur * pm) / r_next;
    const C dpn = (pc + z * dpc - p.t * r_cur * dpm) / r_next;
    pm = pc;
    dpm = dpc;
    pc = pn;
    dpc = dpn;
    r_cur = r_next;
    const double m = std::abs(pc);
    if (m > 1e100) {
      pm /= m;
      dpm /= m;
      pc /= m;
      dpc /= m;
      scale += std::log(m);
    }
    val[static_cast<std::size_t>(k + 1)] = pc;
    der[static_cast<std::size_t>(k + 1)] = dpc;
    lsc[static_cast<std::size_t>(k + 1)] = scale;
  }
  const C expo =
      -p.N * (z * std::conj(w) - 0.5 * p.t * z * z - 0.5 * p.t * std::conj(w) * std::conj(w));
  double max_log = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < p.n; ++j) {
    if (seqw[j].is_zero() || val[static_cast<std::size_t>(j)] == 0.0) continue;
    max_log = std::max(max_log, std::log(std::abs(val[static_cast<std::size_t>(j)])) +
                                    lsc[static_cast<std::size_t>(j)] + seqw[j].log_abs());
  }
  C acc = 0.0;
  for (int j = 0; j < p.n; ++j) {
    if (seqw[j].is_zero()) continue;
    const double l = lsc[static_cast<std::size_t>(j)] + seqw[j].log_abs() - max_log;
    const C pw = std::polar(std::exp(l), -seqw[j].arg());
    acc += (der[static_cast<std::size_t>(j)] -
            p.N * (std::conj(w) - p.t * z) * val[static_cast<std::size_t>(j)]) *
           pw;
  }
  return acc * std::exp(max_log + expo.real()) * std::polar(1.0, expo.imag());
}

}  // namespace oracles
