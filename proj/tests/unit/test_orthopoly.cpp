#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ellgas/geometry.hpp"
#include "ellgas/kernel_density.hpp"
#include "ellgas/orthopoly.hpp"
#include "ellgas/quadrature.hpp"
#include "oracles.hpp"

using namespace ellgas;
using C = std::complex<double>;

TEST_CASE("leading coefficients") {
  // Gaussian weight normalization: gamma_0 = 1/sqrt(pi) at N = 1, t = 0
  const auto g = EnsembleParams::make(0.0, 1.0, 1);
  CHECK(std::exp(log_leading_coeff(0, g)) ==
        doctest::Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));

  // the constant polynomial integrates to one against e^{-NV}
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 10);
    const double gamma0 = std::exp(log_leading_coeff(0, p));
    const auto nodes = elliptic_polar_rule(p, PlanarRegion::plane, 96, 128, 50.0);
    double mass = 0.0;
    for (const auto& nd : nodes)
      mass += nd.w * gamma0 * gamma0 * std::exp(-p.N * potential(nd.z, p));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }

  // large-degree asymptotics with the 1/(24 T N) correction
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 64);
    const double lg = log_leading_coeff(p.n, p);
    const double lg_asym = 0.25 * std::log(p.N / (2.0 * std::pow(std::numbers::pi, 3))) +
                           0.5 * (-p.N * robin_constant(p) - std::log(capacity(p)));
    const double rel = std::expm1(lg - lg_asym);
    const double expected = -1.0 / (24.0 * p.T * p.N);
    CHECK(std::abs(rel / expected - 1.0) <= 0.10);
  }
}

TEST_CASE("polynomial evaluation by recurrence") {
  const auto p = EnsembleParams::make(0.5, 1.0, 32);

  // odd degrees vanish at the center
  const auto seq0 = eval_polys(C(0.0, 0.0), 21, p);
  for (int j = 1; j <= 21; j += 2) CHECK(seq0[j].is_zero());
  for (int j = 0; j <= 20; j += 2) CHECK(!seq0[j].is_zero());

  // rotation invariant case: monomials gamma_j z^j
  {
    const auto g = EnsembleParams::make(0.0, 1.0, 32);
    const C z(1.3, 0.7);
    const auto seq = eval_polys(z, 30, g);
    for (int j = 0; j <= 30; ++j) {
      const double expect_log = log_leading_coeff(j, g) + j * std::log(std::abs(z));
      CHECK(std::abs(seq[j].log_abs() - expect_log) <= 1e-10 * std::max(1.0, std::abs(expect_log)));
      const double darg = std::remainder(seq[j].arg() - j * std::arg(z), 2.0 * std::numbers::pi);
      CHECK(std::abs(darg) <= 1e-10);
    }
  }

  // exact integer-coefficient oracle for low degrees
  {
    const C z(2.0, 1.0);
    const auto seq = eval_polys(z, 20, p);
    for (int j = 0; j <= 20; ++j) {
      const C direct = oracles::orthonormal_direct(j, z, p);
      const C mine = seq[j].value();
      CHECK(std::abs(mine - direct) <= 1e-9 * std::abs(direct));
    }
  }

  // three-term recurrence residual of the stored values
  {
    const C z(0.9, -0.4);
    const auto seq = eval_polys(z, p.n, p);
    const double omt2 = 1.0 - p.t * p.t;
    for (int k : {1, 5, 17, 30}) {
      const double rk = std::sqrt(k / (p.N * omt2));
      const double rk1 = std::sqrt((k + 1) / (p.N * omt2));
      const double shift = seq[k].log_abs();
      const C lhs = z * seq[k].value_shifted(shift);
      const C rhs = rk1 * seq[k + 1].value_shifted(shift) +
                    p.t * rk * seq[k - 1].value_shifted(shift);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }
  }

  CHECK_THROWS_AS(eval_polys(C(1.0, 0.0), p.n + 9, p), std::invalid_argument);
}

TEST_CASE("differential equation residual") {
  const auto p = EnsembleParams::make(0.5, 1.0, 32);
  CHECK(hermite_ode_residual(C(0.7, 0.2), 0, p) == 0.0);
  CHECK(hermite_ode_residual(C(1.1, -0.5), 1, p) <= 1e-12);
  CHECK(hermite_ode_residual(C(1.5, 0.5), 32, p) <= 1e-8);
}

TEST_CASE("asymptotic expansion pieces") {
  // rotation invariant case collapses the expansion
  {
    const auto g = EnsembleParams::make(0.0, 1.0, 16);
    const C z(1.7, 0.6);
    for (int r : {-1, 0, 2}) {
      const auto e = wkb(z, r, g);
      CHECK(std::abs(e.g_val - std::log(z)) <= 1e-14);
      CHECK(std::abs(e.h_r_val - C(-(1.0 + 6.0 * r + 6.0 * r * r) / 24.0, 0.0)) <= 1e-14);
    }
  }

  const auto p = EnsembleParams::make(0.5, 1.0, 64);

  // exponent-profile identities
  for (int r : {-1, 0, 1}) {
    const C z(2.1, 0.8);
    const auto e = wkb(z, r, p);
    CHECK(std::abs(e.g_val - e.y_minus1 - robin_constant(p) / (2.0 * p.T)) <= 1e-10);
    const C psi = conformal_to_disk(z, p);
    const C dpsi = conformal_to_disk_deriv(z, p);
    CHECK(std::abs(std::exp(e.y0) - std::sqrt(dpsi) * std::pow(psi, r)) <= 1e-10);
    CHECK(std::abs(e.h_r_val - e.y1) <= 1e-10);
  }

  // error drops ~4x when N doubles
  {
    double rel[2];
    int idx = 0;
    for (int n : {64, 128}) {
      const auto pp = EnsembleParams::make(0.5, 1.0, n);
      const C z(2.0, 0.0);
      const auto seq = eval_polys(z, n, pp);
      const auto approx = wkb_eval_p(z, 0, pp);
      rel[idx++] = std::abs(std::exp(approx.log_abs() - seq[n].log_abs()) *
                                std::polar(1.0, approx.arg() - seq[n].arg()) -
                            1.0);
    }
    CHECK(rel[0] / rel[1] >= 3.0);
    CHECK(rel[0] / rel[1] <= 5.0);
  }

  CHECK_THROWS_AS(wkb(C(0.5, 0.0), 0, p), std::domain_error);
}

TEST_CASE("boundary relations of the 1/N exponents") {
  // flat spot of the curvature derivative
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 16);
    const auto [re_sum, im_diff] = h_boundary_relations(boundary_frame(0.0, p), p);
    (void)re_sum;
    CHECK(std::abs(im_diff) <= 1e-12);
  }
  // generic angle, moderate asymmetry
  {
    const auto p = EnsembleParams::make(0.25, 1.0, 16);
    const auto f = boundary_frame(std::numbers::pi / 4.0, p);
    const auto [re_sum, im_diff] = h_boundary_relations(f, p);
    CHECK(std::abs(re_sum - (-f.kappa * f.kappa / 12.0 + f.d2kappa_ds2 / (24.0 * f.kappa))) <=
          1e-10);
    CHECK(std::abs(im_diff - f.dkappa_ds / (6.0 * f.kappa)) <= 1e-10);
  }
  // circle: constant curvature 1/sqrt(T)
  {
    const auto p = EnsembleParams::make(0.0, 2.0, 16);
    const auto [re_sum, im_diff] = h_boundary_relations(boundary_frame(1.0, p), p);
    CHECK(re_sum == doctest::Approx(-1.0 / (12.0 * p.T)).epsilon(1e-12));
    CHECK(std::abs(im_diff) <= 1e-13);
  }
}
