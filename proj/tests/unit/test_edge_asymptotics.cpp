#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ellgas/edge_asymptotics.hpp"
#include "ellgas/geometry.hpp"
#include "ellgas/kernel_density.hpp"
#include "ellgas/quadrature.hpp"
#include "ellgas/special_functions.hpp"

using namespace ellgas;
using C = std::complex<double>;

TEST_CASE("edge density basics") {
  const auto p = EnsembleParams::make(0.5, 1.0, 256);
  const auto f = boundary_frame(0.7, p);

  // saturation deep inside
  CHECK(std::abs(edge_density(-4.0, 0.0, f, p) - 1.0 / std::numbers::pi) <= 1e-12);
  // half the bulk value at the boundary, to leading order
  CHECK(edge_profile_order0(0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));
  // the 1/N kernel vanishes on the axis at the boundary point
  CHECK(edge_psi(0.0, 0.0, f) == 0.0);
}

TEST_CASE("profile symmetries") {
  const auto p = EnsembleParams::make(0.5, 1.0, 64);
  const auto e = edge_expansion(1.3, p);
  for (double xi = -4.0; xi <= 4.0; xi += 0.25) {
    CHECK(std::abs(e.order0(xi) + e.order0(-xi) - 1.0 / std::numbers::pi) <= 1e-15);
    CHECK(e.order1(xi) == e.order1(-xi));
    CHECK(e.order2(xi) == -e.order2(-xi));
    CHECK(e.density(xi) == edge_density(xi, 0.0, e.frame, p));
  }
}

TEST_CASE("second correction profile against exact densities") {
  // the scaled residual of the exact density converges onto the closed-form
  // profile; at the maximal-curvature point the remaining gap is the
  // O(N^{-1/2}) next order, which shrinks like 1/sqrt(N)
  double gap1000 = 0.0, max_r2 = 0.0;
  for (int n : {1000, 4000}) {
    const auto p = EnsembleParams::make(0.5, 1.0, n);
    const auto f = boundary_frame(0.0, p);
    double sup = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double xi = -3.0 + 6.0 * i / 60.0;
      const C z = f.z0 + xi / std::sqrt(p.N) * f.normal;
      const double lhs = p.N * (density(z, p) - edge_profile_order0(xi) -
                                edge_profile_order1(xi, f) / std::sqrt(p.N));
      sup = std::max(sup, std::abs(lhs - edge_profile_order2(xi, f)));
      max_r2 = std::max(max_r2, std::abs(edge_profile_order2(xi, f)));
    }
    if (n == 1000) {
      gap1000 = sup;
      CHECK(sup <= 0.15 * max_r2);
    } else {
      CHECK(sup <= 0.65 * gap1000);  // N^{-1/2} shrink
    }
  }
}

TEST_CASE("profile convergence across n") {
  // the exact curve moves monotonically onto the erfc limit as n grows
  double sup10 = 0.0, sup100 = 0.0;
  for (int n : {10, 100}) {
    const auto p = EnsembleParams::make(0.25, 1.0, n);
    const auto f = boundary_frame(0.0, p);
    double sup = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double xi = -3.0 + 6.0 * i / 60.0;
      sup = std::max(sup, std::abs(density(f.z0 + xi / std::sqrt(p.N) * f.normal, p) -
                                   edge_profile_order0(xi)));
    }
    (n == 10 ? sup10 : sup100) = sup;
  }
  CHECK(sup100 < 0.5 * sup10);

  // circle: the scaled first residual collapses onto the unit-curvature
  // correction profile
  {
    const auto p = EnsembleParams::make(0.0, 1.0, 64);
    const auto f = boundary_frame(0.0, p);
    double sup = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double xi = -3.0 + 6.0 * i / 60.0;
      const double resid1 =
          density(f.z0 + xi / std::sqrt(p.N) * f.normal, p) - edge_profile_order0(xi);
      sup = std::max(sup, std::abs(std::sqrt(p.N) * resid1 - edge_profile_order1(xi, f)));
    }
    CHECK(f.kappa == 1.0);
    CHECK(sup <= 1e-3);
  }
}

TEST_CASE("effective potential expansions at the boundary") {
  const auto p = EnsembleParams::make(0.5, 1.0, 8);
  const auto f = boundary_frame(0.7, p);

  CHECK(omega_edge_expansion(0.0, 0.0, f) == 0.0);
  CHECK(exp_omega_expansion(0.0, 0.0, f, p.N) == 1.0);

  // quartic Taylor: Richardson slope of the residual
  auto resid = [&](double h) {
    double worst = 0.0;
    for (auto [cx, cy] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {0.8, -0.6}}) {
      const C z = f.z0 + C(cx * h, cy * h) * f.normal;
      worst = std::max(worst,
                       std::abs(effective_potential(z, p) - omega_edge_expansion(cx * h, cy * h, f)));
    }
    return worst;
  };
  CHECK(std::log2(resid(0.02) / resid(0.01)) >= 4.7);

  // pure normal direction matches 2X^2 - (2k/3)X^3 + (k^2/2)X^4 + O(X^5)
  for (double X : {0.02, 0.01}) {
    const double om = effective_potential(f.z0 + X * f.normal, p);
    const double taylor = 2.0 * X * X - 2.0 * f.kappa / 3.0 * X * X * X +
                          0.5 * f.kappa * f.kappa * X * X * X * X;
    CHECK(std::abs(om - taylor) <= 40.0 * std::pow(X, 5) * (1.0 + std::abs(f.d2kappa_ds2)));
  }
}

TEST_CASE("density derivative expansions") {
  // closed-form value at X = 0 carries the curvature constants
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 400);
    const auto f = boundary_frame(std::numbers::pi / 6.0, p);
    const double k = f.kappa, k1 = f.dkappa_ds, k2 = f.d2kappa_ds2;
    const double expect = std::sqrt(p.N / (2.0 * std::pow(std::numbers::pi, 3))) *
                          (-2.0 + (k * k / 6.0 + k1 * k1 / (9.0 * k * k) - k2 / (12.0 * k)) / p.N);
    CHECK(dn_rho_expansion(0.0, f, p) == doctest::Approx(expect).epsilon(1e-14));
  }

  // circle: curvature-derivative terms drop out of the tangential expansion
  {
    const auto p = EnsembleParams::make(0.0, 1.0, 100);
    const auto f = boundary_frame(0.3, p);
    const double X = 0.05, Y = 0.08;
    const double k = f.kappa;
    const double expect = std::sqrt(p.N / (2.0 * std::pow(std::numbers::pi, 3))) *
                          std::exp(-2.0 * p.N * X * X) *
                          (-2.0 * k * Y + k * k * (4.0 * p.N * X * Y * Y * Y -
                                                   4.0 / 3.0 * p.N * X * X * X * Y + 4.0 * X * Y));
    CHECK(dt_rho_expansion(X, Y, f, p) == doctest::Approx(expect).epsilon(1e-14));
  }

  // against the collapsed-kernel gradient near the boundary
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 400);
    const auto f = boundary_frame(std::numbers::pi / 6.0, p);
    const double pref = std::sqrt(p.N / (2.0 * std::pow(std::numbers::pi, 3)));
    double worst_n = 0.0, worst_t = 0.0;
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j) {
        const double X = 1.5 * i / (4.0 * std::sqrt(p.N));
        const double Y = 1.5 * j / (4.0 * std::sqrt(p.N));
        const C z = f.z0 + C(X, Y) * f.normal;
        const C grad = density_gradient_cd(z, p);
        if (j == 0)
          worst_n = std::max(worst_n,
                             std::abs(2.0 * (f.normal * grad).real() - dn_rho_expansion(X, f, p)));
        worst_t = std::max(worst_t, std::abs(2.0 * (f.tangent * grad).real() -
                                             dt_rho_expansion(X, Y, f, p)));
      }
    CHECK(worst_n / pref <= 3.0 * std::pow(p.N, -1.5));
    CHECK(worst_t / pref <= 100.0 * std::pow(p.N, -1.5));
  }
}

TEST_CASE("outside count asymptotics") {
  // values matching the printed five-decimal references
  CHECK(n_out_asymptotic(EnsembleParams::make(0.5, 1.0, 2)).total() ==
        doctest::Approx(0.66226).epsilon(8e-6));
  CHECK(n_out_asymptotic(EnsembleParams::make(0.5, 1.0, 64)).total() ==
        doctest::Approx(3.91404).epsilon(2e-6));

  // circle case collapses to elementary constants
  {
    const auto p = EnsembleParams::make(0.0, 1.0, 16);
    const auto oc = n_out_asymptotic(p);
    CHECK(oc.k_modulus == 0.0);
    const double lead = std::sqrt(16.0) * 2.0 * std::numbers::pi /
                        std::pow(2.0 * std::numbers::pi, 1.5);
    CHECK(oc.leading == doctest::Approx(lead).epsilon(1e-12));
    const double corr = -std::sqrt(16.0) / 16.0 * (3.0 * std::numbers::pi / 2.0) /
                        (9.0 * std::pow(2.0 * std::numbers::pi, 1.5));
    CHECK(oc.correction == doctest::Approx(corr).epsilon(1e-12));
    // cross-check against exact quadrature
    CHECK(std::abs(oc.total() - expected_outside_exact(p)) <= 0.01);
  }

  // leading term equals sqrt(n) L / ((2 pi)^{3/2} sqrt(T))
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 64);
    const auto oc = n_out_asymptotic(p);
    const double via_L = std::sqrt(64.0) * oc.perimeter /
                         (std::pow(2.0 * std::numbers::pi, 1.5) * std::sqrt(p.T));
    CHECK(std::abs(via_L - oc.leading) <= 1e-10);
  }
}

TEST_CASE("arclength escape density") {
  // constant around the circle at both orders
  {
    const auto p = EnsembleParams::make(0.0, 1.0, 16);
    const double ref = arclength_escape_density(0.0, p);
    for (double th : {0.4, 1.7, 3.0}) CHECK(arclength_escape_density(th, p) == ref);
  }
  // integrates back to the asymptotic outside count
  {
    const auto p = EnsembleParams::make(0.5, 1.0, 64);
    const auto& gl = gauss_legendre(400);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.x.size(); ++q) {
      const double th = std::numbers::pi * (gl.x[q] + 1.0);
      const double w = std::numbers::pi * gl.w[q];
      const double speed =
          capacity(p) * std::sqrt(1.0 + p.t * p.t - 2.0 * p.t * std::cos(2.0 * th));
      acc += w * arclength_escape_density(th, p) * speed;
    }
    CHECK(std::abs(acc - n_out_asymptotic(p).total()) <= 1e-8);
  }
}

TEST_CASE("tangential route consistency") {
  const auto p = EnsembleParams::make(0.5, 1.0, 10000);
  const auto f = boundary_frame(0.0, p);

  // both routes coincide exactly on the boundary point itself
  CHECK(tangential_consistency(0.0, f, p) ==
        doctest::Approx(edge_density(0.0, 0.0, f, p)).epsilon(1e-12));

  // purely tangential displacement: agreement to o(1/N)
  CHECK(std::abs(tangential_consistency(1.0, f, p) - edge_density(0.0, 1.0, f, p)) <= 3e-5);

  // circle: the two-variable expansion reduces to the curvature pattern
  // 1/(2 pi) - kappa (1 + 3 eta^2) / (3 sqrt(2 pi^3 N))
  {
    const auto pc = EnsembleParams::make(0.0, 1.0, 400);
    const auto fc = boundary_frame(0.9, pc);
    for (double eta : {0.5, 1.0, 2.0}) {
      const double expect =
          1.0 / (2.0 * std::numbers::pi) -
          fc.kappa * (1.0 + 3.0 * eta * eta) /
              (3.0 * std::sqrt(2.0 * std::pow(std::numbers::pi, 3) * pc.N));
      CHECK(edge_density(0.0, eta, fc, pc) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}
