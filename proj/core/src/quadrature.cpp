#include "ellgas/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "ellgas/geometry.hpp"

namespace ellgas {

namespace {

GaussLegendre compute_gauss_legendre(int m) {
  GaussLegendre rule;
  rule.x.resize(m);
  rule.w.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[m - 1 - i] = z;
    rule.w[i] = rule.w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: size must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_gauss_legendre(m)).first;
  return it->second;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double truncation_radius(const EnsembleParams& p, double omega_cut) {
  // Omega(phi(R e^{i theta})) is minimized over theta at theta = 0 for R > 1.
  double R = 1.5;
  while (p.N * effective_potential_disk(Complex(R, 0.0), p) < omega_cut && R < 1e6)
    R *= 1.25;
  return R;
}

std::vector<PlanarNode> elliptic_polar_rule(const EnsembleParams& p,
                                            PlanarRegion region, int radial,
                                            int angular, double omega_cut) {
  if (radial < 2 || angular < 4)
    throw std::invalid_argument("elliptic_polar_rule: rule too small");
  const double rho_in = std::sqrt(p.t);
  const double rho_out = truncation_radius(p, omega_cut);

  struct Band {
    double a, b;
  };
  std::vector<Band> bands;
  if (region == PlanarRegion::interior || region == PlanarRegion::plane)
    bands.push_back({rho_in, 1.0});
  if (region == PlanarRegion::exterior || region == PlanarRegion::plane)
    bands.push_back({1.0, rho_out});

  const GaussLegendre& gl = gauss_legendre(radial);
  const double dtheta = 2.0 * std::numbers::pi / angular;

  std::vector<PlanarNode> nodes;
  nodes.reserve(bands.size() * radial * angular);
  for (const Band& band : bands) {
    const double mid = 0.5 * (band.a + band.b);
    const double hw = 0.5 * (band.b - band.a);
    for (int i = 0; i < radial; ++i) {
      const double rho = mid + hw * gl.x[i];
      const double wr = hw * gl.w[i];
      for (int j = 0; j < angular; ++j) {
        const double theta = (j + 0.5) * dtheta;
        const Complex u = std::polar(rho, theta);
        const Complex dphi = conformal_from_disk_deriv(u, p);
        const double w = wr * dtheta * std::norm(dphi) * rho;
        nodes.push_back({conformal_from_disk(u, p), w});
      }
    }
  }
  return nodes;
}

}  // namespace ellgas
