#pragma once

#include <complex>
#include <vector>

#include "ellgas/geometry.hpp"
#include "ellgas/params.hpp"
#include "ellgas/scaled_complex.hpp"

namespace ellgas {

/// log of the leading coefficient gamma_j of the orthonormal polynomial p_j
/// with respect to e^{-NV} dA, evaluated in log space.
double log_leading_coeff(int j, const EnsembleParams& p);

/// Values p_0(z) .. p_jmax(z) produced by the scaled three-term recurrence
///   p_{k+1} = (z p_k - t r_k p_{k-1}) / r_{k+1},   r_k = sqrt(k / (N(1-t^2))).
struct PolySequence {
  std::complex<double> z;
  EnsembleParams params;
  std::vector<ScaledComplex> values;

  const ScaledComplex& operator[](int j) const { return values[static_cast<std::size_t>(j)]; }
  int jmax() const { return static_cast<int>(values.size()) - 1; }
};

/// Forward recurrence with per-step renormalization; no intermediate value
/// can overflow.  jmax is capped at n + 8.
PolySequence eval_polys(std::complex<double> z, int jmax, const EnsembleParams& p);

/// Walks the scaled recurrence without storing the sequence.  visit is
/// called as visit(j, u_j, log_scale) where p_j = u_j * e^{log_scale}.
template <class Visitor>
void scaled_recurrence(std::complex<double> z, int jmax, const EnsembleParams& p,
                       Visitor&& visit) {
  const double omt2 = 1.0 - p.t * p.t;
  const double invNomt2 = 1.0 / (p.N * omt2);
  // p_0 = gamma_0 = sqrt(N) (1-t^2)^{1/4} / sqrt(pi)
  std::complex<double> prev = 0.0;
  std::complex<double> cur = std::sqrt(p.N) * std::pow(omt2, 0.25) / std::sqrt(3.14159265358979323846);
  double log_scale = 0.0;
  double r_cur = 0.0;
  visit(0, cur, log_scale);
  for (int k = 0; k < jmax; ++k) {
    const double r_next = std::sqrt((k + 1) * invNomt2);
    std::complex<double> next = (z * cur - p.t * r_cur * prev) / r_next;
    prev = cur;
    cur = next;
    r_cur = r_next;
    const double m = std::max(std::abs(cur.real()), std::abs(cur.imag()));
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
      const double s = std::abs(cur);
      cur /= s;
      prev /= s;
      log_scale += std::log(s);
    }
    visit(k + 1, cur, log_scale);
  }
}

/// Residual of the second order differential equation satisfied by p_k,
///   (F0^2 / 2NT) p_k'' - 2 z p_k' + 2 k p_k = 0,
/// normalized by the term magnitudes.  Derivatives are produced by
/// propagating first and second order perturbations through the recurrence.
double hermite_ode_residual(std::complex<double> z, int k, const EnsembleParams& p);

/// Pieces of the 1/N expansion of p_{n+r} away from the focal segment:
///   p_{n+r} ~ (N/2pi^3)^{1/4} psi^r sqrt(psi') exp(n g - N ell/2 + h_r/N).
struct WkbExpansion {
  std::complex<double> g_val;      ///< g(z)
  std::complex<double> h_r_val;    ///< h_r(z)
  std::complex<double> y_minus1;   ///< exponent coefficient of N T
  std::complex<double> y0;         ///< log(sqrt(psi') psi^r)
  std::complex<double> y1;         ///< 1/N exponent coefficient; equals h_r
  int r = 0;
};

/// Evaluates the expansion pieces; throws std::domain_error when z is closer
/// to the focal segment than 0.1 * F0 (0.1 * cap for t = 0).
WkbExpansion wkb(std::complex<double> z, int r, const EnsembleParams& p);

/// Assembled asymptotic value of p_{n+r}(z) as a ScaledComplex.
ScaledComplex wkb_eval_p(std::complex<double> z, int r, const EnsembleParams& p);

/// Boundary values (Re(h_0 + h_{-1}), Im(h_0 - h_{-1}) / |psi'|).  Both equal
/// curvature expressions, -kappa^2/12 + d2kappa/(24 kappa) and
/// dkappa/(6 kappa); throws std::runtime_error if the identity fails at
/// 1e-10.
std::pair<double, double> h_boundary_relations(const BoundaryFrame& frame,
                                               const EnsembleParams& p);

}  // namespace ellgas
