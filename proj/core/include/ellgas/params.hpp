#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ellgas {

/// Parameter set (t, T, n, N) of the planar log-gas with confining potential
/// V(z) = |z|^2 - t Re(z^2), at inverse temperature scale N = n/T.  The
/// limiting support of the particles is the ellipse
///   (1-t)/(1+t) x^2 + (1+t)/(1-t) y^2 <= T.
struct EnsembleParams {
  double t = 0.0;  ///< asymmetry of the potential, 0 <= t < 1
  double T = 1.0;  ///< total mass carried by the density
  int n = 1;       ///< particle count
  double N = 1.0;  ///< inverse temperature scale, N = n/T

  /// Builds a validated parameter set with N = n/T.
  static EnsembleParams make(double t, double T, int n) {
    EnsembleParams p{t, T, n, static_cast<double>(n) / T};
    p.validate();
    return p;
  }

  /// Throws std::invalid_argument naming the violated bound.
  void validate() const {
    if (!(t >= 0.0 && t < 1.0))
      throw std::invalid_argument("EnsembleParams: t must satisfy 0 <= t < 1, got " +
                                  std::to_string(t));
    if (!(T > 0.0))
      throw std::invalid_argument("EnsembleParams: T must satisfy T > 0, got " +
                                  std::to_string(T));
    if (n < 1)
      throw std::invalid_argument("EnsembleParams: n must satisfy n >= 1, got " +
                                  std::to_string(n));
    if (!(std::abs(N * T - n) < 1e-12 * n))
      throw std::invalid_argument("EnsembleParams: N must satisfy |N*T - n| < 1e-12*n");
  }
};

}  // namespace ellgas
