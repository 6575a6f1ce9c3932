#pragma once

#include <limits>
#include <span>

namespace ellgas {

/// Complementary error function, (2/sqrt(pi)) * integral of e^{-w^2} from x
/// to infinity.  Series evaluation for |x| <= 2, continued fraction beyond;
/// relative error below 1e-13 for |x| <= 8.
double erfc(double x);

namespace detail {
/// The two independent evaluation routes behind erfc, exposed so they can be
/// cross-checked on their overlap region.
double erfc_series(double x);  ///< 1 - erf series; accurate for |x| <= ~3
double erfc_cf(double x);      ///< Laplace continued fraction; accurate for x >= ~1
}  // namespace detail

/// Complete elliptic integral of the first kind, modulus convention
/// K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta).  AGM based.
/// Throws std::domain_error for k outside [0, 1).
double ellip_K(double k);

/// Complete elliptic integral of the second kind,
/// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta, for 0 <= k <= 1.
double ellip_E(double k);

/// log(j!) with absolute error below 1e-12: cumulative exact sums for
/// j <= 256, Stirling series beyond.
double log_factorial(int j);

/// Streaming log(sum of e^{t_i}) with max-shift stabilization and a
/// compensated inner sum.  -infinity terms are ignored (they add zero).
class LogSumExp {
 public:
  void add(double log_term);
  bool empty() const { return empty_; }
  /// Throws std::invalid_argument if no term was added.
  double value() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
  double comp_ = 0.0;  // Kahan compensation for sum_
  bool empty_ = true;
};

/// One-shot log(sum of e^{t_i}) over a span; throws on an empty span.
double logsumexp(std::span<const double> terms);

}  // namespace ellgas
