#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace ellgas {

/// Complex value stored as (log magnitude, phase).  Weighted polynomial
/// magnitudes reach e^{+-N*O(1)} which overflows doubles long before the
/// products of interest do, so intermediate values are kept in this form and
/// only balanced combinations are ever materialized.
class ScaledComplex {
 public:
  ScaledComplex() = default;

  static ScaledComplex from_parts(double log_abs, double arg) {
    ScaledComplex s;
    s.log_abs_ = log_abs;
    s.arg_ = wrap(arg);
    return s;
  }

  static ScaledComplex from_complex(std::complex<double> v) {
    if (v == 0.0) return zero();
    return from_parts(std::log(std::abs(v)), std::arg(v));
  }

  static ScaledComplex zero() {
    return from_parts(-std::numeric_limits<double>::infinity(), 0.0);
  }

  double log_abs() const { return log_abs_; }
  double arg() const { return arg_; }
  bool is_zero() const { return std::isinf(log_abs_) && log_abs_ < 0; }

  /// e^{log_abs} e^{i arg}; overflows to inf when log_abs > ~709.
  std::complex<double> value() const {
    return std::polar(std::exp(log_abs_), arg_);
  }

  /// e^{log_abs - log_shift} e^{i arg}; lets callers pull out a common scale.
  std::complex<double> value_shifted(double log_shift) const {
    return std::polar(std::exp(log_abs_ - log_shift), arg_);
  }

  ScaledComplex conj() const { return from_parts(log_abs_, -arg_); }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_parts(a.log_abs_ + b.log_abs_, a.arg_ + b.arg_);
  }

 private:
  static double wrap(double a) {
    if (!std::isfinite(a)) return 0.0;
    constexpr double two_pi = 6.283185307179586476925286766559;
    a = std::fmod(a, two_pi);
    if (a > 3.14159265358979323846) a -= two_pi;
    if (a <= -3.14159265358979323846) a += two_pi;
    return a;
  }

  double log_abs_ = -std::numeric_limits<double>::infinity();
  double arg_ = 0.0;
};

}  // namespace ellgas
