#include "ellgas/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ellgas {

namespace detail {

// erf via the all-positive-terms confluent series
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (1*3*...*(2k+1)).
double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  double denom = 1.0;
  for (int k = 1; k < 200; ++k) {
    denom = 2.0 * k + 1.0;
    term *= 2.0 * x2 / denom;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 2.0 * x / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// erfc via the Laplace continued fraction
//   erfc(x) = (e^{-x^2}/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm; accurate for x >= 2.
double erfc_cf(double x) {
  const double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 300; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * f);
}

double erfc_series(double x) { return 1.0 - erf_series(x); }

}  // namespace detail

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x <= 2.0) return detail::erfc_series(x);
  return detail::erfc_cf(x);
}

double ellip_K(double k) {
  if (!(k >= 0.0 && k < 1.0))
    throw std::domain_error("ellip_K: modulus must satisfy 0 <= k < 1");
  double a = 1.0;
  double g = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < 64 && std::abs(a - g) > 2.0 * std::numeric_limits<double>::epsilon() * a;
       ++it) {
    const double a_next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = a_next;
  }
  return std::numbers::pi / (2.0 * a);
}

double ellip_E(double k) {
  if (!(k >= 0.0 && k <= 1.0))
    throw std::domain_error("ellip_E: modulus must satisfy 0 <= k <= 1");
  if (k == 1.0) return 1.0;
  double a = 1.0;
  double g = std::sqrt((1.0 - k) * (1.0 + k));
  double c = k;
  double csum = 0.5 * c * c;  // sum of 2^{j-1} c_j^2, j = 0 term
  double pow2 = 0.5;
  for (int it = 0; it < 64 && std::abs(c) > 2.0 * std::numeric_limits<double>::epsilon() * a;
       ++it) {
    c = 0.5 * (a - g);
    const double a_next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = a_next;
    pow2 *= 2.0;
    csum += pow2 * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return K * (1.0 - csum);
}

double log_factorial(int j) {
  if (j < 0) throw std::domain_error("log_factorial: j must be >= 0");
  static const std::vector<double> table = [] {
    std::vector<double> v(257);
    long double acc = 0.0L;
    v[0] = 0.0;
    for (int k = 1; k <= 256; ++k) {
      acc += std::log(static_cast<long double>(k));
      v[k] = static_cast<double>(acc);
    }
    return v;
  }();
  if (j <= 256) return table[j];
  // Stirling series; at j > 256 the truncation sits far below 1e-12.
  const double x = j + 1.0;
  const double x2 = x * x;
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2) -
         1.0 / (1680.0 * x * x2 * x2 * x2);
}

void LogSumExp::add(double log_term) {
  empty_ = false;
  if (std::isinf(log_term) && log_term < 0) return;  // adds zero
  auto kahan_add = [this](double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  };
  if (log_term <= max_) {
    kahan_add(std::exp(log_term - max_));
  } else {
    const double rescale = std::exp(max_ - log_term);
    sum_ *= rescale;
    comp_ *= rescale;
    max_ = log_term;
    kahan_add(1.0);
  }
}

double LogSumExp::value() const {
  if (empty_) throw std::invalid_argument("LogSumExp: empty accumulation");
  if (std::isinf(max_) && max_ < 0) return max_;  // all terms were -inf
  return max_ + std::log(sum_);
}

double logsumexp(std::span<const double> terms) {
  LogSumExp acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

}  // namespace ellgas
