#pragma once

// Hurwitz zeta function zeta(s, q) = sum_{k>=0} (q + k)^-s for s > 1, q > 0,
// and its derivative in s, by Euler-Maclaurin summation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "linkbounds/error.hpp"

namespace linkbounds {

struct ZetaWithDerivative {
  double value = 0.0;
  double ds = 0.0;  // d zeta / d s
};

namespace detail {

// B_{2j} / (2j)!, j = 1..12
inline constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

// Number of leading terms summed directly so that the remainder starts at
// a >= max(10, s + 2), where the asymptotic series converges quickly.
inline std::size_t zeta_direct_terms(double s, double q) {
  double a = std::max(10.0, s + 2.0);
  return q >= a ? 0 : static_cast<std::size_t>(std::ceil(a - q));
}

inline void check_zeta_args(double s, double q) {
  if (!(s > 1.0) || !std::isfinite(s)) throw Error("Hurwitz zeta requires s > 1");
  if (!(q > 0.0) || !std::isfinite(q)) throw Error("Hurwitz zeta requires q > 0");
}

}  // namespace detail

inline double hurwitz_zeta(double s, double q) {
  detail::check_zeta_args(s, q);
  const std::size_t n = detail::zeta_direct_terms(s, q);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += std::pow(q + static_cast<double>(k), -s);
  const double a = q + static_cast<double>(n);
  const double a_neg_s = std::pow(a, -s);
  double tail = a * a_neg_s / (s - 1.0) + 0.5 * a_neg_s;
  const double inv_a2 = 1.0 / (a * a);
  double rising = s;               // s (s+1) ... (s+2j-2)
  double power = a_neg_s / a;      // a^{-s-2j+1}
  for (std::size_t j = 0; j < detail::kBernoulliOverFactorial.size(); ++j) {
    double term = detail::kBernoulliOverFactorial[j] * rising * power;
    tail += term;
    if (std::abs(term) < 1e-17 * (sum + tail)) break;
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power *= inv_a2;
  }
  return sum + tail;
}

inline ZetaWithDerivative hurwitz_zeta_with_derivative(double s, double q) {
  detail::check_zeta_args(s, q);
  const std::size_t n = detail::zeta_direct_terms(s, q);
  ZetaWithDerivative z;
  for (std::size_t k = 0; k < n; ++k) {
    double x = q + static_cast<double>(k);
    double t = std::pow(x, -s);
    z.value += t;
    z.ds -= std::log(x) * t;
  }
  const double a = q + static_cast<double>(n);
  const double log_a = std::log(a);
  const double a_neg_s = std::pow(a, -s);
  const double sm1 = s - 1.0;
  z.value += a * a_neg_s / sm1 + 0.5 * a_neg_s;
  z.ds += a * a_neg_s * (-log_a / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * log_a * a_neg_s;
  const double inv_a2 = 1.0 / (a * a);
  double rising = s;
  double rising_ds = 1.0;
  double power = a_neg_s / a;
  for (std::size_t j = 0; j < detail::kBernoulliOverFactorial.size(); ++j) {
    const double c = detail::kBernoulliOverFactorial[j];
    double term = c * rising * power;
    z.value += term;
    z.ds += c * power * (rising_ds - log_a * rising);
    if (std::abs(term) < 1e-17 * z.value) break;
    const double f1 = s + 2.0 * j + 1.0;
    const double f2 = s + 2.0 * j + 2.0;
    rising_ds = rising_ds * f1 * f2 + rising * (f1 + f2);
    rising *= f1 * f2;
    power *= inv_a2;
  }
  return z;
}

}  // namespace linkbounds
