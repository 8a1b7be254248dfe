#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Scalar special functions used by every constant formula in the library.
// All functions are pure and throw std::domain_error outside their stated
// domain; they never return NaN silently.

namespace hlt::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

namespace detail {
inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}
}  // namespace detail

/// Gamma function. Poles at non-positive integers are rejected; negative
/// non-integer arguments are supported (needed for |Gamma(-s)|).
inline double gamma_fn(double x) {
  if (detail::is_nonpositive_integer(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer x=" +
                            std::to_string(x));
  return std::tgamma(x);
}

/// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (x <= 0.0)
    throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0.
/// Recurrence shift to x >= 6, then the asymptotic Bernoulli series.
inline double digamma(double x) {
  if (x <= 0.0)
    throw std::domain_error("digamma: requires x > 0 (pole at non-positive "
                            "integers)");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n})
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0 -
                                                      inv2 / 12.0))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

/// Beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), via log-Gamma.
inline double beta_fn(double a, double b) {
  if (a <= 0.0 || b <= 0.0)
    throw std::domain_error("beta_fn: requires a > 0 and b > 0");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
/// Power series for x <= 1, modified Lentz continued fraction beyond.
inline double exp_int_e1(double x) {
  if (x <= 0.0)
    throw std::domain_error("exp_int_e1: requires x > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k/(k k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return -euler_gamma - std::log(x) - sum;
  }
  // continued fraction: E1(x) = e^{-x} * 1/(x+1- 1/(x+3- 4/(x+5- ...)))
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

}  // namespace hlt::specfun
