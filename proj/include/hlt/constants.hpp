#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hlt/specfun.hpp"

// Closed-form constants of the fractional Hardy setting: the sharp Hardy
// constant C_{s,d}, the double-integral normalization a_{s,d}, the Fourier
// power weight b_alpha and the power-function multiplier Phi_{s,d}(alpha).

namespace hlt {

struct FracParams {
  int d;
  double s;

  FracParams(int d_, double s_) : d(d_), s(s_) {
    if (d < 1) throw std::domain_error("FracParams: d >= 1 required");
    const bool fractional = s > 0.0 && s < std::min(1.0, 0.5 * d);
    const bool local = (s == 1.0 && d >= 3);  // s = 1 allowed when d >= 3
    if (!fractional && !local)
      throw std::domain_error("FracParams: need 0 < s < min(1, d/2) (or s = 1 "
                              "with d >= 3); got d=" + std::to_string(d) +
                              ", s=" + std::to_string(s));
  }

  double two_star() const { return 2.0 * d / (d - 2.0 * s); }
};

/// Sharp Hardy constant C_{s,d} = 2^{2s} Gamma^2((d+2s)/4) / Gamma^2((d-2s)/4).
inline double hardy_constant(const FracParams& p) {
  if (!(2.0 * p.s < p.d))
    throw std::domain_error("hardy_constant: requires 2s < d");
  const double lg = specfun::log_gamma((p.d + 2.0 * p.s) / 4.0) -
                    specfun::log_gamma((p.d - 2.0 * p.s) / 4.0);
  return std::pow(2.0, 2.0 * p.s) * std::exp(2.0 * lg);
}

/// Normalization a_{s,d} = 2^{2s-1} pi^{-d/2} Gamma((d+2s)/2) / |Gamma(-s)|
/// of the singular double-integral form; valid for 0 < s < 1.
inline double kernel_normalization(const FracParams& p) {
  if (!(p.s < 1.0))
    throw std::domain_error("kernel_normalization: requires s < 1");
  // |Gamma(-s)| = Gamma(2-s)/(s(1-s)) for 0 < s < 1
  const double abs_gamma_minus_s =
      std::exp(specfun::log_gamma(2.0 - p.s)) / (p.s * (1.0 - p.s));
  return std::pow(2.0, 2.0 * p.s - 1.0) *
         std::pow(std::numbers::pi, -0.5 * p.d) *
         std::exp(specfun::log_gamma(0.5 * (p.d + 2.0 * p.s))) /
         abs_gamma_minus_s;
}

/// Fourier weight b_alpha = 2^{alpha/2} Gamma(alpha/2) of the |x|^{-alpha}
/// transform pair, 0 < alpha < d.
inline double fourier_weight_b(double alpha, int d) {
  if (!(alpha > 0.0 && alpha < static_cast<double>(d)))
    throw std::domain_error("fourier_weight_b: requires 0 < alpha < d");
  return std::pow(2.0, 0.5 * alpha) * std::exp(specfun::log_gamma(0.5 * alpha));
}

/// Phi_{s,d}(alpha): the multiplier in
///   ((-Delta)^s - C_{s,d} |x|^{-2s}) |x|^{-alpha} = Phi_{s,d}(alpha)
///   |x|^{-alpha-2s},
/// negative and strictly increasing on (0, (d-2s)/2), zero at (d-2s)/2.
/// Arguments within 1e-10 of the domain endpoints {0, d-2s} are rejected.
inline double phi_function(double alpha, const FracParams& p) {
  const double upper = p.d - 2.0 * p.s;
  if (!(alpha > 1e-10 && alpha < upper - 1e-10))
    throw std::domain_error("phi_function: requires alpha in (0, d-2s) away "
                            "from the Gamma poles");
  const double lg =
      specfun::log_gamma(0.5 * (alpha + 2.0 * p.s)) +
      specfun::log_gamma(0.5 * (p.d - alpha)) -
      specfun::log_gamma(0.5 * (p.d - alpha - 2.0 * p.s)) -
      specfun::log_gamma(0.5 * alpha);
  return std::pow(2.0, 2.0 * p.s) * std::exp(lg) - hardy_constant(p);
}

/// Analytic limit of Phi_{s,d}(alpha) as alpha -> 0+.
inline double phi_limit_at_zero(const FracParams& p) {
  return -hardy_constant(p);
}

}  // namespace hlt
