#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hlt/sobolev.hpp"
#include "hlt/constants.hpp"
#include "hlt/optimize.hpp"
#include "hlt/specfun.hpp"

// Constant pipeline from the Sobolev constant to the Lieb-Thirring constant:
// Nash exponent, heat-kernel constant K = (p C')^p, the Birman-Schwinger
// counting constant via the (t - a)_+ optimization, and the final
// two-parameter (sigma, p) minimization with sigma eliminated analytically.

namespace hlt {

/// p = beta / (beta - d + 2s), defined for d - 2s < beta < d; p > d/2s.
inline double nash_exponent(double beta, const FracParams& p) {
  const double lo = p.d - 2.0 * p.s;
  if (!(beta > lo && beta < p.d))
    throw std::domain_error("nash_exponent: need d - 2s < beta < d");
  return beta / (beta - lo);
}

/// Inverse map: beta = p_exp (d - 2s) / (p_exp - 1).
inline double beta_from_p(double p_exp, const FracParams& p) {
  if (!(p_exp > 0.5 * p.d / p.s))
    throw std::domain_error("beta_from_p: need p > d/2s");
  return p_exp * (p.d - 2.0 * p.s) / (p_exp - 1.0);
}

/// q = 2 beta / (d - 2s) = 2p/(p-1); independent of (d, s) as a function of p.
inline double q_from_beta(double beta, const FracParams& p) {
  return 2.0 * beta / (p.d - 2.0 * p.s);
}

/// K = (p C')^p, computed in log domain (can exceed 1e50 for large p).
inline double heat_constant(double sobolev_const, double beta,
                            const FracParams& p) {
  if (!(sobolev_const > 0.0))
    throw std::domain_error("heat_constant: sobolev_const > 0");
  const double pe = nash_exponent(beta, p);
  return std::exp(pe * std::log(pe * sobolev_const));
}

/// F(1) = e^{-a} - a E_1(a) for the trial function f(t) = (t - a)_+.
inline double bs_f_transform_at_one(double a) {
  if (!(a > 0.0)) throw std::domain_error("bs_f_transform_at_one: a > 0");
  return std::exp(-a) - a * specfun::exp_int_e1(a);
}

/// int_0^inf t^{-p-1} (t - a)_+ dt = a^{1-p} / (p (p - 1)).
inline double bs_moment(double a, double p_exp) {
  if (!(a > 0.0 && p_exp > 1.0))
    throw std::domain_error("bs_moment: a > 0, p > 1");
  return std::pow(a, 1.0 - p_exp) / (p_exp * (p_exp - 1.0));
}

struct BirmanSchwingerResult {
  double k_prime = 0.0;
  double a_star = 0.0;
  std::vector<ProbePoint> trace;
};

/// K' = K inf_{a>0} [moment(a) / F(1)(a)]; the objective diverges at both
/// ends, so the interior minimum is found by golden section on ln a.
inline BirmanSchwingerResult birman_schwinger_constant(double k_heat,
                                                      double p_exp) {
  if (!(k_heat > 0.0) || !(p_exp > 1.0))
    throw std::domain_error("birman_schwinger_constant: K > 0, p > 1");
  auto log_obj = [&](double la) {
    const double a = std::exp(la);
    return (1.0 - p_exp) * la - std::log(p_exp * (p_exp - 1.0)) -
           std::log(bs_f_transform_at_one(a));
  };
  const double lo = std::log(1e-6), hi = std::log(50.0);
  MinimizeResult res = golden_section(log_obj, lo, hi, 1e-12);
  if (res.x < lo + 1e-6 || res.x > hi - 1e-6)
    throw std::runtime_error(
        "birman_schwinger_constant: minimum on bracket boundary");
  BirmanSchwingerResult out;
  out.a_star = std::exp(res.x);
  out.k_prime = std::exp(std::log(k_heat) + res.value);
  out.trace = std::move(res.trace);
  return out;
}

using SobolevProvider = std::function<double(double)>;

/// Provider backed by the explicit d = 3, s = 1/2 Sobolev bound.
inline SobolevProvider sobolev_provider() {
  return [](double q_exp) {
    return sobolev::sobolev_constant_bound(q_exp).bound;
  };
}

/// Provider returning a fixed user-supplied constant for every q.
inline SobolevProvider constant_provider(double c) {
  if (!(c > 0.0)) throw std::domain_error("constant_provider: c > 0");
  return [c](double) { return c; };
}

struct LTChainResult {
  double gamma = 0.0;
  double p_star = 0.0;
  double beta = 0.0;
  double q_exp = 0.0;
  double sobolev_const = 0.0;
  double k_heat = 0.0;
  double a_star = 0.0;
  double k_prime = 0.0;
  double sigma_star = 0.0;
  double c_final = 0.0;
  std::vector<ProbePoint> p_trace;
  std::vector<ProbePoint> a_trace;
};

namespace lt_detail {

/// log of gamma^{gamma+1} K'(p) B(A, p+1) A^{-A} B^{-B}
/// with A = gamma + d/2s - p, B = p - d/2s; the elimination of sigma uses
/// the interior optimum sigma* = A / gamma of sigma^{-A} (1 - sigma)^{-B}.
inline double log_objective(double p_exp, double gamma, double log_k_prime,
                            double nu) {
  const double a = gamma + nu - p_exp;  // A
  const double b = p_exp - nu;          // B
  if (!(a > 0.0 && b > 0.0)) return std::numeric_limits<double>::infinity();
  return (gamma + 1.0) * std::log(gamma) + log_k_prime +
         specfun::log_gamma(a) + specfun::log_gamma(p_exp + 1.0) -
         specfun::log_gamma(a + p_exp + 1.0) - a * std::log(a) -
         b * std::log(b);
}

}  // namespace lt_detail

/// Full pipeline: for each candidate p the Sobolev constant at
/// q = 2p/(p-1) feeds K = (p C')^p, then K', then the assembled
/// objective; p is minimized on a grid plus golden-section refinement.
inline LTChainResult final_lt_constant(double gamma, const FracParams& p,
                                       const SobolevProvider& provider) {
  if (!(gamma > 0.0))
    throw std::domain_error("final_lt_constant: gamma > 0 required");
  const double nu = 0.5 * p.d / p.s;  // d/2s
  LTChainResult out;
  out.gamma = gamma;

  auto eval = [&](double p_exp) {
    const double beta = beta_from_p(p_exp, p);
    const double q = q_from_beta(beta, p);
    const double cq = provider(q);
    const double log_k = p_exp * std::log(p_exp * cq);
    BirmanSchwingerResult bs = birman_schwinger_constant(1.0, p_exp);
    const double log_kp = log_k + std::log(bs.k_prime);
    return lt_detail::log_objective(p_exp, gamma, log_kp, nu);
  };

  const double p_lo = nu * (1.0 + 1e-6);
  const double p_hi = (gamma + nu) * (1.0 - 1e-6);
  MinimizeResult scan;
  {
    const int n = 48;
    for (int i = 0; i < n; ++i) {
      const double x = p_lo + (p_hi - p_lo) * (i + 0.5) / n;
      const double v = eval(x);
      scan.trace.push_back({x, v});
      if (i == 0 || v < scan.value) {
        scan.x = x;
        scan.value = v;
      }
    }
  }
  if (!std::isfinite(scan.value))
    throw std::runtime_error("final_lt_constant: objective infeasible");
  const double step = (p_hi - p_lo) / 48.0;
  MinimizeResult fine =
      golden_section(eval, std::max(p_lo, scan.x - step),
                     std::min(p_hi, scan.x + step), 1e-10);
  out.p_trace = std::move(scan.trace);
  out.p_trace.insert(out.p_trace.end(), fine.trace.begin(), fine.trace.end());

  out.p_star = fine.x;
  out.beta = beta_from_p(out.p_star, p);
  out.q_exp = q_from_beta(out.beta, p);
  out.sobolev_const = provider(out.q_exp);
  out.k_heat = heat_constant(out.sobolev_const, out.beta, p);
  BirmanSchwingerResult bs = birman_schwinger_constant(out.k_heat, out.p_star);
  out.a_star = bs.a_star;
  out.k_prime = bs.k_prime;
  out.a_trace = std::move(bs.trace);
  const double a_exp = gamma + nu - out.p_star;
  out.sigma_star = a_exp / gamma;
  out.c_final = std::exp(lt_detail::log_objective(
      out.p_star, gamma, std::log(out.k_prime), nu));
  return out;
}

}  // namespace hlt
