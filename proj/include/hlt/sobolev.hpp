#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlt/constants.hpp"
#include "hlt/optimize.hpp"
#include "hlt/profiles.hpp"
#include "hlt/quadform.hpp"
#include "hlt/quadrature.hpp"

// Explicit Sobolev-constant machinery for the d = 3, s = 1/2 case:
// the spectral density rho(lambda), the optimized upper bound on the
// Sobolev constant C_{q,3,1/2}, the trial-function energy limit and the
// digamma integral identities behind it.

namespace hlt::sobolev {

/// |Phi_{1/2,3}(alpha)| at alpha = 2 - 3/q via the cotangent closed form
///   2/pi - (1 - 3/q) cot(pi (1 - 3/q) / 2).
inline double phi_abs_explicit(double q_exp) {
  if (!(q_exp > 1.5 && q_exp < 3.0))
    throw std::domain_error("phi_abs_explicit: q in (3/2, 3)");
  const double t = 1.0 - 3.0 / q_exp;
  double cot_term;
  if (std::abs(t) < 1e-8) {
    // t cot(pi t / 2) = 2/pi - (pi/6) t^2 + O(t^4)
    cot_term = 2.0 / std::numbers::pi - std::numbers::pi * t * t / 6.0;
  } else {
    const double x = 0.5 * std::numbers::pi * t;
    cot_term = t * std::cos(x) / std::sin(x);
  }
  return 2.0 / std::numbers::pi - cot_term;
}

/// rho(lambda) = (1-alpha)/(pi lambda^{1+alpha})
///               int_1^inf r^{-(1+alpha)/2} / (r - lambda^{-2}) dr,
/// computed with the tail substitution r = 1 + e^t.
inline double rho(double lambda, double alpha, const QuadratureSpec& quad) {
  if (!(lambda > 1.0 + 1e-9))
    throw std::domain_error("rho: lambda > 1 required");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("rho: alpha in (0, 1)");
  const double il2 = 1.0 / (lambda * lambda);
  auto f = [&](double t) {
    const double et = std::exp(t);
    const double r = 1.0 + et;
    return et / (std::pow(r, 0.5 * (1.0 + alpha)) * (r - il2));
  };
  const double val = integrate(f, -60.0, 0.0, quad) +
                     integrate_upper_inf(f, 0.0, quad);
  return (1.0 - alpha) / (std::numbers::pi * std::pow(lambda, 1.0 + alpha)) *
         val;
}

/// rho^{eps,delta}(lambda) = 2/(pi lambda^{1+alpha})
///   int_1^{1+1/eps} r^{(1-alpha)/2} (r - lambda^{-2})^{-2}
///                   (1 - (1 - eps^delta (r-1)^delta) / r^{(1-alpha)/2}) dr.
inline double rho_eps_delta(double lambda, double alpha, double eps,
                            double delta, const QuadratureSpec& quad) {
  if (!(lambda > 1.0 + 1e-9))
    throw std::domain_error("rho_eps_delta: lambda > 1 required");
  if (!(alpha > 0.0 && alpha < 1.0) || !(eps > 0.0) || !(delta > 0.0))
    throw std::domain_error("rho_eps_delta: invalid parameters");
  const double il2 = 1.0 / (lambda * lambda);
  auto f = [&](double r) {
    const double pw = std::pow(r, 0.5 * (1.0 - alpha));
    const double cut = 1.0 - std::pow(eps * (r - 1.0), delta);
    const double dr = r - il2;
    return pw / (dr * dr) * (1.0 - cut / pw);
  };
  return 2.0 / (std::numbers::pi * std::pow(lambda, 1.0 + alpha)) *
         integrate(f, 1.0, 1.0 + 1.0 / eps, quad);
}

struct SobolevBoundResult {
  double q_exp = 0.0;
  double alpha = 0.0;
  double lambda_star = 0.0;
  double rho_at_star = 0.0;
  double phi_abs = 0.0;
  double bound = 0.0;
  std::vector<ProbePoint> trace;
};

/// Upper bound on the Sobolev constant C_{q,3,1/2}:
///   (pi^2 / 3q^2) (1-alpha) (3/4pi)^{4/3}
///   inf_{lambda>1} lambda^{2(1-alpha)} / (|Phi| - rho(lambda))_+^2.
/// Feasibility (rho(lambda) < |Phi|) is bracketed on a log-lambda grid
/// before golden-section refinement.
inline SobolevBoundResult sobolev_constant_bound(
    double q_exp, const QuadratureSpec& quad = QuadratureSpec{}) {
  if (!(q_exp > 1.5 + 1e-9 && q_exp < 3.0 - 1e-9))
    throw std::domain_error(
        "sobolev_constant_bound: q strictly inside (3/2, 3)");
  SobolevBoundResult res;
  res.q_exp = q_exp;
  res.alpha = 2.0 - 3.0 / q_exp;
  res.phi_abs = phi_abs_explicit(q_exp);

  // objective in log lambda; infeasible points mapped to +inf
  auto obj = [&](double loglam) {
    const double lam = std::exp(loglam);
    const double r = rho(lam, res.alpha, quad);
    const double gap = res.phi_abs - r;
    if (gap <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * (1.0 - res.alpha) * loglam - 2.0 * std::log(gap);
  };

  const double lo = std::log(1.0 + 1e-6), hi = std::log(1e6);
  MinimizeResult scan = log_grid_scan(
      [&](double x) { return obj(std::log(x)); }, std::exp(lo), std::exp(hi),
      60);
  if (!std::isfinite(scan.value))
    throw std::runtime_error(
        "sobolev_constant_bound: no feasible lambda in [1+1e-6, 1e6]");
  const double center = std::log(scan.x);
  const double span = (hi - lo) / 59.0;
  MinimizeResult fine =
      golden_section(obj, std::max(lo, center - span),
                     std::min(hi, center + span), 1e-10);
  res.trace = std::move(scan.trace);
  res.trace.insert(res.trace.end(), fine.trace.begin(), fine.trace.end());
  res.lambda_star = std::exp(fine.x);
  res.rho_at_star = rho(res.lambda_star, res.alpha, quad);
  const double gap = res.phi_abs - res.rho_at_star;
  if (!(gap > 0.0))
    throw std::runtime_error("sobolev_constant_bound: optimum infeasible");
  res.bound = std::numbers::pi * std::numbers::pi / (3.0 * q_exp * q_exp) *
              (1.0 - res.alpha) *
              std::pow(3.0 / (4.0 * std::numbers::pi), 4.0 / 3.0) *
              std::pow(res.lambda_star, 2.0 * (1.0 - res.alpha)) /
              (gap * gap);
  return res;
}

/// Concavity-based a priori bound (2 pi^2 / 3)((1-alpha)/2 + delta) on the
/// eps -> 0 energy limit of the trial profile.
inline double psi_energy_concavity_bound(double alpha, double delta) {
  return 2.0 * std::numbers::pi * std::numbers::pi / 3.0 *
         (0.5 * (1.0 - alpha) + delta);
}

/// Exact eps -> 0 limit of the reduced quadratic form of psi^{eps,delta}:
///   4 (psi(3/2 - alpha/2) + psi(1 + delta) - 2 psi(1)).
inline double psi_energy_limit(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(delta > 0.0))
    throw std::domain_error("psi_energy_limit: alpha in (0,1), delta > 0");
  const double lim = 4.0 * (specfun::digamma(1.5 - 0.5 * alpha) +
                            specfun::digamma(1.0 + delta) -
                            2.0 * specfun::digamma(1.0));
  if (lim > psi_energy_concavity_bound(alpha, delta) + 1e-12)
    throw std::logic_error(
        "psi_energy_limit: limit exceeds the concavity bound");
  return lim;
}

/// Direct quadrature of the reduced quadratic form of psi^{eps,delta}.
inline double psi_energy_numeric(double alpha, double eps, double delta,
                                 const QuadratureSpec& quad) {
  return h_half_radial(ProfileFunction::psi_eps_delta(alpha, eps, delta),
                       quad);
}

namespace detail {

/// Value at x = 0 of the degree-(n-1) polynomial through (x_i, y_i).
inline double polynomial_extrapolate_to_zero(const double* x, const double* y,
                                             int n) {
  double out = 0.0;
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) w *= -x[j] / (x[i] - x[j]);
    out += w * y[i];
  }
  return out;
}

}  // namespace detail

/// eps -> 0 limit of the trial-profile energy by Richardson extrapolation in
/// eps^delta over eps in {1e-2, 3e-3, 1e-3} (the finite-eps error is
/// O(eps^delta), too slow for direct evaluation at small delta).
inline double psi_energy_extrapolated(double alpha, double delta,
                                      const QuadratureSpec& quad) {
  const double eps[3] = {1e-2, 3e-3, 1e-3};
  double x[3], y[3];
  for (int i = 0; i < 3; ++i) {
    x[i] = std::pow(eps[i], delta);
    y[i] = psi_energy_numeric(alpha, eps[i], delta, quad);
  }
  return detail::polynomial_extrapolate_to_zero(x, y, 3);
}

/// eps -> 0 limit of rho^{eps,delta}(lambda), extrapolated the same way over
/// eps in {1e-2, ..., 1e-5}; converges to rho(lambda).
inline double rho_eps_extrapolated(double lambda, double alpha, double delta,
                                   const QuadratureSpec& quad) {
  const double eps[4] = {1e-2, 1e-3, 1e-4, 1e-5};
  double x[4], y[4];
  for (int i = 0; i < 4; ++i) {
    x[i] = std::pow(eps[i], delta);
    y[i] = rho_eps_delta(lambda, alpha, eps[i], delta, quad);
  }
  return detail::polynomial_extrapolate_to_zero(x, y, 4);
}

struct DigammaIdentityReport {
  double residual_squared_kernel = 0.0;   // 1/(1-t)^2 identity
  double residual_log_kernel = 0.0;       // 1/(1-r) identity
  double residual_double_integral = 0.0;  // (r^d - s^d)^2/(r-s)^2 identity
};

/// Quadrature verification of the three scalar digamma identities:
///   int_0^1 (1 - t^{(1-a)/2})^2/(1-t)^2 dt = (1-a)(psi(2-a) - psi(3/2-a/2))
///   int_0^1 (1 - r^{(1-a)/2})^2/(1-r)  dr = 2 psi(3/2-a/2) - psi(1) - psi(2-a)
///   int_0^1 int_0^1 (r^d - s^d)^2/(r-s)^2 dr ds = 2 (psi(1+2d) - psi(1+d)).
inline DigammaIdentityReport digamma_identity_checks(
    double alpha, double delta, const QuadratureSpec& quad,
    double tol = 1e-8) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(delta > 0.0))
    throw std::domain_error("digamma_identity_checks: invalid parameters");
  DigammaIdentityReport rep;
  const double e = 0.5 * (1.0 - alpha);

  auto f1 = [&](double t) {
    const double num = 1.0 - std::pow(t, e);
    return num * num / ((1.0 - t) * (1.0 - t));
  };
  const double lhs1 = integrate(f1, 0.0, 1.0, quad);
  const double rhs1 = (1.0 - alpha) * (specfun::digamma(2.0 - alpha) -
                                       specfun::digamma(1.5 - 0.5 * alpha));
  rep.residual_squared_kernel = lhs1 - rhs1;

  auto f2 = [&](double r) {
    const double num = 1.0 - std::pow(r, e);
    return num * num / (1.0 - r);
  };
  const double lhs2 = integrate(f2, 0.0, 1.0, quad);
  const double rhs2 = 2.0 * specfun::digamma(1.5 - 0.5 * alpha) -
                      specfun::digamma(1.0) - specfun::digamma(2.0 - alpha);
  rep.residual_log_kernel = lhs2 - rhs2;

  auto inner = [&](double r) {
    auto g = [&](double s) {
      const double num = std::pow(r, delta) - std::pow(s, delta);
      return num * num / ((r - s) * (r - s));
    };
    return integrate(g, 0.0, r, quad.with_tols(quad.abs_tol * 0.1,
                                               quad.rel_tol * 0.1));
  };
  const double lhs3 = 2.0 * integrate(inner, 0.0, 1.0, quad);
  const double rhs3 = 2.0 * (specfun::digamma(1.0 + 2.0 * delta) -
                             specfun::digamma(1.0 + delta));
  rep.residual_double_integral = lhs3 - rhs3;

  auto check = [&](double resid, const char* name) {
    if (std::abs(resid) > tol)
      throw std::runtime_error(std::string("digamma_identity_checks: ") +
                               name + " residual " + std::to_string(resid));
  };
  check(rep.residual_squared_kernel, "squared-kernel identity");
  check(rep.residual_log_kernel, "log-kernel identity");
  check(rep.residual_double_integral, "double-integral identity");
  return rep;
}

}  // namespace hlt::sobolev
