#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hlt/constants.hpp"
#include "hlt/profiles.hpp"
#include "hlt/quadrature.hpp"

// Evaluation of the fractional quadratic form by two independent routes
// (Fourier multiplier and singular double integral), the ground-state
// representation, the IMS localization identity and the rearrangement
// inequality, all reduced to nested 1-D quadrature for radial profiles.

namespace hlt {

inline double sphere_surface(int d) {
  if (d < 1) throw std::domain_error("sphere_surface: d >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) /
         std::exp(specfun::log_gamma(0.5 * d));
}

inline double unit_ball_volume(int d) {
  if (d < 1) throw std::domain_error("unit_ball_volume: d >= 1");
  return std::pow(std::numbers::pi, 0.5 * d) /
         std::exp(specfun::log_gamma(0.5 * d + 1.0));
}

/// Angular average A_d(r, rho) = int_{S^{d-1}} |r e_1 - rho w|^{-d-2s} dw,
/// so that the full pair integral reduces to
///   |S^{d-1}| int int r^{d-1} rho^{d-1} A_d(r, rho) ... dr drho.
/// Closed forms for d = 1 and d = 3; d = 2 uses complete elliptic integrals
/// at s = 1/2 and adaptive angular quadrature otherwise.
inline double angular_kernel(double r, double rho, const FracParams& p,
                             const QuadratureSpec& spec) {
  const double s = p.s;
  switch (p.d) {
    case 1:
      return std::pow(std::abs(r - rho), -1.0 - 2.0 * s) +
             std::pow(r + rho, -1.0 - 2.0 * s);
    case 2: {
      const double a = r * r + rho * rho;
      const double b = 2.0 * r * rho;
      if (std::abs(s - 0.5) < 1e-12) {
        // 2 int_0^pi (a - b cos t)^{-3/2} dt = 4 E(k) / ((a-b) sqrt(a+b)),
        // k^2 = 2b/(a+b)
        const double k = std::sqrt(2.0 * b / (a + b));
        return 4.0 * std::comp_ellint_2(k) / ((a - b) * std::sqrt(a + b));
      }
      const double ex = 1.0 + s;
      auto f = [&](double t) { return std::pow(a - b * std::cos(t), -ex); };
      return 2.0 * integrate(f, 0.0, std::numbers::pi,
                             spec.with_tols(1e-14, 1e-10));
    }
    case 3:
      return 2.0 * std::numbers::pi / (r * rho * (1.0 + 2.0 * s)) *
             (std::pow(std::abs(r - rho), -1.0 - 2.0 * s) -
              std::pow(r + rho, -1.0 - 2.0 * s));
    default:
      throw std::domain_error("angular_kernel: d in {1, 2, 3} supported");
  }
}

namespace quadform_detail {

/// int int_{(0,inf)^2} (r rho)^{d-1-weight_exp} A_d(r,rho) g(r,rho) dr drho
/// for symmetric g vanishing when both radii exceed `support`; the diagonal
/// r = rho is an interval endpoint of the inner integral, so the integrable
/// singularity is resolved by adaptive bisection.
template <class G>
inline double pair_integral(const G& g, double weight_exp,
                            const FracParams& p, const QuadratureSpec& spec,
                            double support) {
  if (!std::isfinite(support))
    throw std::domain_error("pair_integral: finite (effective) support "
                            "required");
  const double ex = p.d - 1.0 - weight_exp;
  // The inner range is clipped to the support: beyond it g vanishes, and an
  // unclipped interval would hide the bump from the coarse first panel.
  auto inner = [&](double r) {
    auto f = [&](double rho) {
      if (rho == r) return 0.0;  // measure-zero node from deep bisection
      return std::pow(r * rho, ex) * angular_kernel(r, rho, p, spec) *
             g(r, rho);
    };
    return integrate(f, 0.0, std::min(r, support),
                     spec.with_tols(spec.abs_tol * 0.1, spec.rel_tol * 0.1));
  };
  return 2.0 * integrate_upper_inf(inner, 0.0, spec,
                                   0.25 * std::max(support, 1.0));
}

}  // namespace quadform_detail

/// Radial Fourier transform (unitary convention) of a radial profile:
/// u_hat(k) = k^{-(d-2)/2} int_0^inf u(r) J_{(d-2)/2}(kr) r^{d/2} dr.
inline double fourier_transform_radial(const ProfileFunction& u, double k,
                                       int d, const QuadratureSpec& spec) {
  if (k <= 0.0)
    throw std::domain_error("fourier_transform_radial: k > 0 required");
  const double R = u.effective_radius(1e-14);
  const QuadratureSpec tight = spec.with_tols(1e-13, 1e-9);
  switch (d) {
    case 1: {
      auto f = [&](double r) { return u(r) * std::cos(k * r); };
      return std::sqrt(2.0 / std::numbers::pi) * integrate(f, 0.0, R, tight);
    }
    case 2: {
      auto f = [&](double r) { return u(r) * std::cyl_bessel_j(0.0, k * r) * r; };
      return integrate(f, 0.0, R, tight);
    }
    case 3: {
      auto f = [&](double r) { return u(r) * std::sin(k * r) * r; };
      return std::sqrt(2.0 / std::numbers::pi) / k * integrate(f, 0.0, R, tight);
    }
    default:
      throw std::domain_error("fourier_transform_radial: d in {1, 2, 3}");
  }
}

/// int |xi|^{2s} |u_hat(xi)|^2 dxi. Gaussians use the closed form
/// |S^{d-1}| w^{d-2s} Gamma((d+2s)/2) / 2; other families integrate the
/// radial transform over dyadic frequency blocks.
inline double fourier_energy(const ProfileFunction& u, const FracParams& p,
                             const QuadratureSpec& spec) {
  spec.validate();
  if (u.family() == ProfileFunction::Family::gaussian) {
    const double w = u.width();
    return 0.5 * sphere_surface(p.d) * std::pow(w, p.d - 2.0 * p.s) *
           std::exp(specfun::log_gamma(0.5 * (p.d + 2.0 * p.s)));
  }
  auto f = [&](double k) {
    const double uh = fourier_transform_radial(u, k, p.d, spec);
    return std::pow(k, p.d - 1.0 + 2.0 * p.s) * uh * uh;
  };
  return sphere_surface(p.d) * integrate_upper_inf(f, 0.0, spec);
}

/// Weighted norm int |x|^{-2s} |u|^2 dx (2s = 0 gives the plain L^2 norm).
inline double weighted_l2(const ProfileFunction& u, const FracParams& p,
                          const QuadratureSpec& spec) {
  const double R = u.effective_radius(1e-14);
  auto f = [&](double r) {
    const double v = u(r);
    return std::pow(r, p.d - 1.0 - 2.0 * p.s) * v * v;
  };
  return sphere_surface(p.d) * integrate(f, 0.0, R, spec);
}

/// L^q norm of a radial profile.
inline double lq_norm(const ProfileFunction& u, double q_exp, int d,
                      const QuadratureSpec& spec) {
  if (!(q_exp >= 1.0)) throw std::domain_error("lq_norm: q >= 1");
  const double R = u.effective_radius(1e-14);
  auto f = [&](double r) {
    return std::pow(r, d - 1.0) * std::pow(std::abs(u(r)), q_exp);
  };
  return std::pow(sphere_surface(d) * integrate(f, 0.0, R, spec),
                  1.0 / q_exp);
}

/// a_{s,d} int int |u(x)-u(y)|^2 / |x-y|^{d+2s} dx dy.
inline double double_integral_energy(const ProfileFunction& u,
                                     const FracParams& p,
                                     const QuadratureSpec& spec) {
  spec.validate();
  auto g = [&](double r, double rho) {
    const double diff = u(r) - u(rho);
    return diff * diff;
  };
  const double raw = quadform_detail::pair_integral(
      g, 0.0, p, spec, u.effective_radius(1e-9));
  return kernel_normalization(p) * sphere_surface(p.d) * raw;
}

/// h_s[u] = fourier_energy(u) - C_{s,d} * weighted_l2(u).
inline double hardy_form(const ProfileFunction& u, const FracParams& p,
                         const QuadratureSpec& spec) {
  return fourier_energy(u, p, spec) -
         hardy_constant(p) * weighted_l2(u, p, spec);
}

/// Ground-state representation:
///   a_{s,d} int int |v(x)-v(y)|^2 / |x-y|^{d+2s} |x|^{-alpha} |y|^{-alpha}
/// with v = |x|^alpha u. Requires supp u away from the origin and
/// 0 < alpha <= (d-2s)/2. Equals h_s[u] at alpha = (d-2s)/2, and
/// fourier_energy - (C + Phi(alpha)) * weighted_l2 below it.
inline double gsr_energy(const ProfileFunction& u, const FracParams& p,
                         double alpha, const QuadratureSpec& spec) {
  spec.validate();
  if (!(u.inner_radius() > 0.0))
    throw std::domain_error("gsr_energy: support of u must avoid the origin");
  const double amax = 0.5 * (p.d - 2.0 * p.s);
  if (!(alpha > 0.0 && alpha <= amax + 1e-12))
    throw std::domain_error("gsr_energy: need 0 < alpha <= (d-2s)/2");
  auto v = [&](double r) { return std::pow(r, alpha) * u(r); };
  auto g = [&](double r, double rho) {
    const double diff = v(r) - v(rho);
    return diff * diff;
  };
  const double raw = quadform_detail::pair_integral(
      g, alpha, p, spec, u.effective_radius(1e-9));
  return kernel_normalization(p) * sphere_surface(p.d) * raw;
}

struct ImsResult {
  double lhs = 0.0;            // h_s[u]
  double rhs = 0.0;            // sum_j h_s[chi_j u] - (u, L u)
  double localization = 0.0;   // (u, L u)
};

/// IMS localization identity for a finite radial partition of unity
/// (sum chi_j^2 == 1, checked on a sampling grid).
inline ImsResult ims_decomposition(const ProfileFunction& u,
                                   const std::vector<ProfileFunction>& chi,
                                   const FracParams& p,
                                   const QuadratureSpec& spec) {
  spec.validate();
  if (chi.empty())
    throw std::invalid_argument("ims_decomposition: empty partition");
  const double R = u.effective_radius(1e-9);
  for (int i = 1; i <= 256; ++i) {
    const double r = R * i / 256.0;
    double ssq = 0.0;
    for (const auto& c : chi) ssq += c(r) * c(r);
    if (std::abs(ssq - 1.0) > 1e-12)
      throw std::invalid_argument(
          "ims_decomposition: partition violates sum chi_j^2 == 1");
  }
  ImsResult out;
  out.lhs = hardy_form(u, p, spec);
  for (const auto& c : chi)
    out.rhs += hardy_form(product(c, u), p, spec);
  auto g = [&](double r, double rho) {
    double ssq = 0.0;
    for (const auto& c : chi) {
      const double dchi = c(r) - c(rho);
      ssq += dchi * dchi;
    }
    return u(r) * u(rho) * ssq;
  };
  out.localization = kernel_normalization(p) * sphere_surface(p.d) *
                     quadform_detail::pair_integral(g, 0.0, p, spec, R);
  out.rhs -= out.localization;
  return out;
}

/// Rearrangement bound for symmetric decreasing u:
///   ||u||_q <= q^{-1} |B|^{-1/q'} int u(x) |x|^{-d/q'} dx,
/// with equality for the indicator of a centered ball.
inline std::pair<double, double> isoperimetric_check(
    const ProfileFunction& u, double q_exp, int d,
    const QuadratureSpec& spec) {
  spec.validate();
  if (!(q_exp >= 1.0))
    throw std::domain_error("isoperimetric_check: q >= 1 required");
  const double R = u.effective_radius(1e-14);
  double prev = u(R / 512.0);
  for (int i = 2; i <= 512; ++i) {
    const double cur = u(R * i / 512.0);
    if (cur > prev + 1e-12)
      throw std::invalid_argument(
          "isoperimetric_check: profile is not radially decreasing");
    prev = cur;
  }
  const double lhs = lq_norm(u, q_exp, d, spec);
  const double inv_qp = 1.0 - 1.0 / q_exp;  // 1/q'
  auto f = [&](double r) {
    return u(r) * std::pow(r, d - 1.0 - d * inv_qp);
  };
  const double rhs = (1.0 / q_exp) *
                     std::pow(unit_ball_volume(d), -inv_qp) *
                     sphere_surface(d) * integrate(f, 0.0, R, spec);
  return {lhs, rhs};
}

/// h_{1/2}[psi] for radial psi in d = 3 via the reduced 1-D representation
///   2 int int (r - s)^{-2} |phi(r) - phi(s)|^2 dr ds,
/// phi(r) = sqrt(r) psi(sqrt(r)); the exterior r-range is integrated
/// analytically against the finite support of phi.
inline double h_half_radial(const ProfileFunction& psi,
                            const QuadratureSpec& spec) {
  spec.validate();
  const double Rpsi = psi.effective_radius(1e-9);
  if (!std::isfinite(Rpsi))
    throw std::domain_error("h_half_radial: compact support required");
  auto phi = [&](double r) {
    const double q = std::sqrt(r);
    return q * psi(q);
  };
  const double R = Rpsi * Rpsi;  // support of phi
  const double R0 = 2.0 * R;
  // both levels are integrated over dyadic segments: the integrand carries
  // structure at every scale between O(1) and R0, and a single adaptive pass
  // over a wide interval can miss narrow features with a spuriously small
  // error estimate
  auto dyadic = [](auto&& f, double hi, const QuadratureSpec& sp) {
    double sum = 0.0;
    double a = 0.0, b = std::min(1.0, hi);
    while (a < hi) {
      sum += integrate(f, a, b, sp);
      a = b;
      b = std::min(4.0 * b, hi);
    }
    return sum;
  };
  auto inner = [&](double r) {
    auto f = [&](double s) {
      if (s == r) return 0.0;  // measure-zero node from deep bisection
      const double diff = phi(r) - phi(s);
      return diff * diff / ((r - s) * (r - s));
    };
    return dyadic(f, r, spec.with_tols(spec.abs_tol * 0.1,
                                       spec.rel_tol * 0.1));
  };
  const double bulk = dyadic(inner, R0, spec);
  auto tail = [&](double s) {
    const double v = phi(s);
    return v * v / (R0 - s);
  };
  const double exterior = integrate(tail, 0.0, R, spec);
  return 4.0 * (bulk + exterior);
}

}  // namespace hlt
