#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

// Analytically defined radial test-function families. Closed-form families
// evaluate to machine precision; `custom` wraps an arbitrary radial callable
// with support metadata.

namespace hlt {

namespace profile_detail {

inline double cutoff_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

/// C^inf monotone step: 0 for t <= 0, 1 for t >= 1.
inline double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = cutoff_g(t);
  const double b = cutoff_g(1.0 - t);
  return a / (a + b);
}

}  // namespace profile_detail

class ProfileFunction {
 public:
  enum class Family { gaussian, smooth_bump, power_cutoff, psi_eps_delta, custom };

  static ProfileFunction gaussian(double width) {
    if (!(width > 0.0)) throw std::domain_error("gaussian: width > 0");
    ProfileFunction p(Family::gaussian);
    p.width_ = width;
    p.support_ = std::numeric_limits<double>::infinity();
    return p;
  }

  /// 1 on [0, inner], smooth decay to 0 at outer.
  static ProfileFunction smooth_bump(double inner, double outer) {
    if (!(0.0 < inner && inner < outer))
      throw std::domain_error("smooth_bump: 0 < inner < outer");
    ProfileFunction p(Family::smooth_bump);
    p.r0_ = inner;
    p.r1_ = outer;
    p.support_ = outer;
    return p;
  }

  /// chi(r/lambda) r^{-alpha} with chi = 1 on [0,1] and smooth cutoff on [1,2].
  static ProfileFunction power_cutoff(double alpha, double lambda) {
    if (!(alpha > 0.0 && lambda > 0.0))
      throw std::domain_error("power_cutoff: alpha > 0, lambda > 0");
    ProfileFunction p(Family::power_cutoff);
    p.alpha_ = alpha;
    p.lambda_ = lambda;
    p.support_ = 2.0 * lambda;
    return p;
  }

  /// Piecewise profile: r^{-alpha} on [0,1], (1/r)(1 - eps^delta (r^2-1)^delta)
  /// for 1 <= r^2 <= 1 + 1/eps, zero beyond.
  static ProfileFunction psi_eps_delta(double alpha, double eps, double delta) {
    if (!(alpha > 0.0 && eps > 0.0 && delta > 0.0))
      throw std::domain_error("psi_eps_delta: positive parameters required");
    ProfileFunction p(Family::psi_eps_delta);
    p.alpha_ = alpha;
    p.eps_ = eps;
    p.delta_ = delta;
    p.support_ = std::sqrt(1.0 + 1.0 / eps);
    return p;
  }

  /// `effective_hint` supplies a decay radius when the support is infinite.
  static ProfileFunction custom(std::function<double(double)> f,
                                double support_radius,
                                double inner_radius = 0.0,
                                double effective_hint =
                                    std::numeric_limits<double>::quiet_NaN()) {
    ProfileFunction p(Family::custom);
    p.fn_ = std::move(f);
    p.support_ = support_radius;
    p.inner_ = inner_radius;
    p.eff_hint_ = effective_hint;
    return p;
  }

  double operator()(double r) const {
    switch (family_) {
      case Family::gaussian:
        return std::exp(-0.5 * r * r / (width_ * width_));
      case Family::smooth_bump:
        return 1.0 -
               profile_detail::smoothstep((r - r0_) / (r1_ - r0_));
      case Family::power_cutoff: {
        const double t = r / lambda_;
        if (t >= 2.0) return 0.0;
        const double chi = 1.0 - profile_detail::smoothstep(t - 1.0);
        return chi * std::pow(r, -alpha_);
      }
      case Family::psi_eps_delta: {
        const double r2 = r * r;
        if (r <= 1.0) return std::pow(r, -alpha_);
        if (r2 <= 1.0 + 1.0 / eps_)
          return (1.0 - std::pow(eps_ * (r2 - 1.0), delta_)) / r;
        return 0.0;
      }
      case Family::custom:
        return fn_(r);
    }
    return 0.0;
  }

  Family family() const { return family_; }
  double support_radius() const { return support_; }
  double inner_radius() const { return inner_; }
  double width() const { return width_; }

  /// Radius beyond which |u| < eps (exact support for compact families).
  double effective_radius(double eps = 1e-12) const {
    if (std::isfinite(support_)) return support_;
    if (family_ == Family::gaussian)
      // solve e^{-r^2/2w^2} = eps
      return width_ * std::sqrt(2.0 * std::log(1.0 / eps));
    if (std::isfinite(eff_hint_)) return eff_hint_;
    throw std::domain_error(
        "effective_radius: unbounded custom profile without a decay hint");
  }

  /// Like effective_radius, but +inf instead of throwing (for combinators).
  double effective_radius_or_inf(double eps = 1e-12) const {
    if (std::isfinite(support_) || family_ == Family::gaussian)
      return effective_radius(eps);
    return std::isfinite(eff_hint_)
               ? eff_hint_
               : std::numeric_limits<double>::infinity();
  }

 private:
  explicit ProfileFunction(Family f) : family_(f) {}

  Family family_;
  double width_ = 0.0;
  double r0_ = 0.0, r1_ = 0.0;
  double alpha_ = 0.0, lambda_ = 0.0, eps_ = 0.0, delta_ = 0.0;
  double support_ = 0.0;
  double inner_ = 0.0;
  double eff_hint_ = std::numeric_limits<double>::quiet_NaN();
  std::function<double(double)> fn_;
};

/// Smooth annular bump: 0 outside (r0, r3), 1 on [r1, r2].
inline ProfileFunction annular_bump(double r0, double r1, double r2,
                                    double r3) {
  if (!(0.0 <= r0 && r0 < r1 && r1 < r2 && r2 < r3))
    throw std::domain_error("annular_bump: need 0 <= r0 < r1 < r2 < r3");
  auto f = [=](double r) {
    return profile_detail::smoothstep((r - r0) / (r1 - r0)) *
           (1.0 - profile_detail::smoothstep((r - r2) / (r3 - r2)));
  };
  return ProfileFunction::custom(f, r3, r0);
}

/// Dilated copy u(lambda x) of a radial profile.
inline ProfileFunction dilated(const ProfileFunction& u, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("dilated: lambda > 0");
  auto f = [u, lambda](double r) { return u(lambda * r); };
  return ProfileFunction::custom(f, u.support_radius() / lambda,
                                 u.inner_radius() / lambda,
                                 u.effective_radius_or_inf() / lambda);
}

/// Pointwise product of two radial profiles.
inline ProfileFunction product(const ProfileFunction& a,
                               const ProfileFunction& b) {
  auto f = [a, b](double r) { return a(r) * b(r); };
  return ProfileFunction::custom(
      f, std::min(a.support_radius(), b.support_radius()),
      std::max(a.inner_radius(), b.inner_radius()),
      std::min(a.effective_radius_or_inf(), b.effective_radius_or_inf()));
}

/// Two-piece radial partition {chi0, chi1} with chi0^2 + chi1^2 == 1,
/// chi0 = 1 on [0, r_in], chi0 = 0 beyond r_out.
inline std::pair<ProfileFunction, ProfileFunction> ims_partition(
    double r_in = 0.5, double r_out = 1.0) {
  if (!(0.0 < r_in && r_in < r_out))
    throw std::domain_error("ims_partition: 0 < r_in < r_out");
  auto theta = [=](double r) {
    return profile_detail::smoothstep((r - r_in) / (r_out - r_in));
  };
  auto chi0 = [=](double r) {
    return std::cos(1.5707963267948966 * theta(r));
  };
  auto chi1 = [=](double r) {
    return std::sin(1.5707963267948966 * theta(r));
  };
  const double inf = std::numeric_limits<double>::infinity();
  return {ProfileFunction::custom(chi0, r_out),
          ProfileFunction::custom(chi1, inf, r_in)};
}

}  // namespace hlt
