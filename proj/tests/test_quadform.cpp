#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hlt/optimize.hpp"
#include "hlt/profiles.hpp"
#include "hlt/quadform.hpp"
#include "hlt/quadrature.hpp"
#include "oracles.hpp"

using namespace hlt;

namespace {
const QuadratureSpec kSpec;
const double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("adaptive quadrature on closed-form integrals") {
  CHECK(integrate([](double x) { return x * x * x; }, 0.0, 2.0, kSpec) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                  kSpec) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(integrate_upper_inf([](double x) { return std::exp(-x); }, 0.0,
                            kSpec) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_upper_inf([](double x) { return std::exp(-x * x); }, 0.0,
                            kSpec) ==
        doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("quadrature reports failure instead of returning garbage") {
  QuadratureSpec tight = kSpec.with_tols(1e-15, 1e-15);
  tight.max_subdivisions = 16;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                            1.0, tight),
                  QuadratureError);
}

TEST_CASE("golden-section minimizer") {
  auto res = golden_section([](double x) { return (x - 2.0) * (x - 2.0) + 1.0; },
                            0.0, 5.0, 1e-10);
  CHECK(res.converged);
  CHECK(res.x == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.trace.size() > 10);
  CHECK_THROWS_AS(golden_section([](double x) { return x; }, 1.0, 1.0, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("log-grid scan hits the coarse minimizer") {
  auto res = log_grid_scan(
      [](double x) { return std::pow(std::log(x) - 1.0, 2); }, 0.1, 100.0, 200);
  CHECK(res.x == doctest::Approx(std::exp(1.0)).epsilon(0.05));
  CHECK(res.trace.size() == 200);
}

TEST_CASE("profile families evaluate their closed forms") {
  auto g = ProfileFunction::gaussian(2.0);
  CHECK(g(0.0) == doctest::Approx(1.0));
  CHECK(g(2.0) == doctest::Approx(std::exp(-0.5)));

  auto b = ProfileFunction::smooth_bump(1.0, 2.0);
  CHECK(b(0.5) == doctest::Approx(1.0));
  CHECK(b(2.5) == doctest::Approx(0.0));
  CHECK(b(1.5) > 0.0);
  CHECK(b(1.5) < 1.0);

  auto pc = ProfileFunction::power_cutoff(1.0, 4.0);
  CHECK(pc(2.0) == doctest::Approx(0.5));
  CHECK(pc(9.0) == doctest::Approx(0.0));

  CHECK_THROWS_AS(ProfileFunction::gaussian(0.0), std::domain_error);
  CHECK_THROWS_AS(ProfileFunction::smooth_bump(2.0, 1.0), std::domain_error);
}

TEST_CASE("effective radius of combined profiles") {
  auto g = ProfileFunction::gaussian(1.0);
  CHECK(g.effective_radius(1e-12) ==
        doctest::Approx(std::sqrt(2.0 * std::log(1e12))).epsilon(1e-12));

  // product of an unbounded partition piece with a gaussian must keep the
  // gaussian decay radius instead of silently collapsing to zero
  auto [c0, c1] = ims_partition(0.5, 1.0);
  auto outer = product(c1, g);
  CHECK(outer.effective_radius(1e-9) > 1.0);
  CHECK(outer.inner_radius() == doctest::Approx(0.5));

  auto unbounded = ProfileFunction::custom([](double) { return 1.0; },
                                           std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(unbounded.effective_radius(1e-9), std::domain_error);

  auto d = dilated(ProfileFunction::smooth_bump(1.0, 2.0), 2.0);
  CHECK(d.support_radius() == doctest::Approx(1.0));
  CHECK(d(0.4) == doctest::Approx(ProfileFunction::smooth_bump(1.0, 2.0)(0.8)));
}

TEST_CASE("partition of unity") {
  auto [c0, c1] = ims_partition(0.5, 1.0);
  for (double r : {0.01, 0.3, 0.6, 0.8, 1.0, 3.0}) {
    CHECK(c0(r) * c0(r) + c1(r) * c1(r) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(c0(0.2) == doctest::Approx(1.0));
  CHECK(c1(0.2) == doctest::Approx(0.0));
  CHECK(c0(1.5) == doctest::Approx(0.0));
  CHECK(c1(1.5) == doctest::Approx(1.0));
}

TEST_CASE("gaussian kinetic energy: multiplier route vs reference formula") {
  for (auto [d, s] : {std::pair{1, 0.25}, {2, 0.5}, {3, 0.5}, {3, 0.75}}) {
    for (double w : {1.0, 2.0}) {
      FracParams p(d, s);
      const double ref = sphere_surface(d) * std::pow(w, d - 2.0 * s) *
                         oracles::gamma(0.5 * (d + 2.0 * s)) / 2.0;
      CHECK(fourier_energy(ProfileFunction::gaussian(w), p, kSpec) ==
            doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("gaussian singular-weight norm vs reference formula") {
  for (auto [d, s] : {std::pair{1, 0.25}, {3, 0.5}, {3, 0.75}}) {
    FracParams p(d, s);
    const double w = 1.5;
    const double ref = sphere_surface(d) * 0.5 * std::pow(w, d - 2.0 * s) *
                       oracles::gamma(0.5 * (d - 2.0 * s));
    CHECK(weighted_l2(ProfileFunction::gaussian(w), p, kSpec) ==
          doctest::Approx(ref).epsilon(1e-5));
  }
}

TEST_CASE("radial transform of a gaussian in d = 3") {
  FracParams p(3, 0.5);
  auto g = ProfileFunction::gaussian(1.0);
  for (double k : {0.3, 1.0, 2.5}) {
    CHECK(fourier_transform_radial(g, k, p.d, kSpec) ==
          doctest::Approx(std::exp(-0.5 * k * k)).epsilon(1e-9));
  }
}

TEST_CASE("multiplier route equals singular double-integral route") {
  std::vector<ProfileFunction> family = {
      ProfileFunction::gaussian(1.0), ProfileFunction::smooth_bump(1.0, 2.0),
      annular_bump(0.5, 1.0, 2.0, 3.0)};
  for (auto [d, s] : {std::pair{1, 0.25}, {2, 0.5}, {3, 0.5}, {3, 0.75}}) {
    FracParams p(d, s);
    for (const auto& u : family) {
      const double a = fourier_energy(u, p, kSpec);
      const double b = double_integral_energy(u, p, kSpec);
      CHECK(std::abs(a - b) / a < 1e-4);
    }
  }
}

TEST_CASE("hardy form is nonnegative on the test family") {
  for (auto [d, s] : {std::pair{1, 0.25}, {3, 0.5}, {3, 0.75}}) {
    FracParams p(d, s);
    for (const auto& u :
         {ProfileFunction::gaussian(1.0), ProfileFunction::smooth_bump(0.5, 1.5),
          annular_bump(0.25, 0.5, 1.0, 2.0)}) {
      CHECK(hardy_form(u, p, kSpec) >= 0.0);
    }
  }
}

TEST_CASE("ground-state substitution identity") {
  FracParams p(3, 0.5);
  const auto u = annular_bump(0.5, 1.0, 2.0, 3.0);
  const double fe = fourier_energy(u, p, kSpec);
  const double wl = weighted_l2(u, p, kSpec);
  const double c = hardy_constant(p);

  // full substitution: alpha = (d-2s)/2 reproduces the hardy form
  CHECK(gsr_energy(u, p, 1.0, kSpec) ==
        doctest::Approx(fe - c * wl).epsilon(1e-3));

  // partial substitution: multiplier correction Phi(alpha)
  for (double alpha : {0.2, 0.4}) {
    const double rhs = fe - (c + phi_function(alpha, p)) * wl;
    CHECK(gsr_energy(u, p, alpha, kSpec) ==
          doctest::Approx(rhs).epsilon(1e-3));
  }

  CHECK_THROWS_AS(gsr_energy(ProfileFunction::gaussian(1.0), p, 0.5, kSpec),
                  std::domain_error);  // support touches the origin
  CHECK_THROWS_AS(gsr_energy(u, p, 1.5, kSpec), std::domain_error);
}

TEST_CASE("localization identity") {
  FracParams p(3, 0.5);
  auto [c0, c1] = ims_partition(0.5, 1.0);
  const auto u = ProfileFunction::gaussian(1.0);
  const auto res = ims_decomposition(u, {c0, c1}, p, kSpec);
  CHECK(res.localization > 0.0);
  CHECK(std::abs(res.lhs - res.rhs) / std::abs(res.lhs) < 1e-6);

  // a non-partition must be rejected
  CHECK_THROWS_AS(ims_decomposition(u, {c0, c0}, p, kSpec),
                  std::invalid_argument);
}

TEST_CASE("rearrangement bound for decreasing profiles") {
  for (double q : {1.5, 2.0, 3.0}) {
    for (int d : {1, 3}) {
      const auto u = ProfileFunction::gaussian(1.0);
      const auto [lhs, rhs] = isoperimetric_check(u, q, d, kSpec);
      CHECK(lhs <= rhs * (1.0 + 1e-10));
    }
  }
  // near-indicator profile approaches equality
  const auto steep = ProfileFunction::smooth_bump(1.0, 1.001);
  const auto [lhs, rhs] = isoperimetric_check(steep, 2.0, 3, kSpec);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-2));
  CHECK(lhs <= rhs * (1.0 + 1e-10));

  CHECK_THROWS_AS(isoperimetric_check(annular_bump(0.5, 1.0, 2.0, 3.0), 2.0, 3,
                                      kSpec),
                  std::invalid_argument);  // not decreasing
}

TEST_CASE("reduced half-line form agrees with the d=3 hardy form") {
  FracParams p(3, 0.5);
  for (const auto& u : {annular_bump(0.5, 1.0, 2.0, 3.0),
                        ProfileFunction::smooth_bump(0.5, 1.5)}) {
    const double direct = hardy_form(u, p, kSpec);
    const double reduced = h_half_radial(u, kSpec);
    CHECK(std::abs(direct - reduced) / std::max(direct, 1e-12) < 1e-4);
  }
}
