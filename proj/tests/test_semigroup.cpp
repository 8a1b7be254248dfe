#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hlt/semigroup.hpp"
#include "oracles.hpp"

using namespace hlt;

namespace {

const FracParams kParams(1, 0.25);
const GridSpec kGrid{1, 128, 16.0};

const WeightedSemigroup& shared_semigroup() {
  static const WeightedSemigroup sg(0.75, kParams, kGrid);
  return sg;
}

}  // namespace

TEST_CASE("construction validates its inputs") {
  CHECK_THROWS_AS(WeightedSemigroup(0.75, FracParams(3, 0.5),
                                    GridSpec{3, 32, 8.0}),
                  std::invalid_argument);  // d = 1 only
  CHECK_THROWS_AS(WeightedSemigroup(0.75, kParams, GridSpec{1, 1024, 16.0}),
                  std::invalid_argument);  // dense size cap
  CHECK_THROWS_AS(WeightedSemigroup(0.4, kParams, kGrid), std::domain_error);
  CHECK_THROWS_AS(WeightedSemigroup(1.0, kParams, kGrid), std::domain_error);
}

TEST_CASE("conjugated form is positive definite") {
  const auto& sg = shared_semigroup();
  CHECK(sg.min_q_eigenvalue() > 0.0);
  CHECK(sg.alpha() == doctest::Approx(0.125));
  // semigroup property of the matrix exponential itself
  const Eigen::MatrixXd half = sg.exp_minus_tq(0.5);
  const Eigen::MatrixXd full = sg.exp_minus_tq(1.0);
  CHECK((half * half - full).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel positivity and weighted contraction") {
  const auto rep =
      check_positivity_contraction(shared_semigroup(), {0.1, 1.0, 10.0});
  CHECK(rep.pass);
  CHECK(rep.max_column_sum <= 1.0 + 1e-8);
  CHECK(rep.min_entry_ratio >= -1e-10);
  CHECK_THROWS_AS(check_positivity_contraction(shared_semigroup(), {0.0}),
                  std::domain_error);
}

TEST_CASE("empirical constant makes the Nash inequality sharp on the probes") {
  const auto& sg = shared_semigroup();
  const auto probes = nash_probe_set(sg, 20);
  CHECK(probes.size() == 20);
  const double c = nash_empirical_constant(sg, probes);
  CHECK(c > 0.0);
  const auto rep = check_nash_inequality(sg, c, probes);
  CHECK(rep.pass);
  // by construction the worst probe is tight
  CHECK(rep.worst_slack == doctest::Approx(1.0).epsilon(1e-9));
  // a smaller constant must fail
  CHECK_FALSE(check_nash_inequality(sg, 0.5 * c, probes).pass);
}

TEST_CASE("ultracontractive bound with the chain constant") {
  const auto& sg = shared_semigroup();
  const auto probes = nash_probe_set(sg, 20);
  const double c = nash_empirical_constant(sg, probes);
  const double p_exp = nash_exponent(sg.beta(), sg.params());
  const double k = heat_constant(c, sg.beta(), sg.params());
  const auto rep = check_heat_bound(sg, k, p_exp, {0.1, 1.0, 10.0});
  CHECK(rep.pass);
  CHECK(rep.worst_margin >= 1.0);
  CHECK(rep.semigroup_defect < 1e-8);
  CHECK(rep.diagonal_defect < 1e-8);
}

TEST_CASE("transform of the shifted-trace trial function") {
  // F(mu) = int_a^inf e^{-t/mu} (t - a)/t dt
  for (auto [mu, a] : {std::pair{0.5, 0.5}, {2.0, 1.0}, {0.1, 0.5}}) {
    const double ref = oracles::simpson_log(
        [mu = mu, a = a](double t) {
          return std::exp(-t / mu) * (t - a) / t;
        },
        std::log(a), std::log(a + 200.0 * mu), 400000);
    CHECK(trace_transform_f(mu, a) == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK(trace_transform_f(0.0, 1.0) == 0.0);
  CHECK(trace_transform_f(-1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(trace_transform_f(1.0, 0.0), std::domain_error);
}

TEST_CASE("trace estimate") {
  const auto& sg = shared_semigroup();
  const long n = sg.q_matrix().rows();
  const auto wprof = annular_bump(0.5, 1.0, 2.0, 3.0);
  Eigen::VectorXd w(n);
  for (long i = 0; i < n; ++i)
    w[i] = wprof(std::abs(sg.grid().coord(static_cast<int>(i))));
  for (double a : {0.25, 0.5, 1.0}) {
    const auto rep = check_trace_estimate(sg, w, a);
    CHECK(rep.pass);
    CHECK(rep.lhs <= rep.rhs * (1.0 + 1e-6));
  }
  CHECK_THROWS_AS(check_trace_estimate(sg, w, 0.0), std::domain_error);
  CHECK_THROWS_AS(check_trace_estimate(sg, Eigen::VectorXd::Ones(3), 1.0),
                  std::invalid_argument);
}

TEST_CASE("conjugation identity for the resolvent kernels") {
  const auto rep = birman_schwinger_match(shared_semigroup(),
                                          annular_bump(0.5, 1.0, 2.0, 3.0));
  CHECK(rep.pass);
  CHECK(rep.max_rel_diff < 1e-10);
  const auto rep2 = birman_schwinger_match(shared_semigroup(),
                                           ProfileFunction::gaussian(1.0));
  CHECK(rep2.pass);
}
