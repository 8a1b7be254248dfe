#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hlt/constants.hpp"
#include "hlt/lt_chain.hpp"
#include "hlt/spectral.hpp"

// Dense-matrix verification of the weighted-semigroup chain: positivity and
// weighted L^1 contraction, the Nash inequality, the ultracontractive heat
// bound and the trace estimate, plus the Birman-Schwinger conjugation
// identity. d = 1 only; the discrete conjugated form is defined from the
// same discrete multiplier as the spectral module, so the conjugation
// identity holds at the matrix level by construction.

namespace hlt {

class WeightedSemigroup {
 public:
  WeightedSemigroup(double beta, FracParams params, GridSpec grid)
      : beta_(beta), params_(params), grid_(grid) {
    grid_.validate();
    if (grid_.d != 1)
      throw std::invalid_argument("WeightedSemigroup: d = 1 only");
    if (grid_.total() > 512)
      throw std::invalid_argument("WeightedSemigroup: n <= 512 (dense path)");
    if (!(beta > params_.d - 2.0 * params_.s && beta < params_.d))
      throw std::domain_error("WeightedSemigroup: need d - 2s < beta < d");
    const long n = static_cast<long>(grid_.total());
    alpha_ = 0.5 * (beta_ + 2.0 * params_.s - params_.d);

    h_plus_one_ =
        build_operator(grid_, params_, nullptr, true).dense() +
        Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd a(n);
    weight_.resize(n);
    for (long i = 0; i < n; ++i) {
      const double r = std::abs(grid_.coord(static_cast<int>(i)));
      a[i] = std::pow(r, alpha_);
      weight_[i] = std::pow(r, -beta_) * grid_.h();
    }
    scale_ = a;
    q_ = a.asDiagonal() * h_plus_one_ * a.asDiagonal();
    q_ = 0.5 * (q_ + q_.transpose().eval());
    es_.compute(q_);
    if (es_.info() != Eigen::Success)
      throw std::runtime_error("WeightedSemigroup: eigendecomposition failed");
  }

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  const FracParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  const Eigen::MatrixXd& q_matrix() const { return q_; }
  const Eigen::MatrixXd& h_plus_one() const { return h_plus_one_; }
  const Eigen::VectorXd& weight() const { return weight_; }
  const Eigen::VectorXd& scale() const { return scale_; }
  double min_q_eigenvalue() const { return es_.eigenvalues()[0]; }

  Eigen::MatrixXd exp_minus_tq(double t) const {
    const Eigen::VectorXd e = (-t * es_.eigenvalues().array()).exp();
    return es_.eigenvectors() * e.asDiagonal() *
           es_.eigenvectors().transpose();
  }

  /// Heat kernel with respect to the weighted measure |x|^{-beta} dx:
  /// K_t(i, j) = |x_i|^{beta/2} exp(-tQ)_{ij} |x_j|^{beta/2} / h.
  Eigen::MatrixXd heat_kernel(double t) const {
    const long n = q_.rows();
    Eigen::VectorXd half(n);
    for (long i = 0; i < n; ++i) {
      const double r = std::abs(grid_.coord(static_cast<int>(i)));
      half[i] = std::pow(r, 0.5 * beta_);
    }
    return half.asDiagonal() * exp_minus_tq(t) * half.asDiagonal() /
           grid_.h();
  }

  Eigen::MatrixXd q_inverse() const {
    const Eigen::VectorXd e = es_.eigenvalues().cwiseInverse();
    return es_.eigenvectors() * e.asDiagonal() *
           es_.eigenvectors().transpose();
  }

 private:
  double beta_;
  FracParams params_;
  GridSpec grid_;
  double alpha_ = 0.0;
  Eigen::MatrixXd h_plus_one_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd weight_;
  Eigen::VectorXd scale_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_;
};

inline WeightedSemigroup build_weighted_semigroup(double beta,
                                                 const FracParams& p,
                                                 const GridSpec& grid) {
  return WeightedSemigroup(beta, p, grid);
}

struct ContractionReport {
  double min_entry_ratio = 0.0;  // min entry / max entry, per worst t
  double max_column_sum = 0.0;
  bool pass = false;
};

/// Positivity of the kernel entries and weighted L^1 contraction
/// (column sums against the weighted measure <= 1).
inline ContractionReport check_positivity_contraction(
    const WeightedSemigroup& sg, const std::vector<double>& times) {
  ContractionReport rep;
  rep.min_entry_ratio = 0.0;
  rep.pass = true;
  for (double t : times) {
    if (!(t > 0.0))
      throw std::domain_error("check_positivity_contraction: t > 0");
    const Eigen::MatrixXd k = sg.heat_kernel(t);
    const double mx = k.maxCoeff();
    const double ratio = k.minCoeff() / mx;
    rep.min_entry_ratio = std::min(rep.min_entry_ratio, ratio);
    if (ratio < -1e-10) rep.pass = false;
    for (long j = 0; j < k.cols(); ++j) {
      const double cs = k.col(j).dot(sg.weight());
      rep.max_column_sum = std::max(rep.max_column_sum, cs);
      if (cs > 1.0 + 1e-8) rep.pass = false;
    }
  }
  return rep;
}

/// Weighted norms of an l^2-coordinate vector u: the represented function is
/// f(x_i) = |x_i|^{beta/2} h^{-1/2} u_i, so ||f||_{L^2(w)} = ||u|| and
/// ||f||_{L^1(w)} = h^{1/2} sum |x_i|^{-beta/2} |u_i|.
inline double weighted_l1_of_coords(const WeightedSemigroup& sg,
                                    const Eigen::VectorXd& u) {
  const GridSpec& g = sg.grid();
  double sum = 0.0;
  for (long i = 0; i < u.size(); ++i)
    sum += std::pow(std::abs(g.coord(static_cast<int>(i))), -0.5 * sg.beta()) *
           std::abs(u[i]);
  return std::sqrt(g.h()) * sum;
}

/// Largest C' = ||u||^{2(1+1/p)} / (q[u] * ||f||_1^{2/p}) over the probes:
/// the smallest constant making the Nash inequality hold on the probe set.
inline double nash_empirical_constant(const WeightedSemigroup& sg,
                                      const std::vector<Eigen::VectorXd>& probes) {
  const double p_exp = nash_exponent(sg.beta(), sg.params());
  double worst = 0.0;
  for (const auto& u : probes) {
    const double l2 = u.norm();
    if (l2 == 0.0) continue;
    const double form = u.dot(sg.q_matrix() * u);
    const double l1 = weighted_l1_of_coords(sg, u);
    const double c = std::pow(l2, 2.0 * (1.0 + 1.0 / p_exp)) /
                     (form * std::pow(l1, 2.0 / p_exp));
    worst = std::max(worst, c);
  }
  return worst;
}

struct NashReport {
  double worst_slack = std::numeric_limits<double>::infinity();
  bool pass = false;
};

/// ||v||_2^{1+1/p} <= C'^{1/2} b[v]^{1/2} ||v||_1^{1/p} on each probe.
inline NashReport check_nash_inequality(
    const WeightedSemigroup& sg, double c_prime,
    const std::vector<Eigen::VectorXd>& probes) {
  const double p_exp = nash_exponent(sg.beta(), sg.params());
  NashReport rep;
  rep.pass = true;
  for (const auto& u : probes) {
    const double l2 = u.norm();
    if (l2 == 0.0) continue;
    const double lhs = std::pow(l2, 1.0 + 1.0 / p_exp);
    const double rhs = std::sqrt(c_prime * u.dot(sg.q_matrix() * u)) *
                       std::pow(weighted_l1_of_coords(sg, u), 1.0 / p_exp);
    rep.worst_slack = std::min(rep.worst_slack, rhs / lhs);
    if (lhs > rhs * (1.0 + 1e-10)) rep.pass = false;
  }
  return rep;
}

struct HeatBoundReport {
  double worst_margin = std::numeric_limits<double>::infinity();  // bound/max
  double semigroup_defect = 0.0;
  double diagonal_defect = 0.0;
  bool pass = false;
};

/// max_{x,y} K_t(x,y) <= K t^{-p} at each probed t, plus the semigroup
/// property and the diagonal identity
/// K_t(x,x) = sum_y K_{t/2}(x,y)^2 w(y).
inline HeatBoundReport check_heat_bound(const WeightedSemigroup& sg, double K,
                                        double p_exp,
                                        const std::vector<double>& times) {
  HeatBoundReport rep;
  rep.pass = true;
  for (double t : times) {
    const Eigen::MatrixXd kt = sg.heat_kernel(t);
    const Eigen::MatrixXd kh = sg.heat_kernel(0.5 * t);
    const double mx = kt.maxCoeff();
    const double bound = K * std::pow(t, -p_exp);
    rep.worst_margin = std::min(rep.worst_margin, bound / mx);
    if (mx > bound) rep.pass = false;

    // composition in the weighted measure = plain matrix product of exp(-tQ)
    const Eigen::MatrixXd composed =
        kh * sg.weight().asDiagonal() * kh;
    rep.semigroup_defect = std::max(
        rep.semigroup_defect, (composed - kt).cwiseAbs().maxCoeff() /
                                  std::max(mx, 1.0));
    for (long i = 0; i < kt.rows(); ++i) {
      const double diag =
          kh.row(i).cwiseAbs2().dot(sg.weight().transpose());
      rep.diagonal_defect = std::max(
          rep.diagonal_defect, std::abs(diag - kt(i, i)) / std::max(mx, 1.0));
    }
    if (rep.semigroup_defect > 1e-8 || rep.diagonal_defect > 1e-8)
      rep.pass = false;
  }
  return rep;
}

/// F(mu) = mu e^{-a/mu} - a E_1(a/mu) for mu > 0, the transform of
/// f(t) = (t - a)_+ under the trace-estimate kernel; F(0+) = 0.
inline double trace_transform_f(double mu, double a) {
  if (!(a > 0.0)) throw std::domain_error("trace_transform_f: a > 0");
  if (mu <= 0.0) return 0.0;
  const double x = a / mu;
  if (x > 700.0) return 0.0;
  return mu * std::exp(-x) - a * specfun::exp_int_e1(x);
}

struct TraceReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Trace estimate: tr F(W^{1/2} B^{-1} W^{1/2})
///   <= int_0^inf sum_x K_t(x,x) f(t W(x)) w(x) dt/t,
/// with the right side on a 200-point log-t trapezoid over [1e-3, 1e3].
inline TraceReport check_trace_estimate(const WeightedSemigroup& sg,
                                        const Eigen::VectorXd& W, double a) {
  if (!(a > 0.0)) throw std::domain_error("check_trace_estimate: a > 0");
  const long n = sg.q_matrix().rows();
  if (W.size() != n)
    throw std::invalid_argument("check_trace_estimate: W size mismatch");
  if (W.minCoeff() < 0.0)
    throw std::invalid_argument("check_trace_estimate: W >= 0 required");
  TraceReport rep;

  const Eigen::VectorXd ws = W.cwiseSqrt();
  Eigen::MatrixXd m = ws.asDiagonal() * sg.q_inverse() * ws.asDiagonal();
  m = 0.5 * (m + m.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  for (long i = 0; i < n; ++i)
    rep.lhs += trace_transform_f(std::max(es.eigenvalues()[i], 0.0), a);

  const int nt = 200;
  const double lt_lo = std::log(1e-3), lt_hi = std::log(1e3);
  const double dlt = (lt_hi - lt_lo) / (nt - 1);
  auto integrand = [&](double t) {
    const Eigen::MatrixXd k = sg.heat_kernel(t);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
      const double arg = t * W[i] - a;
      if (arg > 0.0) sum += k(i, i) * arg * sg.weight()[i];
    }
    return sum;
  };
  for (int j = 0; j < nt; ++j) {
    const double t = std::exp(lt_lo + j * dlt);
    const double wq = (j == 0 || j == nt - 1) ? 0.5 : 1.0;
    rep.rhs += wq * dlt * integrand(t);
  }
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-6);
  return rep;
}

struct BsMatchReport {
  double max_rel_diff = 0.0;
  bool pass = false;
};

/// Conjugation identity: eigenvalues of V^{1/2} (H+1)^{-1} V^{1/2} match
/// those of W^{1/2} Q^{-1} W^{1/2} with W(x) = |x|^{beta+2s-d} V(x).
inline BsMatchReport birman_schwinger_match(const WeightedSemigroup& sg,
                                            const ProfileFunction& V) {
  const long n = sg.q_matrix().rows();
  Eigen::VectorXd v(n), w(n);
  for (long i = 0; i < n; ++i) {
    const double r = std::abs(sg.grid().coord(static_cast<int>(i)));
    v[i] = V(r);
    w[i] = std::pow(r, 2.0 * sg.alpha()) * v[i];
  }
  const Eigen::VectorXd vs = v.cwiseSqrt();
  const Eigen::VectorXd wsq = w.cwiseSqrt();

  Eigen::MatrixXd lhs =
      vs.asDiagonal() * sg.h_plus_one().inverse() * vs.asDiagonal();
  lhs = 0.5 * (lhs + lhs.transpose().eval());
  Eigen::MatrixXd rhs =
      wsq.asDiagonal() * sg.q_inverse() * wsq.asDiagonal();
  rhs = 0.5 * (rhs + rhs.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(lhs), er(rhs);
  const double scale = std::max(
      {std::abs(el.eigenvalues().maxCoeff()),
       std::abs(er.eigenvalues().maxCoeff()), 1e-12});
  BsMatchReport rep;
  rep.max_rel_diff =
      (el.eigenvalues() - er.eigenvalues()).cwiseAbs().maxCoeff() / scale;
  rep.pass = rep.max_rel_diff <= 1e-6;
  return rep;
}

/// Deterministic probe set for the Nash checks: grid indicators, discretized
/// Gaussians of several widths and centers, and kernel columns.
inline std::vector<Eigen::VectorXd> nash_probe_set(const WeightedSemigroup& sg,
                                                   int count = 20) {
  const long n = sg.q_matrix().rows();
  const GridSpec& g = sg.grid();
  std::vector<Eigen::VectorXd> probes;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    if (k < 5) {
      u[(k + 1) * n / 8] = 1.0;
    } else if (k < 13) {
      const double width = 0.25 * (1 + (k - 5) % 4);
      const double center = (k < 9) ? 0.0 : 0.3 * g.L;
      for (long i = 0; i < n; ++i) {
        const double x = g.coord(static_cast<int>(i));
        u[i] = std::exp(-0.5 * (x - center) * (x - center) / (width * width));
      }
    } else {
      const Eigen::MatrixXd kt = sg.exp_minus_tq(0.05 * (k - 12));
      u = kt.col((k * 37) % n).cwiseAbs();
    }
    probes.push_back(u);
  }
  return probes;
}

}  // namespace hlt
