#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlt/constants.hpp"
#include "hlt/fft.hpp"
#include "hlt/profiles.hpp"
#include "hlt/quadform.hpp"
#include "hlt/quadrature.hpp"

// Periodic spectral discretization of |D|^{2s} - C_{s,d}|x|^{-2s} - V on a
// cell-centered torus grid, dense and Lanczos eigensolvers for the negative
// spectrum, and the eigenvalue-side verification helpers (Riesz-mean bound,
// Birman-Schwinger count, scaling identity).

namespace hlt {

struct GridSpec {
  int d = 1;
  int n = 256;        // points per axis
  double L = 16.0;    // box half-width

  void validate() const {
    if (d != 1 && d != 2 && d != 3)
      throw std::invalid_argument("GridSpec: d in {1, 2, 3}");
    if (!fft::is_power_of_two(static_cast<std::size_t>(n)))
      throw std::invalid_argument("GridSpec: n must be a power of two");
    if ((d == 1 && n < 64) || (d > 1 && n < 32))
      throw std::invalid_argument("GridSpec: n too small for this d");
    if (!(L > 0.0)) throw std::invalid_argument("GridSpec: L > 0");
  }

  std::size_t total() const {
    std::size_t t = 1;
    for (int k = 0; k < d; ++k) t *= static_cast<std::size_t>(n);
    return t;
  }

  double h() const { return 2.0 * L / n; }

  // cell-centered coordinate along one axis; never zero
  double coord(int i) const { return -L + (i + 0.5) * h(); }

  double radius(std::size_t flat) const {
    double r2 = 0.0;
    for (int axis = d - 1; axis >= 0; --axis) {
      const double x = coord(static_cast<int>(flat % n));
      flat /= n;
      r2 += x * x;
    }
    return std::sqrt(r2);
  }
};

class DiscreteOperator {
 public:
  DiscreteOperator(GridSpec grid, FracParams params,
                   std::vector<double> diagonal)
      : grid_(grid), params_(params), diag_(std::move(diagonal)) {
    grid_.validate();
    if (diag_.size() != grid_.total())
      throw std::invalid_argument("DiscreteOperator: diagonal size mismatch");
    build_multiplier();
  }

  const GridSpec& grid() const { return grid_; }
  const FracParams& params() const { return params_; }
  const std::vector<double>& diagonal() const { return diag_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const {
    const std::size_t nt = grid_.total();
    if (static_cast<std::size_t>(u.size()) != nt)
      throw std::invalid_argument("DiscreteOperator::apply: size mismatch");
    std::vector<std::complex<double>> buf(nt);
    for (std::size_t i = 0; i < nt; ++i) buf[i] = u[static_cast<long>(i)];
    fft::transform_nd(buf, grid_.d, static_cast<std::size_t>(grid_.n), false);
    for (std::size_t i = 0; i < nt; ++i) buf[i] *= mult_[i];
    fft::transform_nd(buf, grid_.d, static_cast<std::size_t>(grid_.n), true);
    Eigen::VectorXd out(u.size());
    for (std::size_t i = 0; i < nt; ++i)
      out[static_cast<long>(i)] =
          buf[i].real() + diag_[i] * u[static_cast<long>(i)];
    return out;
  }

  /// Dense assembly by applying to unit vectors; symmetrized to wash out
  /// round-off asymmetry of the transform pair.
  Eigen::MatrixXd dense() const {
    const std::size_t nt = grid_.total();
    if (nt > 4096)
      throw std::invalid_argument("DiscreteOperator::dense: grid too large");
    Eigen::MatrixXd m(nt, nt);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nt);
    for (std::size_t j = 0; j < nt; ++j) {
      e[static_cast<long>(j)] = 1.0;
      m.col(static_cast<long>(j)) = apply(e);
      e[static_cast<long>(j)] = 0.0;
    }
    return 0.5 * (m + m.transpose());
  }

 private:
  void build_multiplier() {
    const std::size_t nt = grid_.total();
    mult_.resize(nt);
    const double base = std::numbers::pi / grid_.L;
    for (std::size_t flat = 0; flat < nt; ++flat) {
      std::size_t rest = flat;
      double k2 = 0.0;
      for (int axis = grid_.d - 1; axis >= 0; --axis) {
        int idx = static_cast<int>(rest % grid_.n);
        rest /= grid_.n;
        if (idx >= grid_.n / 2) idx -= grid_.n;
        const double k = base * idx;
        k2 += k * k;
      }
      mult_[flat] = std::pow(k2, params_.s);
    }
  }

  GridSpec grid_;
  FracParams params_;
  std::vector<double> diag_;
  std::vector<double> mult_;
};

/// Assemble |D|^{2s} - C_{s,d}|x|^{-2s} - V with the Hardy weight capped at
/// its value a half-cell from the origin (capping only weakens the negative
/// part of the potential).
inline DiscreteOperator build_operator(const GridSpec& grid,
                                       const FracParams& p,
                                       const std::function<double(double)>& V,
                                       bool include_hardy = true) {
  grid.validate();
  const std::size_t nt = grid.total();
  const double c = include_hardy ? hardy_constant(p) : 0.0;
  const double r_cap = 0.5 * grid.h();
  std::vector<double> diag(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const double r = grid.radius(i);
    double v = V ? V(r) : 0.0;
    if (include_hardy)
      v += c * std::pow(std::max(r, r_cap), -2.0 * p.s);
    diag[i] = -v;
  }
  return DiscreteOperator(grid, p, std::move(diag));
}

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending, all below the threshold
  std::vector<double> residuals;
  double threshold = 0.0;

  int count() const { return static_cast<int>(eigenvalues.size()); }

  int count_below(double thr) const {
    int c = 0;
    for (double ev : eigenvalues)
      if (ev < thr) ++c;
    return c;
  }

  double riesz_mean(double gamma) const {
    double sum = 0.0;
    for (double ev : eigenvalues)
      if (ev < 0.0) sum += std::pow(-ev, gamma);
    return sum;
  }
};

enum class SolverMode { dense, iterative };

namespace spectral_detail {

inline SpectrumResult dense_spectrum(const DiscreteOperator& op,
                                     double threshold) {
  const Eigen::MatrixXd m = op.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense_spectrum: eigensolver failed");
  SpectrumResult res;
  res.threshold = threshold;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()[i];
    if (ev >= threshold) break;
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    res.eigenvalues.push_back(ev);
    res.residuals.push_back((m * v - ev * v).norm());
  }
  return res;
}

/// Lanczos with full reorthogonalization and a deterministic start vector;
/// Ritz values below the threshold with residual estimates |beta_m s_mi|.
inline SpectrumResult lanczos_spectrum(const DiscreteOperator& op,
                                       double threshold) {
  const long n = static_cast<long>(op.grid().total());
  auto run = [&](int m) {
    m = static_cast<int>(std::min<long>(m, n));
    std::vector<Eigen::VectorXd> basis;
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i)
      v[i] = std::sin(0.7 * (i + 1)) + 1e-3 * std::cos(1.3 * i);
    v.normalize();
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    double b_prev = 0.0;
    int steps = 0;
    for (int j = 0; j < m; ++j) {
      basis.push_back(v);
      Eigen::VectorXd w = op.apply(v) - b_prev * prev;
      alpha[j] = v.dot(w);
      w -= alpha[j] * v;
      for (const auto& q : basis) w -= q.dot(w) * q;
      for (const auto& q : basis) w -= q.dot(w) * q;
      const double b = w.norm();
      beta[j] = b;
      steps = j + 1;
      if (b < 1e-12) break;
      prev = v;
      v = w / b;
      b_prev = b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < steps) {
        t(j, j + 1) = beta[j];
        t(j + 1, j) = beta[j];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    SpectrumResult res;
    res.threshold = threshold;
    const double b_last = steps < m ? 0.0 : beta[steps - 1];
    for (int i = 0; i < steps; ++i) {
      const double ev = es.eigenvalues()[i];
      if (ev >= threshold) break;
      res.eigenvalues.push_back(ev);
      res.residuals.push_back(std::abs(b_last * es.eigenvectors()(steps - 1, i)));
    }
    return res;
  };
  int m = 60;
  SpectrumResult last = run(m);
  for (int round = 0; round < 8; ++round) {
    if (m >= n) break;
    const int m2 = static_cast<int>(std::min<long>(n, m + m / 2 + 20));
    SpectrumResult next = run(m2);
    bool converged = next.count() == last.count();
    for (double r : next.residuals)
      if (r > 1e-8) converged = false;
    if (converged) return next;
    last = std::move(next);
    m = m2;
  }
  throw std::runtime_error(
      "lanczos_spectrum: eigenvalue count did not stabilize");
}

}  // namespace spectral_detail

inline SpectrumResult negative_spectrum(const DiscreteOperator& op,
                                        SolverMode mode,
                                        double threshold = 0.0) {
  if (threshold > 0.0)
    throw std::invalid_argument("negative_spectrum: threshold <= 0 required");
  return mode == SolverMode::dense
             ? spectral_detail::dense_spectrum(op, threshold)
             : spectral_detail::lanczos_spectrum(op, threshold);
}

/// int V(|x|)^e dx for a radial potential.
inline double potential_integral(const std::function<double(double)>& V,
                                 double expnt, int d, double support,
                                 const QuadratureSpec& spec) {
  auto f = [&](double r) {
    return std::pow(r, d - 1.0) * std::pow(std::max(V(r), 0.0), expnt);
  };
  return sphere_surface(d) * integrate(f, 0.0, support, spec);
}

struct LtVerifyRow {
  std::string family;
  double depth = 0.0;
  int n = 0;
  double box_half_width = 0.0;
  int count = 0;
  double riesz_mean = 0.0;
  double integral = 0.0;
  double constant = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

/// Riesz-mean inequality: tr(H_s - V)_-^gamma <= C_final * int V_+^{gamma + d/2s}.
inline LtVerifyRow verify_hlt_instance(const ProfileFunction& V, double depth,
                                       const std::string& family, double gamma,
                                       double c_final, const FracParams& p,
                                       const GridSpec& grid,
                                       const QuadratureSpec& spec,
                                       SolverMode mode = SolverMode::dense) {
  LtVerifyRow row;
  row.family = family;
  row.depth = depth;
  row.n = grid.n;
  row.box_half_width = grid.L;
  row.constant = c_final;
  auto Vd = [&](double r) { return depth * V(r); };
  const DiscreteOperator op = build_operator(grid, p, Vd);
  const SpectrumResult sp = negative_spectrum(op, mode, 0.0);
  row.count = sp.count();
  row.riesz_mean = sp.riesz_mean(gamma);
  const double ex = gamma + 0.5 * p.d / p.s;
  row.integral = std::pow(depth, ex) *
                 potential_integral(V, ex, p.d, V.effective_radius(1e-12),
                                    spec);
  const double rhs = c_final * row.integral;
  if (row.riesz_mean == 0.0) {
    row.ratio = 0.0;
    row.pass = true;  // 0 <= rhs trivially
  } else {
    row.ratio = row.riesz_mean / rhs;
    row.pass = row.ratio <= 1.0;
  }
  return row;
}

struct BsCountRow {
  double depth = 0.0;
  int count = 0;
  double bound = 0.0;
  bool pass = false;
};

/// Counting inequality: N(-1, H_s - V) <= K' * int V_+^p.
inline BsCountRow verify_bs_count_instance(const ProfileFunction& V,
                                           double depth, double p_exp,
                                           double k_prime, const FracParams& p,
                                           const GridSpec& grid,
                                           const QuadratureSpec& spec,
                                           SolverMode mode = SolverMode::dense) {
  if (!(p_exp > 0.5 * p.d / p.s))
    throw std::domain_error("verify_bs_count_instance: p > d/2s required");
  BsCountRow row;
  row.depth = depth;
  auto Vd = [&](double r) { return depth * V(r); };
  const DiscreteOperator op = build_operator(grid, p, Vd);
  row.count = negative_spectrum(op, mode, -1.0).count();
  row.bound = k_prime * std::pow(depth, p_exp) *
              potential_integral(V, p_exp, p.d, V.effective_radius(1e-12),
                                 spec);
  row.pass = row.count <= row.bound;
  return row;
}

struct ScalingReport {
  int count_lhs = 0;  // N(-tau, H_s - V)
  int count_rhs = 0;  // N(-1,  H_s - V_tau)
  bool pass = false;
};

/// Scaling identity N(-tau, H_s - V) = N(-1, H_s - V_tau) with
/// V_tau(x) = tau^{-1} V(tau^{-1/2s} x); counts must agree within +-1.
inline ScalingReport verify_scaling(const ProfileFunction& V, double tau,
                                    const FracParams& p, const GridSpec& grid_lhs,
                                    const GridSpec& grid_rhs,
                                    SolverMode mode = SolverMode::dense) {
  if (!(tau > 0.0)) throw std::domain_error("verify_scaling: tau > 0");
  ScalingReport rep;
  const DiscreteOperator op_lhs = build_operator(grid_lhs, p, V);
  rep.count_lhs = negative_spectrum(op_lhs, mode, -tau).count();
  const double scale = std::pow(tau, -0.5 / p.s);
  ProfileFunction v_tau = ProfileFunction::custom(
      [V, tau, scale](double r) { return V(scale * r) / tau; },
      V.support_radius() / scale);
  const DiscreteOperator op_rhs = build_operator(grid_rhs, p, v_tau);
  rep.count_rhs = negative_spectrum(op_rhs, mode, -1.0).count();
  rep.pass = std::abs(rep.count_lhs - rep.count_rhs) <= 1;
  return rep;
}

}  // namespace hlt
