#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

// Globally adaptive Gauss-Kronrod 15(7) quadrature on finite intervals plus
// dyadic-block extension to semi-infinite ranges. Singular-endpoint integrable
// integrands are handled by bisection refinement (nodes never touch the
// endpoints).

namespace hlt {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-6;
  int max_subdivisions = 2000;
  enum class Singularity { symmetric_difference, variable_split };
  Singularity singularity_handling = Singularity::variable_split;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 16)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions >= 16");
  }

  QuadratureSpec with_tols(double at, double rt) const {
    QuadratureSpec q = *this;
    q.abs_tol = at;
    q.rel_tol = rt;
    return q;
  }
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace quad_detail {

// QUADPACK dqk15 abscissae/weights on [-1,1].
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
inline void gk15(const F& f, double a, double b, double& result,
                 double& err_est) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * xgk[i]);
    fv[14 - i] = f(c + h * xgk[i]);
  }
  fv[7] = f(c);
  double resk = wgk[7] * fv[7];
  double resg = wg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += wgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += wg[i / 2] * (fv[i] + fv[14 - i]);
  }
  result = resk * h;
  err_est = std::abs((resk - resg) * h);
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace quad_detail

/// Adaptive integral of f over the finite interval [a, b].
template <class F>
inline double integrate(const F& f, double a, double b,
                        const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  using quad_detail::Interval;
  std::priority_queue<Interval> heap;
  Interval root;
  root.a = a;
  root.b = b;
  quad_detail::gk15(f, a, b, root.value, root.error);
  heap.push(root);
  double total = root.value;
  double total_err = root.error;
  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (splits >= spec.max_subdivisions)
      throw QuadratureError(
          "integrate: tolerance unmet after " +
          std::to_string(splits) + " subdivisions (err=" +
          std::to_string(total_err) + ")");
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left, right;
    left.a = worst.a;
    left.b = mid;
    right.a = mid;
    right.b = worst.b;
    quad_detail::gk15(f, left.a, left.b, left.value, left.error);
    quad_detail::gk15(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return total;
}

/// Integral of f over [a, inf): dyadic blocks of doubling width, stopping when
/// two consecutive blocks contribute below tolerance.
template <class F>
inline double integrate_upper_inf(const F& f, double a,
                                  const QuadratureSpec& spec,
                                  double first_width = 1.0) {
  spec.validate();
  double total = 0.0;
  double lo = a;
  double width = first_width;
  int quiet = 0;
  for (int block = 0; block < 80; ++block) {
    const double hi = lo + width;
    const double piece = integrate(f, lo, hi, spec);
    total += piece;
    const double cut = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (std::abs(piece) < cut)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 2) return total;
    lo = hi;
    width *= 2.0;
  }
  throw QuadratureError("integrate_upper_inf: tail did not converge");
}

}  // namespace hlt
