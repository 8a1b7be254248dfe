#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hlt {

struct ProbePoint {
  double x;
  double value;
};

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
  bool converged = false;
  std::vector<ProbePoint> trace;
};

/// Derivative-free golden-section minimization on [lo, hi].
/// Every evaluation is recorded in the probe trace.
template <class F>
inline MinimizeResult golden_section(const F& f, double lo, double hi,
                                     double x_tol, int max_iter = 200) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section: lo < hi");
  MinimizeResult res;
  auto eval = [&](double x) {
    const double v = f(x);
    res.trace.push_back({x, v});
    return v;
  };
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  res.converged = (b - a) <= x_tol;
  if (fc < fd) {
    res.x = c;
    res.value = fc;
  } else {
    res.x = d;
    res.value = fd;
  }
  return res;
}

/// Coarse scan of f on an n-point log-spaced grid of [lo, hi] (lo > 0);
/// returns the grid minimizer with the full probe trace.
template <class F>
inline MinimizeResult log_grid_scan(const F& f, double lo, double hi, int n) {
  if (!(0.0 < lo && lo < hi) || n < 2)
    throw std::invalid_argument("log_grid_scan: need 0 < lo < hi, n >= 2");
  MinimizeResult res;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(llo + (lhi - llo) * i / (n - 1));
    const double v = f(x);
    res.trace.push_back({x, v});
    if (i == 0 || v < res.value) {
      res.x = x;
      res.value = v;
    }
  }
  res.converged = true;
  return res;
}

}  // namespace hlt
