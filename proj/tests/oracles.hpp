#pragma once

// Independent reference values for the test suite. Everything here is
// computed through Boost.Math or brute-force composite quadrature, never
// through the library under test.

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>

namespace oracles {

inline double gamma(double x) { return boost::math::tgamma(x); }
inline double log_gamma(double x) { return boost::math::lgamma(x); }
inline double digamma(double x) { return boost::math::digamma(x); }
inline double beta(double a, double b) { return boost::math::beta(a, b); }
inline double exp_int_e1(double x) { return boost::math::expint(1, x); }

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// Simpson with the substitution t = e^u mapping (0, inf) to a finite
/// window [exp(lo), exp(hi)].
inline double simpson_log(const std::function<double(double)>& f, double lo,
                          double hi, int n) {
  return simpson([&](double u) { const double t = std::exp(u);
                                 return t * f(t); },
                 lo, hi, n);
}

}  // namespace oracles
