#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace parking {

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double fa, double m, double fm, double b,
                       double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return simpson_recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to an absolute tolerance.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("quadrature bounds must be finite");
  }
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerance must be positive");
  }
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth);
}

}  // namespace parking
