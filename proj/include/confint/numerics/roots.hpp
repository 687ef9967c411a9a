#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <utility>

#include "confint/error.hpp"

namespace confint {

/// Search interval for a scalar root. Requires lo < hi.
struct Bracket {
  double lo;
  double hi;

  Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw DomainError("bracket requires lo < hi");
  }
};

inline constexpr double kDefaultRootTol = 1e-10;

/// Brent's method: inverse quadratic interpolation and secant steps, falling
/// back to bisection so the bracket always shrinks. Returns a point inside
/// `bracket` whose enclosing bracket is no wider than `tol`.
template <std::invocable<double> F>
double find_root(F&& f, Bracket bracket, double tol = kDefaultRootTol,
                 int max_iter = 300) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) {
    throw NumericError("find_root: function is NaN at a bracket end");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("find_root: function has the same sign at both ends");
  }

  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb) &&
        std::isfinite(fa) && std::isfinite(fc)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::fabs(d) > tol1) {
      b += d;
    } else {
      b += (xm > 0.0 ? tol1 : -tol1);
    }
    fb = f(b);
    if (std::isnan(fb)) throw NumericError("find_root: function returned NaN");
  }
  throw NumericError("find_root: iteration limit exceeded");
}

}  // namespace confint
