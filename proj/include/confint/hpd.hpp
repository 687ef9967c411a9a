#pragma once

// Highest-posterior-density interval of a unimodal posterior, found from its
// quantile function alone.
//
// Every credible interval of mass 1 - alpha has the form [q(b), q(b + 1 - alpha)]
// with lower-tail mass b in [0, alpha]. The HPD interval is the shortest of
// these; for a smooth unimodal density the width minimizer has equal density
// at both ends. Minimizing the width over b also covers posteriors whose mode
// sits on the boundary of the support, where the equal-density condition has
// no interior solution.

#include <cmath>
#include <concepts>
#include <limits>
#include <utility>

#include "confint/error.hpp"
#include "confint/interval.hpp"

namespace confint {

template <class Q>
concept QuantileFn = requires(Q q, double p) {
  { q(p) } -> std::convertible_to<double>;
};

struct HpdResult {
  Interval interval;
  double lower_tail_mass = 0.0;  // b*
};

inline constexpr double kHpdMassTol = 1e-10;

template <QuantileFn Q>
HpdResult hpd_search(Q&& quantile, double alpha, Method tag = Method::hpd) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("hpd_interval: alpha must lie in (0, 1)");
  }

  // Spot check: quantile must be nondecreasing.
  constexpr int checks = 50;
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < checks; ++i) {
    const double v = quantile((i + 0.5) / checks);
    if (std::isnan(v) || v < prev) {
      throw DomainError("hpd_interval: quantile function is not monotone");
    }
    prev = v;
  }

  const double mass = 1.0 - alpha;
  const auto width = [&](double b) {
    return static_cast<double>(quantile(b + mass)) - static_cast<double>(quantile(b));
  };

  // Golden-section search for the minimizing lower-tail mass on [0, alpha].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = alpha;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = width(x1);
  double f2 = width(x2);
  int iter = 0;
  while (hi - lo > kHpdMassTol) {
    if (++iter > 500) throw NumericError("hpd_interval: search did not converge");
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = width(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = width(x2);
    }
  }
  double best = f1 <= f2 ? x1 : x2;
  double best_width = std::fmin(f1, f2);

  // A density that peaks at the edge of its support is minimized at b = 0 or
  // b = alpha exactly; the interior search only approaches those points.
  // Quantile functions on unbounded supports may reject 0 and 1.
  const auto edge_width = [&](double b) {
    try {
      const double upper = b == alpha ? quantile(1.0) : quantile(b + mass);
      return upper - static_cast<double>(quantile(b));
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  if (const double w0 = edge_width(0.0); w0 <= best_width) {
    best = 0.0;
    best_width = w0;
  }
  if (const double wa = edge_width(alpha); wa < best_width) {
    best = alpha;
    best_width = wa;
  }
  if (!std::isfinite(best_width)) {
    throw NumericError("hpd_interval: no finite-width credible interval");
  }

  const double lower = quantile(best);
  const double upper = best == alpha ? quantile(1.0) : quantile(best + mass);
  return {Interval{lower, upper, tag, mass}, best};
}

/// HPD interval [q(b*), q(b* + 1 - alpha)] with b* the width-minimizing
/// lower-tail mass.
template <QuantileFn Q>
Interval hpd_interval(Q&& quantile, double alpha, Method tag = Method::hpd) {
  return hpd_search(std::forward<Q>(quantile), alpha, tag).interval;
}

}  // namespace confint
