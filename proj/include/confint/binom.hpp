#pragma once

// Confidence intervals for a binomial proportion and their exact coverage.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "confint/coverage_curve.hpp"
#include "confint/error.hpp"
#include "confint/hpd.hpp"
#include "confint/interval.hpp"
#include "confint/numerics/roots.hpp"
#include "confint/numerics/special.hpp"

namespace confint {

/// k successes in n trials, 0 <= k <= n.
struct BinomObservation {
  int n;
  int k;

  BinomObservation(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw DomainError("binomial: n must be >= 1");
    if (k < 0 || k > n) throw DomainError("binomial: k must lie in [0, n]");
  }

  double p_hat() const { return static_cast<double>(k) / n; }
};

namespace detail {

inline constexpr double kBinomRootTol = 1e-14;

inline Interval clamp_unit(Interval iv) {
  iv.lower = std::clamp(iv.lower, 0.0, 1.0);
  iv.upper = std::clamp(iv.upper, 0.0, 1.0);
  return iv;
}

}  // namespace detail

/// Clopper-Pearson ("exact") interval from the two binomial tail equations.
inline Interval clopper_pearson(BinomObservation obs, double alpha) {
  detail::check_alpha(alpha);
  const auto [n, k] = obs;
  const double level = 1.0 - alpha;
  const double half = 0.5 * alpha;
  if (k == 0) return {0.0, 1.0 - std::pow(half, 1.0 / n), Method::exact, level};
  if (k == n) return {std::pow(half, 1.0 / n), 1.0, Method::exact, level};

  // P(K >= k | p_l) = alpha/2 and P(K <= k | p_u) = alpha/2.
  const double lower = find_root(
      [&](double p) { return 1.0 - binom_cdf(k - 1, n, p) - half; },
      Bracket(0.0, 1.0), detail::kBinomRootTol);
  const double upper = find_root(
      [&](double p) { return binom_cdf(k, n, p) - half; }, Bracket(0.0, 1.0),
      detail::kBinomRootTol);
  return {lower, upper, Method::exact, level};
}

/// Wilson score interval, clamped to [0, 1].
inline Interval wilson(BinomObservation obs, double alpha) {
  detail::check_alpha(alpha);
  const double n = obs.n;
  const double p = obs.p_hat();
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval iv{(center - half) / denom, (center + half) / denom, Method::wilson,
              1.0 - alpha};
  if (obs.k == 0) iv.lower = 0.0;
  if (obs.k == obs.n) iv.upper = 1.0;
  return detail::clamp_unit(iv);
}

/// Wald interval p_hat +- z sqrt(p_hat (1 - p_hat) / n), clamped to [0, 1].
inline Interval wald(BinomObservation obs, double alpha) {
  detail::check_alpha(alpha);
  const double p = obs.p_hat();
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const double half = z * std::sqrt(p * (1.0 - p) / obs.n);
  return detail::clamp_unit({p - half, p + half, Method::wald, 1.0 - alpha});
}

/// ln(L(p) / L(p_hat)) for the binomial likelihood p^k (1 - p)^(n - k).
inline double binom_log_lr(BinomObservation obs, double p) {
  const double p_hat = obs.p_hat();
  double r = 0.0;
  if (obs.k > 0) r += obs.k * (std::log(p) - std::log(p_hat));
  if (obs.k < obs.n) {
    r += (obs.n - obs.k) * (std::log1p(-p) - std::log1p(-p_hat));
  }
  return r;
}

/// Likelihood-ratio support interval {p : L(p) / L(p_hat) >= 1/K}.
inline Interval lr_support_binom(BinomObservation obs, double k_ratio = 8.0) {
  detail::check_k_ratio(k_ratio);
  const double p_hat = obs.p_hat();
  const double threshold = 1.0 / k_ratio;
  // Ratio minus threshold; exp of the log ratio stays finite at p = 0 and 1.
  const auto excess = [&](double p) {
    return std::exp(binom_log_lr(obs, p)) - threshold;
  };
  double lower = 0.0;
  double upper = 1.0;
  if (obs.k > 0) {
    lower = find_root(excess, Bracket(0.0, p_hat), detail::kBinomRootTol);
  }
  if (obs.k < obs.n) {
    upper = find_root(excess, Bracket(p_hat, 1.0), detail::kBinomRootTol);
  }
  return {lower, upper, Method::lr, k_ratio};
}

/// HPD interval of the flat-prior posterior Beta(k + 1, n - k + 1).
inline Interval hpd_binom(BinomObservation obs, double alpha) {
  detail::check_alpha(alpha);
  const double a = obs.k + 1.0;
  const double b = obs.n - obs.k + 1.0;
  return detail::clamp_unit(hpd_interval(
      [a, b](double q) { return beta_quantile(q, a, b); }, alpha, Method::hpd));
}

inline bool is_binomial_method(Method m) {
  return m == Method::exact || m == Method::wilson || m == Method::wald ||
         m == Method::lr || m == Method::hpd;
}

/// Dispatch by tag. `param` is alpha, or K for Method::lr.
inline Interval binom_interval(Method method, BinomObservation obs, double param) {
  switch (method) {
    case Method::exact:
      return clopper_pearson(obs, param);
    case Method::wilson:
      return wilson(obs, param);
    case Method::wald:
      return wald(obs, param);
    case Method::lr:
      return lr_support_binom(obs, param);
    case Method::hpd:
      return hpd_binom(obs, param);
    default:
      throw DomainError("not a binomial interval method: " +
                        std::string(method_name(method)));
  }
}

/// `points` equally spaced values from 0 to 1 inclusive.
inline std::vector<double> unit_grid(std::size_t points = 1001) {
  if (points < 2) throw DomainError("grid needs at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = 1.0;
  return grid;
}

struct ExactCoverage {
  CoverageCurve curve;
  std::vector<Interval> intervals;  // indexed by k = 0..n
};

/// Exact coverage over a grid of true p: for every k the interval is built
/// once, then P_cov(p) sums the binomial probabilities of the k whose closed
/// interval contains p. Mean length is the pmf-weighted interval length.
inline ExactCoverage exact_coverage_binom(Method method, int n, double param,
                                          std::span<const double> p_grid) {
  if (n < 1) throw DomainError("exact_coverage_binom: n must be >= 1");
  ExactCoverage out;
  out.intervals.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    out.intervals.push_back(binom_interval(method, BinomObservation(n, k), param));
  }

  std::vector<double> log_choose(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    log_choose[k] = log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
  }

  CoverageCurve& curve = out.curve;
  curve.method = method;
  curve.n_reps = 0;
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("exact_coverage_binom: grid values must lie in [0, 1]");
    }
    double cov = 0.0;
    double len = 0.0;
    for (int k = 0; k <= n; ++k) {
      double pmf;
      if (p == 0.0) {
        pmf = k == 0 ? 1.0 : 0.0;
      } else if (p == 1.0) {
        pmf = k == n ? 1.0 : 0.0;
      } else {
        pmf = std::exp(log_choose[k] + k * std::log(p) + (n - k) * std::log1p(-p));
      }
      const Interval& iv = out.intervals[k];
      if (iv.contains(p)) cov += pmf;
      len += pmf * iv.length();
    }
    curve.x.push_back(p);
    curve.coverage.push_back(std::min(cov, 1.0));
    curve.mean_length.push_back(len);
    curve.mc_stderr.push_back(0.0);
  }
  return out;
}

}  // namespace confint
