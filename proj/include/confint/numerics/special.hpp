#pragma once

// Special functions and the distribution functions built on them: log-gamma,
// regularized incomplete beta, binomial / normal / Student-t / beta CDFs and
// quantiles.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "confint/error.hpp"
#include "confint/numerics/roots.hpp"

namespace confint {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms; reflection below 1/2).
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
  constexpr double g = 7.0;
  constexpr std::array<double, 9> coef{
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  const double xm1 = x - 1.0;
  double series = coef[0];
  for (int i = 1; i < 9; ++i) series += coef[i] / (xm1 + i);
  const double t = xm1 + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) -
         t + std::log(series);
}

inline double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

namespace detail {

// Continued fraction for I_x(a, b), modified Lentz evaluation.
inline double inc_beta_cf(double a, double b, double x) {
  constexpr int max_iter = 20000;
  constexpr double eps = 1e-16;
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw NumericError("reg_inc_beta: continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("reg_inc_beta: shape parameters must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  // The fraction converges fast only below the mean; use the mirror above.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::inc_beta_cf(a, b, x) / a;
  }
  return 1.0 - front * detail::inc_beta_cf(b, a, 1.0 - x) / b;
}

/// Binomial probability mass P(K = k), K ~ Binomial(n, p).
inline double binom_pmf(int k, int n, double p) {
  if (n < 1 || k < 0 || k > n) throw DomainError("binom_pmf: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binom_pmf: p outside [0, 1]");
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double log_choose =
      log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

/// Binomial CDF P(K <= k) = 1 - I_p(k + 1, n - k).
inline double binom_cdf(int k, int n, double p) {
  if (n < 1 || k < 0 || k > n) throw DomainError("binom_cdf: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binom_cdf: p outside [0, 1]");
  if (k == n) return 1.0;
  return 1.0 - reg_inc_beta(k + 1.0, static_cast<double>(n - k), p);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace detail {

// Lower-tail standard normal quantile for 0 < q <= 0.5: Acklam's rational
// approximation followed by one Halley step against erfc.
inline double normal_quantile_lower(double q) {
  constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
  constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
  constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double q_low = 0.02425;

  double x;
  if (q < q_low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else {
    const double r = q - 0.5;
    const double s = r * r;
    x = (((((a[0] * s + a[1]) * s + a[2]) * s + a[3]) * s + a[4]) * s + a[5]) * r /
        (((((b[0] * s + b[1]) * s + b[2]) * s + b[3]) * s + b[4]) * s + 1.0);
  }
  const double e = normal_cdf(x) - q;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace detail

inline double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("normal_quantile: probability must lie in (0, 1)");
  }
  if (q > 0.5) return -detail::normal_quantile_lower(1.0 - q);
  return detail::normal_quantile_lower(q);
}

namespace detail {

inline void check_df(double df) {
  if (!(df >= 1.0) || !std::isfinite(df)) {
    throw DomainError("Student t: degrees of freedom must be >= 1");
  }
}

// P(T > x) for x >= 0.
inline double t_upper_tail(double x, double df) {
  if (x == 0.0) return 0.5;
  return 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + x * x));
}

}  // namespace detail

inline double t_cdf(double x, double df) {
  detail::check_df(df);
  if (std::isnan(x)) throw DomainError("t_cdf: NaN argument");
  if (x >= 0.0) return 1.0 - detail::t_upper_tail(x, df);
  return detail::t_upper_tail(-x, df);
}

/// Student-t quantile, by root-solving the tail probability.
inline double t_quantile(double q, double df) {
  detail::check_df(df);
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("t_quantile: probability must lie in (0, 1)");
  }
  if (q == 0.5) return 0.0;
  const bool upper = q > 0.5;
  const double tail = upper ? 1.0 - q : q;

  double hi = std::max(1.0, 2.0 * std::fabs(normal_quantile(tail)));
  for (int i = 0; detail::t_upper_tail(hi, df) > tail; ++i) {
    if (i > 2000) throw NumericError("t_quantile: cannot bracket quantile");
    hi *= 2.0;
  }
  const double x = find_root(
      [&](double t) { return detail::t_upper_tail(t, df) - tail; },
      Bracket(0.0, hi), 1e-15);
  return upper ? x : -x;
}

/// Beta(a, b) quantile: the x in [0, 1] with I_x(a, b) = q.
inline double beta_quantile(double q, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("beta_quantile: shape parameters must be positive");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("beta_quantile: probability must lie in [0, 1]");
  }
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  return find_root([&](double x) { return reg_inc_beta(a, b, x) - q; },
                   Bracket(0.0, 1.0), std::numeric_limits<double>::min());
}

}  // namespace confint
