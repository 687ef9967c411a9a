#pragma once

// Intervals for the mean of a sample: frequentist (t and normal calibration),
// likelihood-ratio support, and flat-prior HPD. All are x_bar +- half-width.

#include <cmath>

#include "confint/error.hpp"
#include "confint/interval.hpp"
#include "confint/numerics/special.hpp"
#include "confint/sample.hpp"

namespace confint {

enum class Calibration { t, normal };

/// Above this size the t-based support interval uses the normal-theory form;
/// both agree asymptotically and the t form loses digits.
inline constexpr std::size_t kSupportNormalCrossover = 1000;

namespace detail {

inline void check_mean_sample(const Sample& s) {
  if (s.size() < 2) throw DomainError("mean intervals need at least two values");
}

inline Interval around_mean(const Sample& s, double half, Method m, double level) {
  const double c = s.mean();
  return {c - half, c + half, m, level};
}

inline double standard_error(const Sample& s) {
  return std::sqrt(s.variance() / static_cast<double>(s.size()));
}

}  // namespace detail

/// x_bar +- t_{1-alpha/2}(n-1) sqrt(s^2/n).
inline Interval t_interval(const Sample& s, double alpha) {
  detail::check_mean_sample(s);
  detail::check_alpha(alpha);
  const double crit = t_quantile(1.0 - 0.5 * alpha, static_cast<double>(s.size() - 1));
  return detail::around_mean(s, crit * detail::standard_error(s), Method::t,
                             1.0 - alpha);
}

/// x_bar +- z_{1-alpha/2} sqrt(s^2/n).
inline Interval z_interval(const Sample& s, double alpha) {
  detail::check_mean_sample(s);
  detail::check_alpha(alpha);
  const double crit = normal_quantile(1.0 - 0.5 * alpha);
  return detail::around_mean(s, crit * detail::standard_error(s), Method::z,
                             1.0 - alpha);
}

/// Support interval for normal-theory likelihood: x_bar +- sqrt(2 s^2 ln K / n).
inline Interval lr_support_mean_normal(const Sample& s, double k_ratio = 8.0) {
  detail::check_mean_sample(s);
  detail::check_k_ratio(k_ratio);
  const double n = static_cast<double>(s.size());
  const double half = std::sqrt(2.0 * s.variance() / n * std::log(k_ratio));
  return detail::around_mean(s, half, Method::lr_normal, k_ratio);
}

/// Support interval for the t likelihood:
/// x_bar +- sqrt((K^{2/n} - 1) s^2 (n - 1) / n), with K^{2/n} - 1 via expm1.
/// Large samples use the normal-theory half-width.
inline Interval lr_support_mean_t(const Sample& s, double k_ratio = 8.0) {
  detail::check_mean_sample(s);
  detail::check_k_ratio(k_ratio);
  if (s.size() > kSupportNormalCrossover) {
    Interval iv = lr_support_mean_normal(s, k_ratio);
    iv.method = Method::lr_t;
    return iv;
  }
  const double n = static_cast<double>(s.size());
  const double growth = std::expm1(2.0 * std::log(k_ratio) / n);
  const double half = std::sqrt(growth * s.variance() * (n - 1.0) / n);
  return detail::around_mean(s, half, Method::lr_t, k_ratio);
}

/// Flat-prior HPD interval for a location parameter. The posterior is the
/// symmetric t (or normal) density centred at x_bar, so the HPD interval is the
/// frequentist interval of the same calibration.
inline Interval hpd_mean(const Sample& s, double alpha, Calibration cal) {
  Interval iv = cal == Calibration::t ? t_interval(s, alpha) : z_interval(s, alpha);
  iv.method = cal == Calibration::t ? Method::hpd_t : Method::hpd_normal;
  return iv;
}

}  // namespace confint
