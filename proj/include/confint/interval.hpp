#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <utility>

#include "confint/error.hpp"

namespace confint {

/// Construction method that produced an interval.
enum class Method {
  exact,  // Clopper-Pearson
  wilson,
  wald,
  lr,  // binomial likelihood-ratio support interval
  hpd,
  t,
  z,
  lr_t,
  lr_normal,
  hpd_t,
  hpd_normal,
  hessian,
  jackknife,
  boot_percentile,
  boot_basic,
  boot_bca,
};

inline constexpr std::array<std::pair<Method, std::string_view>, 16>
    kMethodNames{{
        {Method::exact, "exact"},
        {Method::wilson, "wilson"},
        {Method::wald, "wald"},
        {Method::lr, "lr"},
        {Method::hpd, "hpd"},
        {Method::t, "t"},
        {Method::z, "z"},
        {Method::lr_t, "lr-t"},
        {Method::lr_normal, "lr-normal"},
        {Method::hpd_t, "hpd-t"},
        {Method::hpd_normal, "hpd-normal"},
        {Method::hessian, "hessian"},
        {Method::jackknife, "jackknife"},
        {Method::boot_percentile, "boot-percentile"},
        {Method::boot_basic, "boot-basic"},
        {Method::boot_bca, "boot-bca"},
    }};

constexpr std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

constexpr std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, tag] : kMethodNames) {
    if (tag == name) return method;
  }
  return std::nullopt;
}

/// Closed interval [lower, upper]. `level` is the nominal coverage 1 - alpha,
/// or the likelihood-ratio threshold K for support intervals.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  Method method = Method::exact;
  double level = 0.0;

  double length() const { return upper - lower; }
  double center() const { return 0.5 * (lower + upper); }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

inline void check_k_ratio(double k_ratio) {
  if (!(k_ratio >= 1.0) || !std::isfinite(k_ratio)) {
    throw DomainError("likelihood-ratio threshold K must be >= 1");
  }
}

}  // namespace detail

}  // namespace confint
