#pragma once

// Non-parametric bootstrap and the percentile, basic and BCa intervals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "confint/error.hpp"
#include "confint/interval.hpp"
#include "confint/ml.hpp"
#include "confint/numerics/rng.hpp"
#include "confint/numerics/special.hpp"
#include "confint/sample.hpp"

namespace confint {

inline constexpr int kDefaultBootReps = 1000;

/// Estimate on the original sample plus estimates on r resamples, in the
/// order they were generated.
struct BootstrapReplicates {
  double theta_hat = 0.0;
  std::vector<double> replicates;

  std::size_t r() const { return replicates.size(); }
};

/// Fill `out` with n draws with replacement from `sample`.
inline void resample_into(const Sample& sample, RngStream& rng, std::span<double> out) {
  const std::uint64_t n = sample.size();
  for (double& v : out) v = sample[static_cast<std::size_t>(rng.choose(n))];
}

inline Sample resample(const Sample& sample, RngStream& rng) {
  std::vector<double> out(sample.size());
  resample_into(sample, rng, out);
  return Sample(std::move(out));
}

template <ScalarEstimator E>
BootstrapReplicates boot_distribution(const Sample& sample, E&& estimator, int r,
                                      RngStream& rng) {
  if (r < 1) throw DomainError("bootstrap: replication count must be >= 1");
  BootstrapReplicates reps;
  reps.theta_hat = estimator(sample);
  reps.replicates.resize(static_cast<std::size_t>(r));
  SampleBuffer buffer(sample.size());
  for (std::size_t i = 0; i < reps.replicates.size(); ++i) {
    resample_into(sample, rng, buffer.values());
    try {
      reps.replicates[i] = estimator(buffer.sample());
    } catch (const std::exception& e) {
      throw EstimatorError(i, e.what());
    }
  }
  return reps;
}

/// Order statistic of rank ceil((r + 1) q), clamped to [1, r]. `sorted` must
/// be ascending.
inline double replicate_quantile(std::span<const double> sorted, double q) {
  const std::size_t r = sorted.size();
  if (r == 0) throw DomainError("replicate_quantile: no replicates");
  // Absorb representation error so that e.g. 1000 * 0.025 ranks as 25.
  const double pos = static_cast<double>(r + 1) * q;
  double rank = std::ceil(pos - 1e-9 * std::max(1.0, pos));
  rank = std::clamp(rank, 1.0, static_cast<double>(r));
  return sorted[static_cast<std::size_t>(rank) - 1];
}

namespace detail {

inline std::vector<double> sorted_replicates(const BootstrapReplicates& reps) {
  if (reps.r() < 1) throw DomainError("bootstrap interval needs r >= 1");
  std::vector<double> s = reps.replicates;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace detail

/// [Q*(alpha/2), Q*(1 - alpha/2)].
inline Interval percentile_interval(const BootstrapReplicates& reps, double alpha) {
  detail::check_alpha(alpha);
  const auto sorted = detail::sorted_replicates(reps);
  return {replicate_quantile(sorted, 0.5 * alpha),
          replicate_quantile(sorted, 1.0 - 0.5 * alpha), Method::boot_percentile,
          1.0 - alpha};
}

/// Percentile interval reflected at theta_hat.
inline Interval basic_interval(const BootstrapReplicates& reps, double alpha) {
  Interval p = percentile_interval(reps, alpha);
  return {2.0 * reps.theta_hat - p.upper, 2.0 * reps.theta_hat - p.lower,
          Method::boot_basic, 1.0 - alpha};
}

struct BcaParams {
  double z0 = 0.0;            // bias correction
  double acceleration = 0.0;  // a
};

/// z0 from the fraction of replicates below theta_hat (ties count half).
inline double bca_bias_correction(const BootstrapReplicates& reps) {
  double below = 0.0;
  for (double v : reps.replicates) {
    if (v < reps.theta_hat) {
      below += 1.0;
    } else if (v == reps.theta_hat) {
      below += 0.5;
    }
  }
  const double frac = below / static_cast<double>(reps.r());
  if (frac <= 0.0 || frac >= 1.0) {
    throw DegenerateError(
        "BCa: every bootstrap replicate lies on one side of the estimate, so "
        "the bias correction is infinite");
  }
  return normal_quantile(frac);
}

/// a = sum d^3 / (6 (sum d^2)^{3/2}), d_i = theta_(.) - theta_(i); 0 when the
/// jackknife values do not vary.
inline double bca_acceleration(std::span<const double> delete_one) {
  const double mean = Sample::shifted_mean(delete_one);
  double s2 = 0.0;
  double s3 = 0.0;
  for (double v : delete_one) {
    const double d = mean - v;
    s2 += d * d;
    s3 += d * d * d;
  }
  if (s2 == 0.0) return 0.0;
  return s3 / (6.0 * std::pow(s2, 1.5));
}

/// BCa interval from precomputed replicates and delete-one estimates.
inline Interval bca_interval_from(const BootstrapReplicates& reps,
                                  std::span<const double> delete_one, double alpha) {
  detail::check_alpha(alpha);
  const auto sorted = detail::sorted_replicates(reps);
  const double z0 = bca_bias_correction(reps);
  const double a = bca_acceleration(delete_one);
  const auto adjusted = [&](double tail) {
    const double zt = z0 + normal_quantile(tail);
    const double denom = 1.0 - a * zt;
    if (!(denom > 0.0)) {
      throw DegenerateError("BCa: acceleration too large for the requested level");
    }
    return normal_cdf(z0 + zt / denom);
  };
  return {replicate_quantile(sorted, adjusted(0.5 * alpha)),
          replicate_quantile(sorted, adjusted(1.0 - 0.5 * alpha)), Method::boot_bca,
          1.0 - alpha};
}

/// Bias-corrected and accelerated interval; acceleration from the jackknife.
template <ScalarEstimator E>
Interval bca_interval(const BootstrapReplicates& reps, const Sample& sample,
                      E&& estimator, double alpha) {
  if (sample.size() < 2) throw DomainError("BCa needs at least two observations");
  return bca_interval_from(reps, jackknife_values(estimator, sample), alpha);
}

}  // namespace confint
