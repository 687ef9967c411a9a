#pragma once

// Coverage-probability and length evaluation: exact enumeration for the
// binomial methods, Monte-Carlo simulation for the mean of the 3x^2 density and
// the exponential rate estimator.
//
// Replication i at sample size n draws from RngStream(seed, stream_id(n, i)),
// so every method sees the same data at a given (n, i) and results do not
// depend on the number of worker threads. Replications are processed in fixed
// chunks whose partial sums are combined in chunk order.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "confint/binom.hpp"
#include "confint/bootstrap.hpp"
#include "confint/coverage_curve.hpp"
#include "confint/error.hpp"
#include "confint/interval.hpp"
#include "confint/mean.hpp"
#include "confint/ml.hpp"
#include "confint/numerics/rng.hpp"
#include "confint/sample.hpp"

namespace confint {

inline constexpr std::uint64_t kDefaultSeed = 20170612;

/// n draws of U^{1/3}: the inverse-CDF sampler for f(x) = 3x^2 on [0, 1].
inline Sample sample_cubic(std::size_t n, RngStream& rng) {
  if (n == 0) throw DomainError("sample_cubic: n must be >= 1");
  std::vector<double> v(n);
  for (double& x : v) x = std::cbrt(rng.uniform());
  return Sample(std::move(v));
}

/// n draws of -ln(1 - U) / lambda.
inline Sample sample_exponential(std::size_t n, double lambda, RngStream& rng) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("sample_exponential: lambda must be > 0");
  }
  if (n == 0) throw DomainError("sample_exponential: n must be >= 1");
  std::vector<double> v(n);
  for (double& x : v) x = -std::log1p(-rng.uniform()) / lambda;
  return Sample(std::move(v));
}

enum class Family { binom_exact, mean_cubic, exp_ml };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::binom_exact:
      return "binom-exact";
    case Family::mean_cubic:
      return "mean-cubic";
    case Family::exp_ml:
      return "exp-ml";
  }
  return "unknown";
}

inline bool is_bootstrap_method(Method m) {
  return m == Method::boot_percentile || m == Method::boot_basic ||
         m == Method::boot_bca;
}

inline bool family_supports(Family f, Method m) {
  switch (f) {
    case Family::binom_exact:
      return is_binomial_method(m);
    case Family::mean_cubic:
      return m == Method::t || m == Method::z || m == Method::lr_t ||
             m == Method::lr_normal || is_bootstrap_method(m);
    case Family::exp_ml:
      return m == Method::hessian || m == Method::jackknife || is_bootstrap_method(m);
  }
  return false;
}

struct ExperimentConfig {
  Family family = Family::mean_cubic;
  std::vector<Method> methods;
  std::vector<int> n_values{5, 10, 20, 50, 100};
  std::int64_t n_reps = 100000;      // outer replications, classical methods
  std::int64_t boot_n_reps = 10000;  // outer replications, bootstrap methods
  int boot_r = kDefaultBootReps;     // inner bootstrap replications
  double alpha = 0.05;
  double k_ratio = 8.0;
  std::uint64_t seed = kDefaultSeed;
  double true_param = 0.75;  // cubic mean 3/4, or the exponential rate
  std::size_t grid_points = 1001;  // binomial p grid
  unsigned workers = 0;            // 0: hardware concurrency

  void validate() const {
    if (methods.empty()) throw DomainError("experiment: no methods given");
    for (Method m : methods) {
      if (!family_supports(family, m)) {
        throw DomainError("experiment: method " + std::string(method_name(m)) +
                          " is not available for family " +
                          std::string(family_name(family)));
      }
    }
    if (n_values.empty()) throw DomainError("experiment: no sample sizes given");
    const int min_n = family == Family::binom_exact ? 1 : 2;
    for (int n : n_values) {
      if (n < min_n) {
        throw DomainError("experiment: sample sizes must be >= " +
                          std::to_string(min_n));
      }
    }
    if (n_reps < 1 || boot_n_reps < 1) {
      throw DomainError("experiment: replication count must be >= 1");
    }
    if (boot_r < 2) throw DomainError("experiment: bootstrap needs r >= 2");
    detail::check_alpha(alpha);
    detail::check_k_ratio(k_ratio);
    if (!std::isfinite(true_param)) throw DomainError("experiment: bad true value");
    if (family == Family::exp_ml && !(true_param > 0.0)) {
      throw DomainError("experiment: exponential rate must be > 0");
    }
  }
};

inline std::uint64_t stream_id(int n, std::int64_t rep) {
  return (static_cast<std::uint64_t>(n) << 40) ^ static_cast<std::uint64_t>(rep);
}

namespace detail {

struct Tally {
  std::int64_t trials = 0;
  std::int64_t covered = 0;
  double length_sum = 0.0;

  void add(const Interval& iv, double truth) {
    ++trials;
    if (iv.contains(truth)) ++covered;
    length_sum += iv.length();
  }
  void merge(const Tally& o) {
    trials += o.trials;
    covered += o.covered;
    length_sum += o.length_sum;
  }
};

/// Running sums for a Pearson correlation.
struct CorrelationSums {
  std::int64_t count = 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;

  void add(double x, double y) {
    ++count;
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  void merge(const CorrelationSums& o) {
    count += o.count;
    sx += o.sx;
    sy += o.sy;
    sxx += o.sxx;
    syy += o.syy;
    sxy += o.sxy;
  }
  double correlation() const {
    const double n = static_cast<double>(count);
    const double cov = sxy - sx * sy / n;
    const double vx = sxx - sx * sx / n;
    const double vy = syy - sy * sy / n;
    if (!(vx > 0.0) || !(vy > 0.0)) return 0.0;
    return cov / std::sqrt(vx * vy);
  }
};

struct SimAccumulator {
  std::vector<Tally> tallies;  // parallel to config.methods
  CorrelationSums corr_hm;
  CorrelationSums corr_jk;

  void merge(const SimAccumulator& o) {
    for (std::size_t i = 0; i < tallies.size(); ++i) tallies[i].merge(o.tallies[i]);
    corr_hm.merge(o.corr_hm);
    corr_jk.merge(o.corr_jk);
  }
};

inline constexpr std::int64_t kChunk = 256;

/// Runs `rep(index, acc)` for index in [0, total) across worker threads and
/// returns the chunk-ordered sum. The first failing chunk's exception is
/// rethrown.
template <class Acc, class RepFn>
Acc simulate(std::int64_t total, unsigned workers, const Acc& zero, RepFn&& rep) {
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<Acc> partial(static_cast<std::size_t>(chunks), zero);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  std::atomic<std::int64_t> next{0};

  const auto work = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::int64_t end = std::min(total, (c + 1) * kChunk);
        for (std::int64_t i = c * kChunk; i < end; ++i) rep(i, partial[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  unsigned count = workers == 0 ? std::thread::hardware_concurrency() : workers;
  count = std::clamp<unsigned>(count, 1u,
                               static_cast<unsigned>(std::max<std::int64_t>(chunks, 1)));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  }

  Acc result = zero;
  for (std::size_t c = 0; c < partial.size(); ++c) {
    if (errors[c]) std::rethrow_exception(errors[c]);
    result.merge(partial[c]);
  }
  return result;
}

inline void append_point(CoverageCurve& curve, double x, const Tally& t) {
  const double n = static_cast<double>(t.trials);
  const double cov = static_cast<double>(t.covered) / n;
  curve.x.push_back(x);
  curve.coverage.push_back(cov);
  curve.mean_length.push_back(t.length_sum / n);
  curve.mc_stderr.push_back(std::sqrt(cov * (1.0 - cov) / n));
  curve.n_reps = t.trials;
}

inline std::vector<CoverageCurve> empty_curves(const ExperimentConfig& config) {
  std::vector<CoverageCurve> curves(config.methods.size());
  for (std::size_t m = 0; m < curves.size(); ++m) curves[m].method = config.methods[m];
  return curves;
}

inline bool needs_bootstrap(const ExperimentConfig& config) {
  return std::any_of(config.methods.begin(), config.methods.end(), is_bootstrap_method);
}

inline std::int64_t total_reps(const ExperimentConfig& config) {
  return needs_bootstrap(config) ? std::max(config.n_reps, config.boot_n_reps)
                                 : config.n_reps;
}

// Shared handling of the three bootstrap intervals for one simulated sample.
template <ScalarEstimator E>
void tally_bootstrap(const ExperimentConfig& config, const Sample& x, E&& estimator,
                     RngStream& rng, double truth, SimAccumulator& acc) {
  const BootstrapReplicates reps = boot_distribution(x, estimator, config.boot_r, rng);
  std::vector<double> delete_one;
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    switch (config.methods[m]) {
      case Method::boot_percentile:
        acc.tallies[m].add(percentile_interval(reps, config.alpha), truth);
        break;
      case Method::boot_basic:
        acc.tallies[m].add(basic_interval(reps, config.alpha), truth);
        break;
      case Method::boot_bca:
        if (delete_one.empty()) delete_one = jackknife_values(estimator, x);
        acc.tallies[m].add(bca_interval_from(reps, delete_one, config.alpha), truth);
        break;
      default:
        break;
    }
  }
}

}  // namespace detail

/// Monte-Carlo coverage of mean intervals for samples from f(x) = 3x^2; one
/// curve per method with the sample sizes as abscissa.
inline std::vector<CoverageCurve> run_mean_experiment(const ExperimentConfig& config) {
  if (config.family != Family::mean_cubic) {
    throw DomainError("run_mean_experiment: family must be mean-cubic");
  }
  config.validate();
  const double truth = config.true_param;
  const bool any_boot = detail::needs_bootstrap(config);
  const auto mean_of = [](const Sample& s) { return s.mean(); };

  auto curves = detail::empty_curves(config);
  for (int n : config.n_values) {
    const double level = 1.0 - config.alpha;
    const double t_crit = t_quantile(1.0 - 0.5 * config.alpha, n - 1.0);
    const double z_crit = normal_quantile(1.0 - 0.5 * config.alpha);

    detail::SimAccumulator zero;
    zero.tallies.resize(config.methods.size());
    const auto rep = [&](std::int64_t i, detail::SimAccumulator& acc) {
      RngStream rng(config.seed, stream_id(n, i));
      const Sample x = sample_cubic(static_cast<std::size_t>(n), rng);
      if (i < config.n_reps) {
        const double se = detail::standard_error(x);
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
          switch (config.methods[m]) {
            case Method::t:
              acc.tallies[m].add(detail::around_mean(x, t_crit * se, Method::t, level),
                                 truth);
              break;
            case Method::z:
              acc.tallies[m].add(detail::around_mean(x, z_crit * se, Method::z, level),
                                 truth);
              break;
            case Method::lr_t:
              acc.tallies[m].add(lr_support_mean_t(x, config.k_ratio), truth);
              break;
            case Method::lr_normal:
              acc.tallies[m].add(lr_support_mean_normal(x, config.k_ratio), truth);
              break;
            default:
              break;
          }
        }
      }
      if (any_boot && i < config.boot_n_reps) {
        detail::tally_bootstrap(config, x, mean_of, rng, truth, acc);
      }
    };
    const auto total = detail::simulate(detail::total_reps(config), config.workers,
                                        zero, rep);
    for (std::size_t m = 0; m < curves.size(); ++m) {
      detail::append_point(curves[m], n, total.tallies[m]);
    }
  }
  return curves;
}

/// Pearson correlation of |lambda_hat - lambda| with each standard-deviation
/// estimate, per sample size.
struct CorrelationRow {
  int n = 0;
  double hessian = 0.0;
  double jackknife = 0.0;
};

struct ExpExperimentResult {
  std::vector<CoverageCurve> curves;
  std::vector<CorrelationRow> correlations;
};

/// Monte-Carlo coverage of intervals for the exponential rate lambda.
inline ExpExperimentResult run_exp_experiment(const ExperimentConfig& config) {
  if (config.family != Family::exp_ml) {
    throw DomainError("run_exp_experiment: family must be exp-ml");
  }
  config.validate();
  const double lambda = config.true_param;
  const bool any_boot = detail::needs_bootstrap(config);
  const auto mle = [](const Sample& s) { return exp_mle(s); };

  ExpExperimentResult result;
  result.curves = detail::empty_curves(config);
  for (int n : config.n_values) {
    detail::SimAccumulator zero;
    zero.tallies.resize(config.methods.size());
    const auto rep = [&](std::int64_t i, detail::SimAccumulator& acc) {
      RngStream rng(config.seed, stream_id(n, i));
      const Sample x = sample_exponential(static_cast<std::size_t>(n), lambda, rng);
      const double lambda_hat = exp_mle(x);
      if (i < config.n_reps) {
        const double sigma_hm = exp_sigma_hm(lambda_hat, x.size());
        const double sigma_jk = jackknife_sigma_from(jackknife_values(mle, x));
        const double dev = std::fabs(lambda_hat - lambda);
        acc.corr_hm.add(dev, sigma_hm);
        acc.corr_jk.add(dev, sigma_jk);
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
          if (config.methods[m] == Method::hessian) {
            acc.tallies[m].add(
                normal_interval(lambda_hat, sigma_hm, config.alpha, Method::hessian),
                lambda);
          } else if (config.methods[m] == Method::jackknife) {
            acc.tallies[m].add(
                normal_interval(lambda_hat, sigma_jk, config.alpha, Method::jackknife),
                lambda);
          }
        }
      }
      if (any_boot && i < config.boot_n_reps) {
        detail::tally_bootstrap(config, x, mle, rng, lambda, acc);
      }
    };
    const auto total = detail::simulate(detail::total_reps(config), config.workers,
                                        zero, rep);
    for (std::size_t m = 0; m < result.curves.size(); ++m) {
      detail::append_point(result.curves[m], n, total.tallies[m]);
    }
    result.correlations.push_back(
        {n, total.corr_hm.correlation(), total.corr_jk.correlation()});
  }
  return result;
}

/// Exact binomial coverage curves over the p grid; needs a single n.
inline std::vector<CoverageCurve> run_binom_experiment(const ExperimentConfig& config) {
  if (config.family != Family::binom_exact) {
    throw DomainError("run_binom_experiment: family must be binom-exact");
  }
  config.validate();
  if (config.n_values.size() != 1) {
    throw DomainError("binom-exact coverage takes exactly one n");
  }
  const auto grid = unit_grid(config.grid_points);
  std::vector<CoverageCurve> curves;
  for (Method m : config.methods) {
    const double param = m == Method::lr ? config.k_ratio : config.alpha;
    curves.push_back(exact_coverage_binom(m, config.n_values[0], param, grid).curve);
  }
  return curves;
}

inline constexpr std::array<Method, 5> kBinomialMethods{
    Method::exact, Method::wilson, Method::wald, Method::lr, Method::hpd};

struct LengthRow {
  int n = 0;
  Method method = Method::exact;
  double max_length = 0.0;
  int argmax_k = 0;
};

/// Maximum interval length over k = 0..n for every binomial method and each n.
inline std::vector<LengthRow> binom_length_curves(const std::vector<int>& n_values,
                                                  double alpha, double k_ratio) {
  std::vector<LengthRow> rows;
  for (int n : n_values) {
    if (n < 1) throw DomainError("binom_length_curves: n must be >= 1");
    for (Method m : kBinomialMethods) {
      const double param = m == Method::lr ? k_ratio : alpha;
      LengthRow row{n, m, -1.0, 0};
      for (int k = 0; k <= n; ++k) {
        const double len = binom_interval(m, BinomObservation(n, k), param).length();
        if (len > row.max_length) {
          row.max_length = len;
          row.argmax_k = k;
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

struct SweepRow {
  double p_hat = 0.0;
  Method method = Method::exact;
  double length = 0.0;
};

/// Interval length as a function of p_hat = k/n for a fixed n.
inline std::vector<SweepRow> binom_length_sweep(int n, double alpha, double k_ratio) {
  if (n < 1) throw DomainError("binom_length_sweep: n must be >= 1");
  std::vector<SweepRow> rows;
  for (Method m : kBinomialMethods) {
    const double param = m == Method::lr ? k_ratio : alpha;
    for (int k = 0; k <= n; ++k) {
      const BinomObservation obs(n, k);
      rows.push_back({obs.p_hat(), m, binom_interval(m, obs, param).length()});
    }
  }
  return rows;
}

}  // namespace confint
