#pragma once

// Maximum-likelihood estimation with two routes to the estimator's standard
// deviation: the inverted Hessian of the log-likelihood and the delete-one
// jackknife.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "confint/error.hpp"
#include "confint/interval.hpp"
#include "confint/numerics/matrix.hpp"
#include "confint/numerics/minimize.hpp"
#include "confint/numerics/special.hpp"
#include "confint/sample.hpp"

namespace confint {

/// Log-likelihood l(theta) = sum log f_theta(x_i). Outside the parameter
/// domain `loglik` must return -infinity.
struct LogLikModel {
  std::size_t dim = 1;
  std::function<double(std::span<const double>, const Sample&)> loglik;
  std::function<std::vector<double>(const Sample&)> start;
};

struct MlFit {
  std::vector<double> theta_hat;
  std::vector<double> sigma;  // sqrt of the covariance diagonal
  SquareMatrix covariance;
  double loglik = 0.0;
};

/// Maximize the log-likelihood numerically; covariance is the inverse of the
/// Hessian of -l at the maximum.
inline MlFit fit_ml(const LogLikModel& model, const Sample& sample) {
  if (model.dim < 1 || !model.loglik || !model.start) {
    throw DomainError("fit_ml: incomplete model");
  }
  std::vector<double> x0 = model.start(sample);
  if (x0.size() != model.dim) throw DomainError("fit_ml: start has wrong dimension");

  const auto neg_loglik = [&](std::span<const double> theta) {
    return -model.loglik(theta, sample);
  };
  MinimizeResult r = minimize(neg_loglik, std::move(x0));
  if (!r.converged) throw FitError("fit_ml: optimizer did not converge");
  if (!r.hessian.all_finite() || !r.hessian.positive_definite()) {
    throw CurvatureError(
        "fit_ml: Hessian of -loglik is not positive definite at the optimum");
  }

  MlFit fit;
  fit.theta_hat = std::move(r.argmin);
  fit.loglik = -r.value;
  fit.covariance = r.hessian.inverse();
  fit.covariance.symmetrize();
  fit.sigma.resize(model.dim);
  for (std::size_t i = 0; i < model.dim; ++i) {
    const double var = fit.covariance(i, i);
    if (!(var >= 0.0)) throw CurvatureError("fit_ml: negative variance");
    fit.sigma[i] = std::sqrt(var);
  }
  return fit;
}

/// estimate +- z_{1-alpha/2} sigma.
inline Interval normal_interval(double estimate, double sigma, double alpha,
                                Method tag) {
  detail::check_alpha(alpha);
  const double half = normal_quantile(1.0 - 0.5 * alpha) * sigma;
  return {estimate - half, estimate + half, tag, 1.0 - alpha};
}

inline Interval hessian_ci(const MlFit& fit, std::size_t component, double alpha) {
  if (component >= fit.theta_hat.size() || component >= fit.sigma.size()) {
    throw DomainError("hessian_ci: component index out of range");
  }
  return normal_interval(fit.theta_hat[component], fit.sigma[component], alpha,
                         Method::hessian);
}

template <class E>
concept ScalarEstimator = requires(E e, const Sample& s) {
  { e(s) } -> std::convertible_to<double>;
};

template <class E>
concept VectorEstimator = requires(E e, const Sample& s) {
  { e(s) } -> std::convertible_to<std::vector<double>>;
};

/// Delete-one estimates theta_(i), i = 0..n-1.
template <ScalarEstimator E>
std::vector<double> jackknife_values(E&& estimator, const Sample& sample) {
  if (sample.size() < 2) throw DomainError("jackknife needs at least two values");
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    try {
      out[i] = estimator(sample.without(i));
    } catch (const std::exception& e) {
      throw EstimatorError(i, e.what());
    }
  }
  return out;
}

/// sqrt((n - 1)/n * sum (theta_(i) - theta_(.))^2) for given delete-one values.
inline double jackknife_sigma_from(std::span<const double> delete_one) {
  const double n = static_cast<double>(delete_one.size());
  const double mean = Sample::shifted_mean(delete_one);
  double ss = 0.0;
  for (double v : delete_one) ss += (v - mean) * (v - mean);
  return std::sqrt((n - 1.0) / n * ss);
}

template <ScalarEstimator E>
double jackknife_sigma(E&& estimator, const Sample& sample) {
  return jackknife_sigma_from(jackknife_values(estimator, sample));
}

/// Per-component jackknife standard deviations for a vector estimator.
template <VectorEstimator E>
std::vector<double> jackknife_sigmas(E&& estimator, const Sample& sample) {
  if (sample.size() < 2) throw DomainError("jackknife needs at least two values");
  std::vector<std::vector<double>> est(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    try {
      est[i] = estimator(sample.without(i));
    } catch (const std::exception& e) {
      throw EstimatorError(i, e.what());
    }
    if (est[i].size() != est[0].size()) {
      throw EstimatorError(i, "estimator changed dimension");
    }
  }
  std::vector<double> sigmas(est[0].size());
  std::vector<double> column(sample.size());
  for (std::size_t c = 0; c < sigmas.size(); ++c) {
    for (std::size_t i = 0; i < sample.size(); ++i) column[i] = est[i][c];
    sigmas[c] = jackknife_sigma_from(column);
  }
  return sigmas;
}

template <ScalarEstimator E>
Interval jackknife_ci(E&& estimator, const Sample& sample, double alpha) {
  const double estimate = estimator(sample);
  return normal_interval(estimate, jackknife_sigma(estimator, sample), alpha,
                         Method::jackknife);
}

// Exponential distribution f(x) = lambda exp(-lambda x).

namespace detail {

inline void check_exponential_data(const Sample& s) {
  for (double v : s) {
    if (v < 0.0) throw DomainError("exponential model: data must be >= 0");
  }
  if (!(s.mean() > 0.0)) throw DomainError("exponential model: mean must be > 0");
}

}  // namespace detail

/// lambda_hat = 1 / x_bar.
inline double exp_mle(const Sample& s) {
  detail::check_exponential_data(s);
  return 1.0 / s.mean();
}

/// Hessian-based standard deviation lambda_hat / sqrt(n).
inline double exp_sigma_hm(double lambda_hat, std::size_t n) {
  if (!(lambda_hat > 0.0) || n == 0) {
    throw DomainError("exp_sigma_hm: need lambda_hat > 0 and n >= 1");
  }
  return lambda_hat / std::sqrt(static_cast<double>(n));
}

/// l(lambda) = n ln(lambda) - lambda sum x_i. Starts from ln 2 / median, a
/// robust guess that differs from the ML solution.
inline LogLikModel exp_model() {
  LogLikModel m;
  m.dim = 1;
  m.loglik = [](std::span<const double> theta, const Sample& s) {
    const double lambda = theta[0];
    if (!(lambda > 0.0)) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(s.size()) * std::log(lambda) - lambda * s.sum();
  };
  m.start = [](const Sample& s) {
    detail::check_exponential_data(s);
    std::vector<double> v(s.begin(), s.end());
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    const double median = v[v.size() / 2];
    return std::vector<double>{median > 0.0 ? std::numbers::ln2 / median
                                            : 1.0 / s.mean()};
  };
  return m;
}

/// Normal distribution with theta = (mu, sigma^2).
inline LogLikModel normal_model() {
  LogLikModel m;
  m.dim = 2;
  m.loglik = [](std::span<const double> theta, const Sample& s) {
    const double mu = theta[0];
    const double var = theta[1];
    if (!(var > 0.0)) return -std::numeric_limits<double>::infinity();
    double ss = 0.0;
    for (double v : s) ss += (v - mu) * (v - mu);
    const double n = static_cast<double>(s.size());
    return -0.5 * n * std::log(2.0 * std::numbers::pi * var) - ss / (2.0 * var);
  };
  m.start = [](const Sample& s) {
    std::vector<double> v(s.begin(), s.end());
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    const double var = s.size() > 1 ? s.variance() : 1.0;
    return std::vector<double>{v[v.size() / 2], var > 0.0 ? var : 1.0};
  };
  return m;
}

}  // namespace confint
