#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "confint/error.hpp"
#include "confint/numerics/matrix.hpp"

namespace confint {

struct MinimizeResult {
  std::vector<double> argmin;
  double value = 0.0;
  SquareMatrix hessian;  // symmetrized central-difference estimate at argmin
  bool converged = false;
};

struct MinimizeOptions {
  double xtol = 1e-10;  // simplex diameter, relative to max(1, |x|)
  double ftol = 1e-14;  // spread of simplex values, relative to max(1, |f|)
  int max_iter_per_dim = 5000;
};

template <class F>
concept Objective = requires(F f, std::span<const double> x) {
  { f(x) } -> std::convertible_to<double>;
};

namespace detail {

// +inf marks points outside the objective's domain and is simply rejected by
// the simplex; NaN and -inf are genuine failures.
template <Objective F>
double eval_objective(F& f, std::span<const double> x) {
  const double v = f(x);
  if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
    throw NumericError("minimize: objective returned a non-finite value");
  }
  return v;
}

template <Objective F>
bool nelder_mead(F& f, std::vector<double>& x, double& fx,
                 const MinimizeOptions& opt) {
  const std::size_t dim = x.size();
  std::vector<std::vector<double>> simplex(dim + 1, x);
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    const double step = x[i] != 0.0 ? 0.05 * x[i] : 0.00025;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval_objective(f, simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim);
  std::vector<double> trial(dim);
  std::vector<double> trial2(dim);
  const auto at = [&](double t, std::vector<double>& out) {
    const auto& worst = simplex[order[dim]];
    for (std::size_t j = 0; j < dim; ++j) {
      out[j] = centroid[j] + t * (worst[j] - centroid[j]);
    }
    return eval_objective(f, out);
  };

  const int max_iter = opt.max_iter_per_dim * static_cast<int>(dim);
  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const auto& best = simplex[order[0]];
    const double fbest = values[order[0]];
    double diameter = 0.0;
    double spread = 0.0;
    double scale = 1.0;
    for (double v : best) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        diameter = std::max(diameter, std::fabs(simplex[order[i]][j] - best[j]));
      }
      spread = std::max(spread, std::fabs(values[order[i]] - fbest));
    }
    if (std::isfinite(fbest) && diameter <= opt.xtol * scale &&
        spread <= opt.ftol * std::max(1.0, std::fabs(fbest))) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[order[i]][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const std::size_t worst = order[dim];
    const double fworst = values[worst];
    const double fsecond = values[order[dim - 1]];

    const double fr = at(-1.0, trial);
    if (fr < fbest) {
      const double fe = at(-2.0, trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < fsecond) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    // Contraction, outside if the reflection improved on the worst point.
    const bool outside = fr < fworst;
    const double fc = at(outside ? -0.5 : 0.5, trial2);
    if (fc < (outside ? fr : fworst)) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    const auto pivot = simplex[order[0]];
    for (std::size_t i = 1; i <= dim; ++i) {
      auto& v = simplex[order[i]];
      for (std::size_t j = 0; j < dim; ++j) v[j] = pivot[j] + 0.5 * (v[j] - pivot[j]);
      values[order[i]] = eval_objective(f, v);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  fx = *best_it;
  return converged;
}

}  // namespace detail

/// Central-difference Hessian with step cbrt(eps) * max(1, |x_i|), symmetrized.
template <Objective F>
SquareMatrix fd_hessian(F&& f, std::span<const double> x) {
  const std::size_t dim = x.size();
  const double base_step = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> h(dim);
  for (std::size_t i = 0; i < dim; ++i) h[i] = base_step * std::max(1.0, std::fabs(x[i]));

  std::vector<double> p(x.begin(), x.end());
  const auto eval = [&](std::size_t i, double di, std::size_t j, double dj) {
    p.assign(x.begin(), x.end());
    p[i] += di;
    p[j] += dj;
    return static_cast<double>(f(std::span<const double>(p)));
  };
  p.assign(x.begin(), x.end());
  const double f0 = f(std::span<const double>(p));

  SquareMatrix hess(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double fp = eval(i, h[i], i, 0.0);
    const double fm = eval(i, -h[i], i, 0.0);
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double fpp = eval(i, h[i], j, h[j]);
      const double fpm = eval(i, h[i], j, -h[j]);
      const double fmp = eval(i, -h[i], j, h[j]);
      const double fmm = eval(i, -h[i], j, -h[j]);
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  hess.symmetrize();
  return hess;
}

/// Nelder-Mead simplex descent from x0 (restarted once from its own answer),
/// followed by a finite-difference Hessian at the minimizer.
template <Objective F>
MinimizeResult minimize(F&& f, std::vector<double> x0,
                        const MinimizeOptions& opt = {}) {
  if (x0.empty()) throw DomainError("minimize: empty starting point");
  const double f0 = f(std::span<const double>(x0));
  if (!std::isfinite(f0)) {
    throw DomainError("minimize: objective is not finite at the starting point");
  }

  MinimizeResult result;
  result.argmin = std::move(x0);
  bool converged = detail::nelder_mead(f, result.argmin, result.value, opt);
  if (converged) {
    converged = detail::nelder_mead(f, result.argmin, result.value, opt);
  }
  result.converged = converged;
  result.hessian = fd_hessian(f, result.argmin);
  return result;
}

}  // namespace confint
