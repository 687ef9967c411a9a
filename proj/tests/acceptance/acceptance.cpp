// End-to-end acceptance checks. Prints one PASS/FAIL line per check and exits
// nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "confint/binom.hpp"
#include "confint/cli.hpp"
#include "confint/coverage.hpp"
#include "confint/hpd.hpp"
#include "confint/mean.hpp"
#include "confint/ml.hpp"
#include "confint/numerics/special.hpp"

using namespace confint;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s  %2d  %s  [%s]\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const CoverageCurve& curve_for(const std::vector<CoverageCurve>& curves, Method m) {
  for (const auto& c : curves) {
    if (c.method == m) return c;
  }
  throw std::logic_error("missing curve");
}

std::size_t index_of(const CoverageCurve& c, double x) {
  return static_cast<std::size_t>(std::find(c.x.begin(), c.x.end(), x) - c.x.begin());
}

// 1: exact coverage of Clopper-Pearson never drops below 1 - alpha.
void clopper_pearson_guarantee() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ec = exact_coverage_binom(Method::exact, 100, 0.05, unit_grid(1001));
  const double secs = seconds_since(t0);
  const double lowest = *std::min_element(ec.curve.coverage.begin(), ec.curve.coverage.end());
  report(1, lowest >= 0.95 && secs < 5.0, "Clopper-Pearson coverage >= 0.95 at n=100",
         fmt("min coverage %.6f over 1001 points, %.2f s (limit 5 s)", lowest, secs));
}

// 2: Wald collapses near the boundary while Wilson stays near nominal.
void wald_pathology() {
  const auto grid = unit_grid(1001);
  const auto wald = exact_coverage_binom(Method::wald, 100, 0.05, grid).curve;
  double wald_min = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.0 && grid[i] < 0.1) wald_min = std::min(wald_min, wald.coverage[i]);
  }
  const std::vector<double> at{0.001};
  const double wald_001 = exact_coverage_binom(Method::wald, 100, 0.05, at).curve.coverage[0];
  const auto wil = exact_coverage_binom(Method::wilson, 100, 0.05, grid).curve;
  double wlo = 1.0, whi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= 0.1 && grid[i] <= 0.9) {
      wlo = std::min(wlo, wil.coverage[i]);
      whi = std::max(whi, wil.coverage[i]);
    }
  }
  const bool ok = wald_min < 0.90 && wald_001 < 0.20 && wlo >= 0.90 && whi <= 0.99;
  report(2, ok, "Wald pathology at n=100, Wilson within [0.90, 0.99] on [0.1, 0.9]",
         fmt("wald min on (0,0.1) %.4f < 0.90; wald(0.001) %.4f < 0.20; wilson range [%.4f, %.4f]",
             wald_min, wald_001, wlo, whi));
}

// 3: near the boundary HPD coverage does not dip as low as Wilson's.
void hpd_boundary() {
  std::vector<double> grid;
  for (int i = 0; i <= 5000; ++i) grid.push_back(0.05 * i / 5000.0);
  const auto hpd = exact_coverage_binom(Method::hpd, 100, 0.05, grid).curve.coverage;
  const auto wil = exact_coverage_binom(Method::wilson, 100, 0.05, grid).curve.coverage;
  const double hmin = *std::min_element(hpd.begin(), hpd.end());
  const double wmin = *std::min_element(wil.begin(), wil.end());
  report(3, hmin > wmin, "HPD min coverage on [0, 0.05] exceeds Wilson's at n=100",
         fmt("hpd %.6f vs wilson %.6f (5001 points)", hmin, wmin));
}

// 4: maximal lengths and the k=2 length comparison at n=100.
void length_ordering() {
  double maxlen[3] = {0, 0, 0};
  const Method ms[3] = {Method::exact, Method::wald, Method::wilson};
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k <= 100; ++k) {
      maxlen[m] = std::max(maxlen[m], binom_interval(ms[m], BinomObservation(100, k), 0.05).length());
    }
  }
  const double wald2 = wald(BinomObservation(100, 2), 0.05).length();
  const double wil2 = wilson(BinomObservation(100, 2), 0.05).length();
  const bool ok = maxlen[0] > maxlen[1] && maxlen[1] > maxlen[2] && wald2 < wil2;
  report(4, ok, "maxlen exact > wald > wilson, len(wald) < len(wilson) at k=2",
         fmt("max %.6f > %.6f > %.6f; k=2: %.6f < %.6f", maxlen[0], maxlen[1], maxlen[2], wald2,
             wil2));
}

// 5: K=8 support half-width over the z half-width.
void support_constant() {
  const Sample s({0.3, 1.8, 2.2, -0.7, 1.1, 0.4, 0.9});
  const double ratio = lr_support_mean_normal(s, 8.0).length() / z_interval(s, 0.05).length();
  const double want = 2.0393 / 1.95996;
  report(5, std::fabs(ratio - want) < 1e-4, "support (K=8) / z half-width ratio",
         fmt("ratio %.8f, target %.8f, |diff| %.2e < 1e-4", ratio, want, std::fabs(ratio - want)));
}

// 6: mean coverage for the 3x^2 density.
void mean_coverage() {
  ExperimentConfig c;
  c.family = Family::mean_cubic;
  c.methods = {Method::t, Method::boot_percentile, Method::boot_basic, Method::boot_bca};
  c.n_values = {10, 20, 50};
  c.n_reps = 100000;
  c.boot_n_reps = 10000;
  c.boot_r = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  const auto curves = run_mean_experiment(c);
  const double secs = seconds_since(t0);

  const auto& t = curve_for(curves, Method::t);
  bool band = true;
  std::string tdetail;
  for (double n : {10.0, 20.0, 50.0}) {
    const double cov = t.coverage[index_of(t, n)];
    band = band && std::fabs(cov - 0.95) <= 0.01;
    tdetail += fmt("t(n=%g) %.4f%s; ", n, cov, std::fabs(cov - 0.95) <= 0.01 ? "" : " OUT");
  }
  const auto at10 = [&](Method m) {
    const auto& cv = curve_for(curves, m);
    return cv.coverage[index_of(cv, 10.0)];
  };
  const double basic = at10(Method::boot_basic);
  const double perc = at10(Method::boot_percentile);
  const double bca = at10(Method::boot_bca);
  const double t10 = at10(Method::t);
  const bool order = basic < perc && perc <= std::max(bca, t10);
  report(6, band && order && secs < 600.0,
         "mean coverage: t within 0.95 +- 0.01, basic < percentile <= max(bca, t) at n=10",
         tdetail + fmt("n=10 basic %.4f, percentile %.4f, bca %.4f, t %.4f; %.1f s (limit 600 s)",
                       basic, perc, bca, t10, secs));
}

// 7: exponential rate, n=20, lambda=2.
void exponential_ml() {
  ExperimentConfig c;
  c.family = Family::exp_ml;
  c.methods = {Method::hessian, Method::jackknife, Method::boot_percentile, Method::boot_basic,
               Method::boot_bca};
  c.n_values = {20};
  c.n_reps = 100000;
  c.boot_n_reps = 10000;
  c.boot_r = 1000;
  c.true_param = 2.0;
  const auto r = run_exp_experiment(c);
  const double hm = curve_for(r.curves, Method::hessian).coverage[0];
  const double jk = curve_for(r.curves, Method::jackknife).coverage[0];
  const double bca = curve_for(r.curves, Method::boot_bca).coverage[0];
  bool boot_low = true;
  std::string bdetail;
  for (Method m : {Method::boot_percentile, Method::boot_basic, Method::boot_bca}) {
    const auto& cv = curve_for(r.curves, m);
    const double limit = 0.95 - 4.0 * cv.mc_stderr[0];
    boot_low = boot_low && cv.coverage[0] < limit;
    bdetail += fmt("%s %.4f < %.4f; ", std::string(method_name(m)).c_str(), cv.coverage[0], limit);
  }
  const double chm = r.correlations[0].hessian;
  const double cjk = r.correlations[0].jackknife;
  const bool ok = hm >= jk && jk >= bca && boot_low && std::fabs(chm - 0.60) < 0.05 &&
                  std::fabs(cjk - 0.40) < 0.05;
  report(7, ok, "exponential ML at n=20: hessian >= jackknife >= bca, bootstrap below nominal",
         fmt("hessian %.4f, jackknife %.4f, bca %.4f; ", hm, jk, bca) + bdetail +
             fmt("corr(sigma_hm) %.4f, corr(sigma_jk) %.4f", chm, cjk));
}

// 8: numerical ML fit against the closed-form rate and standard deviation.
void ml_closed_form() {
  std::mt19937_64 gen(8);
  double worst_theta = 0.0, worst_sigma = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = i % 2 == 0 ? 10 : 100;
    const double lambda = 0.2 + 5.0 * std::generate_canonical<double, 53>(gen);
    std::exponential_distribution<double> d(lambda);
    std::vector<double> v(n);
    for (double& x : v) x = d(gen);
    const Sample s(v);
    const double lam = 1.0 / s.mean();
    const MlFit fit = fit_ml(exp_model(), s);
    worst_theta = std::max(worst_theta, std::fabs(fit.theta_hat[0] - lam) / lam);
    const double sig = lam / std::sqrt(static_cast<double>(n));
    worst_sigma = std::max(worst_sigma, std::fabs(fit.sigma[0] - sig) / sig);
  }
  report(8, worst_theta <= 1e-5 && worst_sigma <= 1e-3,
         "numerical ML matches the exponential closed forms (100 samples)",
         fmt("max rel err rate %.2e (<= 1e-5), sigma %.2e (<= 1e-3)", worst_theta, worst_sigma));
}

// 9: jackknife of the mean equals the standard error.
void jackknife_identity() {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> size(2, 200);
  std::normal_distribution<double> d(3.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v(static_cast<std::size_t>(size(gen)));
    for (double& x : v) x = d(gen);
    const Sample s(v);
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double se = std::sqrt(ss / (v.size() - 1.0) / v.size());
    const double jk = jackknife_sigma([](const Sample& x) { return x.mean(); }, s);
    worst = std::max(worst, std::fabs(jk - se) / se);
  }
  report(9, worst <= 1e-12, "jackknife sigma of the mean equals sqrt(s^2/n) (1000 samples)",
         fmt("max rel err %.2e (<= 1e-12)", worst));
}

// 10: HPD search against exhaustive grid minimization for Beta(k+1, n-k+1).
void hpd_oracle() {
  double worst = 0.0;
  for (int n : {5, 10, 20}) {
    for (int k = 0; k <= n; ++k) {
      const double a = k + 1.0, b = n - k + 1.0;
      const auto q = [&](double p) { return beta_quantile(p, a, b); };
      const Interval iv = hpd_interval(q, 0.05);
      double best_w = INFINITY, lo = 0.0, hi = 0.0;
      for (int i = 0; i < 10000; ++i) {
        const double beta = 0.05 * i / 9999.0;
        const double l = q(beta), u = q(std::min(1.0, beta + 0.95));
        if (u - l < best_w) {
          best_w = u - l;
          lo = l;
          hi = u;
        }
      }
      worst = std::max({worst, std::fabs(iv.lower - lo), std::fabs(iv.upper - hi)});
    }
  }
  report(10, worst <= 1e-3, "HPD endpoints match a 1e4-point grid search, n in {5,10,20}",
         fmt("max endpoint difference %.2e (<= 1e-3)", worst));
}

// 11: DKW band for the two samplers.
void sampler_dkw() {
  const std::size_t n = 100000;
  const double eps = std::sqrt(std::log(2.0 / 1e-6) / (2.0 * n));
  const auto ks = [](std::vector<double> v, const std::function<double(double)>& cdf) {
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double f = cdf(v[i]);
      d = std::max({d, (i + 1) / m - f, f - i / m});
    }
    return d;
  };
  RngStream r1(kDefaultSeed, 1), r2(kDefaultSeed, 2);
  const Sample c = sample_cubic(n, r1);
  const Sample e = sample_exponential(n, 2.0, r2);
  const double dc = ks({c.begin(), c.end()}, [](double x) { return x * x * x; });
  const double de = ks({e.begin(), e.end()}, [](double x) { return -std::expm1(-2.0 * x); });
  report(11, dc < eps && de < eps, "sampler empirical CDFs inside the DKW band (1e5 draws)",
         fmt("cubic %.5f, exponential %.5f, band %.5f", dc, de, eps));
}

// 12: repeated CLI invocations produce identical bytes.
void cli_determinism() {
  const std::string data =
      (std::filesystem::temp_directory_path() / "confint_acceptance_data.txt").string();
  std::ofstream(data) << "0.31\n1.7\n0.02\n2.9\n0.44\n0.8\n1.1\n0.05\n0.6\n3.3\n";
  const std::vector<std::vector<std::string>> cases{
      {"ci", "binom", "--n", "100", "--k", "7"},
      {"ci", "binom", "--n", "100", "--k", "7", "--json"},
      {"ci", "mean", "--file", data, "--method", "lr-t"},
      {"ci", "boot", "--file", data, "--kind", "bca"},
      {"ci", "boot", "--file", data, "--kind", "basic", "--seed", "17", "--estimator",
       "exp-lambda", "--json"},
      {"coverage", "mean-cubic", "--n", "5,10", "--n-reps", "5000", "--boot-n-reps", "200",
       "--r", "300", "--method", "t,lr-t,boot-percentile,boot-bca"},
      {"coverage", "exp-ml", "--n", "10,20", "--n-reps", "5000", "--correlations", "--seed",
       "3"},
      {"coverage", "binom-exact", "--n", "40", "--method", "exact,hpd"},
      {"lengths", "--n", "10,100"},
  };
  int identical = 0;
  for (const auto& args : cases) {
    std::ostringstream o1, e1, o2, e2;
    const int c1 = cli::run(args, o1, e1);
    auto args2 = args;
    if (args[0] == "coverage") {
      args2.insert(args2.end(), {"--workers", "3"});
    }
    const int c2 = cli::run(args2, o2, e2);
    if (c1 == 0 && c2 == 0 && o1.str() == o2.str() && !o1.str().empty()) ++identical;
  }
  report(12, identical == static_cast<int>(cases.size()),
         "repeated CLI invocations give byte-identical output",
         fmt("%d of %zu invocations identical (coverage reruns use 3 workers)", identical,
             cases.size()));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks{
      clopper_pearson_guarantee, wald_pathology, hpd_boundary,  length_ordering,
      support_constant,          mean_coverage,  exponential_ml, ml_closed_form,
      jackknife_identity,        hpd_oracle,     sampler_dkw,   cli_determinism};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, "raised an exception", e.what());
    }
  }
  std::printf("%d of %zu checks failed\n", g_failures, checks.size());
  return g_failures == 0 ? 0 : 1;
}
