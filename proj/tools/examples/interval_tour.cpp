// Computes every interval type for one small data set.

#include <cstdio>

#include "confint/confint.hpp"

using namespace confint;

namespace {

void print(const Interval& iv) {
  std::printf("%-16s [%9.5f, %9.5f]  level %.4g\n", std::string(method_name(iv.method)).c_str(),
              iv.lower, iv.upper, iv.level);
}

}  // namespace

int main() {
  std::puts("binomial, 7 successes in 40 trials");
  const BinomObservation obs(40, 7);
  for (Method m : kBinomialMethods) print(binom_interval(m, obs, m == Method::lr ? 8.0 : 0.05));

  const Sample x({0.42, 1.37, 0.08, 0.95, 0.61, 2.14, 0.33, 0.79, 0.27, 1.02});

  std::puts("\nmean");
  print(t_interval(x, 0.05));
  print(z_interval(x, 0.05));
  print(lr_support_mean_t(x, 8.0));
  print(lr_support_mean_normal(x, 8.0));

  std::puts("\nexponential rate");
  const MlFit fit = fit_ml(exp_model(), x);
  print(hessian_ci(fit, 0, 0.05));
  const auto rate = [](const Sample& s) { return exp_mle(s); };
  print(jackknife_ci(rate, x, 0.05));
  RngStream rng(kDefaultSeed, 0);
  const BootstrapReplicates reps = boot_distribution(x, rate, 2000, rng);
  print(percentile_interval(reps, 0.05));
  print(basic_interval(reps, 0.05));
  print(bca_interval(reps, x, rate, 0.05));

  std::puts("\nHPD of a Beta(3, 9) posterior");
  print(hpd_interval([](double p) { return beta_quantile(p, 3.0, 9.0); }, 0.1));
}
