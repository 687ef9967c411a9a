#pragma once

// Command-line front end. `run` parses argv, dispatches and maps failures onto
// exit statuses; the cmd_* functions hold the per-command logic so they can be
// called directly.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "confint/binom.hpp"
#include "confint/bootstrap.hpp"
#include "confint/coverage.hpp"
#include "confint/error.hpp"
#include "confint/mean.hpp"
#include "confint/ml.hpp"
#include "confint/report.hpp"
#include "confint/sample.hpp"

namespace confint::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kNumeric = 4,
};

/// Invalid flag values, reported with exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// One value per line; blank lines and lines starting with '#' are skipped;
/// LF and CRLF line ends are accepted.
inline Sample read_sample(std::istream& in, std::string_view source = "input") {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t");
    const std::string_view token(line.data() + first, last - first + 1);
    const auto v = parse_double(token);
    if (!v) {
      throw InputError(std::string(source) + ": line " + std::to_string(line_no) +
                       ": not a finite number: '" + std::string(token) + "'");
    }
    values.push_back(*v);
  }
  if (values.empty()) throw InputError(std::string(source) + ": no values");
  return Sample(std::move(values));
}

inline Sample read_sample_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  return read_sample(in, path);
}

struct BinomArgs {
  int n = 0;
  int k = 0;
  double alpha = 0.05;
  double k_ratio = 8.0;
  std::vector<std::string> methods;  // empty: all binomial methods
};

struct MeanArgs {
  std::string file;
  double alpha = 0.05;
  double k_ratio = 8.0;
  std::string method = "t";
};

struct BootArgs {
  std::string file;
  double alpha = 0.05;
  int r = kDefaultBootReps;
  std::uint64_t seed = kDefaultSeed;
  std::string estimator = "mean";
  std::string kind = "percentile";
};

namespace detail {

inline void check_alpha_flag(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
}

inline void check_k_ratio_flag(double k_ratio) {
  if (!(k_ratio > 1.0) || !std::isfinite(k_ratio)) {
    throw UsageError("--k-ratio must be > 1");
  }
}

inline Method method_flag(std::string_view name) {
  const auto m = parse_method(name);
  if (!m) throw UsageError("unknown method '" + std::string(name) + "'");
  return *m;
}

}  // namespace detail

inline std::vector<IntervalReport> cmd_ci_binom(const BinomArgs& args) {
  if (args.n < 1) throw UsageError("--n must be >= 1");
  if (args.k < 0 || args.k > args.n) throw UsageError("--k must lie in [0, n]");
  detail::check_alpha_flag(args.alpha);
  detail::check_k_ratio_flag(args.k_ratio);
  std::vector<Method> methods;
  if (args.methods.empty()) {
    methods.assign(kBinomialMethods.begin(), kBinomialMethods.end());
  } else {
    for (const auto& name : args.methods) {
      const Method m = detail::method_flag(name);
      if (!is_binomial_method(m)) {
        throw UsageError("method '" + name + "' does not apply to binomial data");
      }
      methods.push_back(m);
    }
  }
  const BinomObservation obs(args.n, args.k);
  std::vector<IntervalReport> out;
  for (Method m : methods) {
    const double param = m == Method::lr ? args.k_ratio : args.alpha;
    out.push_back(IntervalReport::from(binom_interval(m, obs, param), obs.p_hat(), args.n));
  }
  return out;
}

inline IntervalReport cmd_ci_mean(const MeanArgs& args) {
  detail::check_alpha_flag(args.alpha);
  detail::check_k_ratio_flag(args.k_ratio);
  const Method m = detail::method_flag(args.method);
  const Sample s = read_sample_file(args.file);
  if (s.size() < 2) throw InputError(args.file + ": need at least two values");

  Interval iv;
  switch (m) {
    case Method::t:
      iv = t_interval(s, args.alpha);
      break;
    case Method::z:
      iv = z_interval(s, args.alpha);
      break;
    case Method::lr_t:
      iv = lr_support_mean_t(s, args.k_ratio);
      break;
    case Method::lr_normal:
      iv = lr_support_mean_normal(s, args.k_ratio);
      break;
    case Method::hpd_t:
      iv = hpd_mean(s, args.alpha, Calibration::t);
      break;
    case Method::hpd_normal:
      iv = hpd_mean(s, args.alpha, Calibration::normal);
      break;
    default:
      throw UsageError("method '" + args.method + "' does not apply to a mean");
  }
  return IntervalReport::from(iv, s.mean(), static_cast<std::int64_t>(s.size()));
}

inline IntervalReport cmd_ci_boot(const BootArgs& args, std::ostream& warn) {
  detail::check_alpha_flag(args.alpha);
  if (args.r < 1) throw UsageError("--r must be >= 1");
  if (args.estimator != "mean" && args.estimator != "exp-lambda") {
    throw UsageError("--estimator must be mean or exp-lambda");
  }
  if (args.kind != "percentile" && args.kind != "basic" && args.kind != "bca") {
    throw UsageError("--kind must be percentile, basic or bca");
  }
  if (args.r < kDefaultBootReps) {
    warn << "warning: r = " << args.r << " is below the recommended minimum of "
         << kDefaultBootReps << " bootstrap replications\n";
  }
  const Sample s = read_sample_file(args.file);
  const bool use_mean = args.estimator == "mean";
  const auto estimator = [use_mean](const Sample& x) {
    return use_mean ? x.mean() : exp_mle(x);
  };

  RngStream rng(args.seed, 0);
  const BootstrapReplicates reps = boot_distribution(s, estimator, args.r, rng);
  Interval iv;
  if (args.kind == "percentile") {
    iv = percentile_interval(reps, args.alpha);
  } else if (args.kind == "basic") {
    iv = basic_interval(reps, args.alpha);
  } else {
    iv = bca_interval(reps, s, estimator, args.alpha);
  }
  IntervalReport rep =
      IntervalReport::from(iv, reps.theta_hat, static_cast<std::int64_t>(s.size()));
  rep.r = args.r;
  rep.seed = args.seed;
  return rep;
}

struct CoverageArgs {
  std::string family;
  std::vector<int> n_values;
  std::vector<std::string> methods;  // empty: family default
  double alpha = 0.05;
  double k_ratio = 8.0;
  std::int64_t n_reps = 100000;
  std::int64_t boot_n_reps = 10000;
  int r = kDefaultBootReps;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> true_param;
  std::size_t grid_points = 1001;
  unsigned workers = 0;
  bool correlations = false;
};

inline ExperimentConfig coverage_config(const CoverageArgs& args) {
  ExperimentConfig c;
  if (args.family == "binom-exact") {
    c.family = Family::binom_exact;
  } else if (args.family == "mean-cubic") {
    c.family = Family::mean_cubic;
  } else if (args.family == "exp-ml") {
    c.family = Family::exp_ml;
  } else {
    throw UsageError("unknown family '" + args.family + "'");
  }
  if (args.methods.empty()) {
    switch (c.family) {
      case Family::binom_exact:
        c.methods.assign(kBinomialMethods.begin(), kBinomialMethods.end());
        break;
      case Family::mean_cubic:
        c.methods = {Method::t, Method::z, Method::lr_t, Method::lr_normal};
        break;
      case Family::exp_ml:
        c.methods = {Method::hessian, Method::jackknife};
        break;
    }
  } else {
    for (const auto& name : args.methods) c.methods.push_back(detail::method_flag(name));
  }
  if (args.n_values.empty()) {
    if (c.family == Family::binom_exact) throw UsageError("--n is required");
  } else {
    c.n_values = args.n_values;
  }
  c.n_reps = args.n_reps;
  c.boot_n_reps = args.boot_n_reps;
  c.boot_r = args.r;
  c.alpha = args.alpha;
  c.k_ratio = args.k_ratio;
  c.seed = args.seed;
  c.true_param = args.true_param.value_or(c.family == Family::exp_ml ? 2.0 : 0.75);
  c.grid_points = args.grid_points;
  c.workers = args.workers;

  if (args.n_reps < 1 || args.boot_n_reps < 1) {
    throw UsageError("--n-reps and --boot-n-reps must be >= 1");
  }
  if (args.grid_points < 2) throw UsageError("--grid must be >= 2");
  detail::check_alpha_flag(args.alpha);
  detail::check_k_ratio_flag(args.k_ratio);
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return c;
}

/// Writes the coverage CSV (and optionally the correlation table) to `out`.
inline void cmd_coverage(const CoverageArgs& args, std::ostream& out) {
  const ExperimentConfig config = coverage_config(args);
  switch (config.family) {
    case Family::binom_exact:
      write_coverage_csv(out, run_binom_experiment(config));
      break;
    case Family::mean_cubic:
      write_coverage_csv(out, run_mean_experiment(config));
      break;
    case Family::exp_ml: {
      const auto result = run_exp_experiment(config);
      write_coverage_csv(out, result.curves);
      if (args.correlations) {
        out << '\n';
        write_correlation_csv(out, result.correlations);
      }
      break;
    }
  }
}

struct LengthArgs {
  std::vector<int> n_values;
  double alpha = 0.05;
  double k_ratio = 8.0;
  bool sweep = false;
};

inline void cmd_lengths(const LengthArgs& args, std::ostream& out) {
  if (args.n_values.empty()) throw UsageError("--n is required");
  for (int n : args.n_values) {
    if (n < 1) throw UsageError("--n values must be >= 1");
  }
  detail::check_alpha_flag(args.alpha);
  detail::check_k_ratio_flag(args.k_ratio);
  if (args.sweep) {
    if (args.n_values.size() != 1) throw UsageError("--sweep takes exactly one n");
    write_sweep_csv(out, binom_length_sweep(args.n_values[0], args.alpha, args.k_ratio));
  } else {
    write_length_csv(out, binom_length_curves(args.n_values, args.alpha, args.k_ratio));
  }
}

namespace detail {

inline void print_reports(std::ostream& out, const std::vector<IntervalReport>& reports,
                          bool json, bool as_array) {
  if (json) {
    if (as_array) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << arr.dump(2) << '\n';
    } else {
      out << to_json(reports.front()).dump(2) << '\n';
    }
    return;
  }
  for (const auto& r : reports) out << to_text(r) << '\n';
}

}  // namespace detail

/// Parse and execute one command line. Exit statuses: 0 success, 2 usage
/// error, 3 input-data error, 4 numeric or convergence failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence intervals and their coverage", "confint"};
  app.require_subcommand(1);

  bool json = false;
  BinomArgs binom;
  MeanArgs mean;
  BootArgs boot;
  CoverageArgs cov;
  LengthArgs len;

  auto* ci = app.add_subcommand("ci", "Compute a confidence interval");
  ci->require_subcommand(1);

  auto* ci_binom = ci->add_subcommand("binom", "Interval for a binomial proportion");
  ci_binom->add_option("--n", binom.n, "Number of trials")->required();
  ci_binom->add_option("--k", binom.k, "Number of successes")->required();
  ci_binom->add_option("--alpha", binom.alpha, "Non-coverage probability");
  ci_binom->add_option("--k-ratio", binom.k_ratio, "Likelihood-ratio threshold K");
  ci_binom->add_option("--method", binom.methods, "exact, wilson, wald, lr, hpd")
      ->delimiter(',');
  ci_binom->add_flag("--json", json, "Emit JSON");

  auto* ci_mean = ci->add_subcommand("mean", "Interval for a mean value");
  ci_mean->add_option("--file", mean.file, "One value per line")->required();
  ci_mean->add_option("--alpha", mean.alpha, "Non-coverage probability");
  ci_mean->add_option("--k-ratio", mean.k_ratio, "Likelihood-ratio threshold K");
  ci_mean->add_option("--method", mean.method,
                      "t, z, lr-t, lr-normal, hpd-t, hpd-normal");
  ci_mean->add_flag("--json", json, "Emit JSON");

  auto* ci_boot = ci->add_subcommand("boot", "Bootstrap interval");
  ci_boot->add_option("--file", boot.file, "One value per line")->required();
  ci_boot->add_option("--alpha", boot.alpha, "Non-coverage probability");
  ci_boot->add_option("--r", boot.r, "Bootstrap replications");
  ci_boot->add_option("--seed", boot.seed, "Random seed");
  ci_boot->add_option("--estimator", boot.estimator, "mean or exp-lambda");
  ci_boot->add_option("--kind", boot.kind, "percentile, basic or bca");
  ci_boot->add_flag("--json", json, "Emit JSON");

  auto* coverage = app.add_subcommand("coverage", "Coverage probability as CSV");
  coverage->add_option("family", cov.family, "binom-exact, mean-cubic or exp-ml")
      ->required();
  coverage->add_option("--n", cov.n_values, "Sample size(s)")->delimiter(',');
  coverage->add_option("--method", cov.methods, "Methods to evaluate")->delimiter(',');
  coverage->add_option("--alpha", cov.alpha, "Non-coverage probability");
  coverage->add_option("--k-ratio", cov.k_ratio, "Likelihood-ratio threshold K");
  coverage->add_option("--n-reps", cov.n_reps, "Replications, classical methods");
  coverage->add_option("--boot-n-reps", cov.boot_n_reps,
                       "Replications, bootstrap methods");
  coverage->add_option("--r", cov.r, "Inner bootstrap replications");
  coverage->add_option("--seed", cov.seed, "Random seed");
  coverage->add_option("--true-param", cov.true_param,
                       "True mean (mean-cubic) or rate (exp-ml)");
  coverage->add_option("--grid", cov.grid_points, "Number of p grid points");
  coverage->add_option("--workers", cov.workers, "Worker threads (0: all cores)");
  coverage->add_flag("--correlations", cov.correlations,
                     "Append |lambda_hat - lambda| vs sigma correlations (exp-ml)");

  auto* lengths = app.add_subcommand("lengths", "Binomial interval lengths as CSV");
  lengths->add_option("--n", len.n_values, "Sample size(s)")->delimiter(',')->required();
  lengths->add_option("--alpha", len.alpha, "Non-coverage probability");
  lengths->add_option("--k-ratio", len.k_ratio, "Likelihood-ratio threshold K");
  lengths->add_flag("--sweep", len.sweep, "Length as a function of p_hat for one n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ci_binom->parsed()) {
      detail::print_reports(out, cmd_ci_binom(binom), json, true);
    } else if (ci_mean->parsed()) {
      detail::print_reports(out, {cmd_ci_mean(mean)}, json, false);
    } else if (ci_boot->parsed()) {
      detail::print_reports(out, {cmd_ci_boot(boot, err)}, json, false);
    } else if (coverage->parsed()) {
      cmd_coverage(cov, out);
    } else if (lengths->parsed()) {
      cmd_lengths(len, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    // Data that parsed but does not fit the requested method.
    err << "input error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

/// Convenience overload for in-process callers.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"confint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace confint::cli
