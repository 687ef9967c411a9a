#pragma once

// Text, CSV and JSON renderings of intervals and coverage tables. Numbers are
// written with std::to_chars, which ignores the process locale.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "confint/coverage.hpp"
#include "confint/coverage_curve.hpp"
#include "confint/error.hpp"
#include "confint/interval.hpp"

namespace confint {

/// Six significant digits, %g style.
inline std::string format_sig6(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

/// Shortest representation that parses back to the same double.
inline std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Whole-string numeric parse; rejects trailing junk and non-finite values.
inline std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

struct IntervalReport {
  Method method = Method::exact;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;  // 1 - alpha, or K for support intervals
  double point_estimate = 0.0;
  std::int64_t n = 0;
  std::optional<std::int64_t> r;        // bootstrap replications
  std::optional<std::uint64_t> seed;    // bootstrap seed

  static IntervalReport from(const Interval& iv, double point_estimate, std::int64_t n) {
    return {iv.method, iv.lower, iv.upper, iv.level, point_estimate, n, {}, {}};
  }

  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};

/// `method lower upper`
inline std::string to_text(const IntervalReport& r) {
  return std::string(method_name(r.method)) + " " + format_sig6(r.lower) + " " +
         format_sig6(r.upper);
}

inline nlohmann::ordered_json to_json(const IntervalReport& r) {
  nlohmann::ordered_json j;
  j["method"] = method_name(r.method);
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["level"] = r.level;
  j["point_estimate"] = r.point_estimate;
  j["n"] = r.n;
  if (r.r) j["r"] = *r.r;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

inline IntervalReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    IntervalReport r;
    const auto m = parse_method(j.at("method").get<std::string>());
    if (!m) throw InputError("unknown method tag in report");
    r.method = *m;
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    r.level = j.at("level").get<double>();
    r.point_estimate = j.at("point_estimate").get<double>();
    r.n = j.at("n").get<std::int64_t>();
    if (j.contains("r")) r.r = j.at("r").get<std::int64_t>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed interval report: ") + e.what());
  }
}

inline constexpr std::string_view kReportCsvHeader =
    "method,lower,upper,level,point_estimate,n";

/// Full-precision CSV row matching kReportCsvHeader.
inline std::string to_csv_row(const IntervalReport& r) {
  return std::string(method_name(r.method)) + "," + format_exact(r.lower) + "," +
         format_exact(r.upper) + "," + format_exact(r.level) + "," +
         format_exact(r.point_estimate) + "," + std::to_string(r.n);
}

inline IntervalReport report_from_csv_row(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = row.find(',', start);
    fields.push_back(row.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 6) throw InputError("report row must have six fields");
  const auto method = parse_method(fields[0]);
  const auto lower = parse_double(fields[1]);
  const auto upper = parse_double(fields[2]);
  const auto level = parse_double(fields[3]);
  const auto point = parse_double(fields[4]);
  std::int64_t n = 0;
  const auto nres = std::from_chars(fields[5].data(), fields[5].data() + fields[5].size(), n);
  if (!method || !lower || !upper || !level || !point || nres.ec != std::errc() ||
      nres.ptr != fields[5].data() + fields[5].size()) {
    throw InputError("malformed report row");
  }
  return {*method, *lower, *upper, *level, *point, n, {}, {}};
}

inline constexpr std::string_view kCoverageCsvHeader =
    "x,method,coverage,mean_length,mc_stderr,n_reps";

/// Coverage table, rows sorted by (method name, x).
inline void write_coverage_csv(std::ostream& out, const std::vector<CoverageCurve>& curves) {
  struct Row {
    std::string_view method;
    double x;
    double coverage;
    double mean_length;
    double mc_stderr;
    std::int64_t n_reps;
  };
  std::vector<Row> rows;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      rows.push_back({method_name(c.method), c.x[i], c.coverage[i], c.mean_length[i],
                      c.mc_stderr[i], c.n_reps});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.method, a.x) < std::tie(b.method, b.x);
  });
  out << kCoverageCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_sig6(r.x) << ',' << r.method << ',' << format_sig6(r.coverage) << ','
        << format_sig6(r.mean_length) << ',' << format_sig6(r.mc_stderr) << ','
        << r.n_reps << '\n';
  }
}

inline void write_correlation_csv(std::ostream& out,
                                  const std::vector<CorrelationRow>& rows) {
  out << "n,sigma,correlation\n";
  for (const auto& r : rows) {
    out << r.n << ",hessian," << format_sig6(r.hessian) << '\n';
    out << r.n << ",jackknife," << format_sig6(r.jackknife) << '\n';
  }
}

inline void write_length_csv(std::ostream& out, const std::vector<LengthRow>& rows) {
  out << "n,method,max_length,argmax_k\n";
  for (const auto& r : rows) {
    out << r.n << ',' << method_name(r.method) << ',' << format_sig6(r.max_length) << ','
        << r.argmax_k << '\n';
  }
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "p_hat,method,length\n";
  for (const auto& r : rows) {
    out << format_sig6(r.p_hat) << ',' << method_name(r.method) << ','
        << format_sig6(r.length) << '\n';
  }
}

}  // namespace confint
