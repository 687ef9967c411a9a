#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "confint/report.hpp"

using namespace confint;

namespace {

IntervalReport random_report(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(kMethodNames.size()) - 1);
  IntervalReport r;
  r.method = kMethodNames[pick(gen)].first;
  r.lower = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
  r.upper = r.lower + std::fabs(u(gen));
  r.level = std::generate_canonical<double, 53>(gen);
  r.point_estimate = 0.5 * (r.lower + r.upper);
  r.n = static_cast<std::int64_t>(gen() % 100000);
  return r;
}

}  // namespace

TEST_CASE("number formatting", "[report]") {
  CHECK(format_sig6(0.402002) == "0.402002");
  CHECK(format_sig6(0.4020018007729973) == "0.402002");
  CHECK(format_sig6(0.0) == "0");
  CHECK(format_sig6(1.0) == "1");
  CHECK(format_sig6(-5.853102368) == "-5.8531");
  CHECK(format_sig6(1234567.0) == "1.23457e+06");
  CHECK(format_exact(0.1) == "0.1");
  CHECK(parse_double("0.25") == 0.25);
  CHECK(parse_double("-1e-3") == -1e-3);
  CHECK_FALSE(parse_double("1.5x"));
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("nan"));
  CHECK_FALSE(parse_double("inf"));
}

TEST_CASE("text output is 'method lower upper'", "[report]") {
  const auto r = IntervalReport::from({0.4020018, 0.5979982, Method::wald, 0.95}, 0.5, 100);
  CHECK(to_text(r) == "wald 0.402002 0.597998");
}

TEST_CASE("JSON encoding round-trips losslessly", "[report]") {
  std::mt19937_64 gen(42);
  for (int i = 0; i < 500; ++i) {
    IntervalReport r = random_report(gen);
    if (i % 2 == 0) {
      r.r = 1000 + i;
      r.seed = gen();
    }
    const std::string text = to_json(r).dump();
    CHECK(report_from_json(nlohmann::ordered_json::parse(text)) == r);
  }
  CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::parse(R"({"method":"t"})")),
                  InputError);
  CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::parse(
                      R"({"method":"nope","lower":0,"upper":1,"level":0.9,"point_estimate":0,"n":1})")),
                  InputError);
}

TEST_CASE("CSV encoding round-trips losslessly", "[report]") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 500; ++i) {
    const IntervalReport r = random_report(gen);
    CHECK(report_from_csv_row(to_csv_row(r)) == r);
  }
  const IntervalReport tiny{Method::exact, std::numeric_limits<double>::denorm_min(),
                            1.0 - std::numeric_limits<double>::epsilon(), 0.95, 1e-300, 3,
                            {}, {}};
  CHECK(report_from_csv_row(to_csv_row(tiny)) == tiny);
  CHECK_THROWS_AS(report_from_csv_row("t,1,2,0.95,1.5"), InputError);
  CHECK_THROWS_AS(report_from_csv_row("t,1,2,0.95,1.5,x"), InputError);
  CHECK_THROWS_AS(report_from_csv_row("what,1,2,0.95,1.5,3"), InputError);
}

TEST_CASE("coverage CSV is sorted by method then x", "[report]") {
  CoverageCurve wald{Method::wald, {0.5, 0.1}, {0.93, 0.91}, {0.2, 0.1}, {0.001, 0.002}, 0};
  CoverageCurve exact{Method::exact, {0.1}, {0.9612345678}, {0.12}, {0.0}, 0};
  std::ostringstream out;
  write_coverage_csv(out, {wald, exact});
  CHECK(out.str() ==
        "x,method,coverage,mean_length,mc_stderr,n_reps\n"
        "0.1,exact,0.961235,0.12,0,0\n"
        "0.1,wald,0.91,0.1,0.002,0\n"
        "0.5,wald,0.93,0.2,0.001,0\n");
}

TEST_CASE("auxiliary tables", "[report]") {
  std::ostringstream c, l, s;
  write_correlation_csv(c, {{20, 0.6, 0.4}});
  CHECK(c.str() == "n,sigma,correlation\n20,hessian,0.6\n20,jackknife,0.4\n");
  write_length_csv(l, {{100, Method::exact, 0.2033571, 50}});
  CHECK(l.str() == "n,method,max_length,argmax_k\n100,exact,0.203357,50\n");
  write_sweep_csv(s, {{0.25, Method::lr, 0.125}});
  CHECK(s.str() == "p_hat,method,length\n0.25,lr,0.125\n");
}
