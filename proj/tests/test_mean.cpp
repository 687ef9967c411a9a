#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "confint/mean.hpp"
#include "confint/numerics/rng.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace confint;

namespace {

std::vector<Interval> all_intervals(const Sample& s) {
  return {t_interval(s, 0.05),          z_interval(s, 0.05),
          lr_support_mean_t(s, 8.0),    lr_support_mean_normal(s, 8.0),
          hpd_mean(s, 0.05, Calibration::t), hpd_mean(s, 0.05, Calibration::normal)};
}

}  // namespace

TEST_CASE("t interval examples", "[mean]") {
  const Sample two({0.0, 1.0});
  const Interval iv = t_interval(two, 0.05);
  const double t1 = oracle::bisect([](double x) { return oracle::t_cdf(x, 1); }, 0.975, 0, 100);
  CHECK_THAT(iv.lower, WithinAbs(0.5 - t1 * 0.5, 1e-6));
  CHECK_THAT(iv.upper, WithinAbs(0.5 + t1 * 0.5, 1e-6));
  CHECK_THAT(iv.lower, WithinAbs(-5.853, 1e-3));

  const Interval c = t_interval(Sample({2.5, 2.5, 2.5}), 0.05);
  CHECK(c.lower == 2.5);
  CHECK(c.upper == 2.5);
  CHECK_THROWS_AS(t_interval(Sample({1.0}), 0.05), DomainError);
}

TEST_CASE("t and z agree for very large samples", "[mean]") {
  RngStream rng(11, 0);
  std::vector<double> v(1000000);
  for (double& x : v) x = rng.uniform();
  const Sample s(std::move(v));
  const double wt = t_interval(s, 0.05).length();
  const double wz = z_interval(s, 0.05).length();
  CHECK(std::fabs(wt - wz) / wz < 1e-5);
}

TEST_CASE("z interval examples", "[mean]") {
  const Interval iv = z_interval(Sample({0.0, 1.0}), 0.05);
  const double z = oracle::bisect(oracle::normal_cdf, 0.975, -10, 10);
  CHECK_THAT(iv.upper - 0.5, WithinAbs(z * 0.5, 1e-10));
  // s^2 / n = 1: values +-sqrt(3) give s^2 = 4, n = 4.
  const double r2 = std::sqrt(3.0);
  const Interval h = z_interval(Sample({-r2, r2, -r2, r2}), 0.05);
  CHECK_THAT(0.5 * h.length(), WithinAbs(1.959963984540054, 1e-10));
}

TEST_CASE("support intervals for the mean", "[mean]") {
  const Sample s({-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});  // n = 2, s^2 = 1
  CHECK_THAT(0.5 * lr_support_mean_t(s, 8.0).length(), WithinAbs(std::sqrt(3.5), 1e-12));
  CHECK(lr_support_mean_t(s, 1.0).length() == 0.0);
  CHECK(lr_support_mean_normal(s, 1.0).length() == 0.0);

  RngStream rng(3, 1);
  std::vector<double> v(37);
  for (double& x : v) x = rng.uniform() * 5.0;
  const Sample r(std::move(v));
  const double ratio = lr_support_mean_normal(r, 8.0).length() / z_interval(r, 0.05).length();
  CHECK(std::fabs(ratio - 2.0393 / 1.95996) < 1e-4);
  CHECK_THAT(ratio, WithinRel(std::sqrt(2.0 * std::log(8.0)) / 1.959963984540054, 1e-12));
  CHECK_THROWS_AS(lr_support_mean_t(r, 0.9), DomainError);
}

TEST_CASE("large-n support interval uses the normal-theory form", "[mean]") {
  RngStream rng(4, 1);
  std::vector<double> v(5000);
  for (double& x : v) x = rng.uniform();
  const Sample s(std::move(v));
  const Interval t = lr_support_mean_t(s, 8.0);
  const Interval n = lr_support_mean_normal(s, 8.0);
  CHECK(t.lower == n.lower);
  CHECK(t.upper == n.upper);
}

TEST_CASE("hpd mean intervals equal the t and z intervals", "[mean]") {
  const Sample s({0.3, 1.9, -0.4, 2.2, 0.8});
  const Interval a = hpd_mean(s, 0.1, Calibration::t);
  const Interval b = t_interval(s, 0.1);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.method == Method::hpd_t);
  const Interval c = hpd_mean(s, 0.1, Calibration::normal);
  CHECK(c.lower == z_interval(s, 0.1).lower);
  CHECK(c.method == Method::hpd_normal);
  for (const Interval& iv : all_intervals(Sample({4.0, 4.0}))) CHECK(iv.length() == 0.0);
}

TEST_CASE("symmetry and equivariance", "[mean]") {
  std::mt19937 gen(99);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + gen() % 60;
    const auto v = oracle::random_values(gen, n, -3.0, 7.0);
    const Sample s(v);
    const double c = -5.0 + 10.0 * std::generate_canonical<double, 53>(gen);
    const double scale = 0.01 + 20.0 * std::generate_canonical<double, 53>(gen);
    std::vector<double> shifted = v, scaled = v;
    for (double& x : shifted) x += c;
    for (double& x : scaled) x *= scale;
    const auto base = all_intervals(s);
    const auto sh = all_intervals(Sample(shifted));
    const auto sc = all_intervals(Sample(scaled));
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK_THAT(base[i].center(), WithinAbs(s.mean(), 1e-12));
      CHECK_THAT(sh[i].lower, WithinAbs(base[i].lower + c, 1e-9));
      CHECK_THAT(sh[i].upper, WithinAbs(base[i].upper + c, 1e-9));
      CHECK_THAT(sc[i].lower, WithinAbs(base[i].lower * scale, 1e-9 * scale));
      CHECK_THAT(sc[i].upper, WithinAbs(base[i].upper * scale, 1e-9 * scale));
    }
  }
}
