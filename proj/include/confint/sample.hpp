#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "confint/error.hpp"

namespace confint {

/// Non-empty ordered list of finite observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("sample must not be empty");
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("sample values must be finite");
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  double sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  /// Accumulated relative to the first value, so constant samples are exact.
  double mean() const { return shifted_mean(values_); }

  /// Unbiased variance with divisor n - 1 (two-pass).
  double variance() const {
    if (size() < 2) throw DomainError("variance needs at least two values");
    const double m = mean();
    double ss = 0.0;
    for (double v : values_) ss += (v - m) * (v - m);
    return ss / static_cast<double>(size() - 1);
  }

  static double shifted_mean(std::span<const double> v) {
    const double base = v[0];
    double s = 0.0;
    for (double x : v) s += x - base;
    return base + s / static_cast<double>(v.size());
  }

  /// Copy of the sample with observation `i` removed.
  Sample without(std::size_t i) const {
    if (size() < 2) throw DomainError("cannot delete from a one-point sample");
    std::vector<double> rest;
    rest.reserve(size() - 1);
    for (std::size_t j = 0; j < size(); ++j) {
      if (j != i) rest.push_back(values_[j]);
    }
    return Sample(std::move(rest));
  }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  // Resampling overwrites values in place without re-validating.
  friend class SampleBuffer;
  Sample() = default;

  std::vector<double> values_;
};

/// Reusable storage for a sample that gets refilled many times.
class SampleBuffer {
 public:
  explicit SampleBuffer(std::size_t n) {
    if (n == 0) throw DomainError("sample must not be empty");
    sample_.values_.resize(n);
  }

  std::span<double> values() { return sample_.values_; }
  const Sample& sample() const { return sample_; }

 private:
  Sample sample_;
};

}  // namespace confint
