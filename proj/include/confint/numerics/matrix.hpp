#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "confint/error.hpp"

namespace confint {

/// Small dense square matrix, row-major. Sized for parameter counts of a
/// handful, not for linear algebra at scale.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  bool all_finite() const {
    for (double v : data_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  void symmetrize() {
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = i + 1; j < dim_; ++j) {
        const double avg = 0.5 * ((*this)(i, j) + (*this)(j, i));
        (*this)(i, j) = avg;
        (*this)(j, i) = avg;
      }
    }
  }

  /// Positive definiteness of a symmetric matrix: every pivot of the
  /// unpivoted (LDL^T) elimination must be strictly positive.
  bool positive_definite() const {
    SquareMatrix u = *this;
    for (std::size_t p = 0; p < dim_; ++p) {
      const double pivot = u(p, p);
      if (!(pivot > 0.0)) return false;
      for (std::size_t i = p + 1; i < dim_; ++i) {
        const double factor = u(i, p) / pivot;
        for (std::size_t j = p; j < dim_; ++j) u(i, j) -= factor * u(p, j);
      }
    }
    return true;
  }

  /// Gauss-Jordan inversion with partial pivoting.
  SquareMatrix inverse() const {
    SquareMatrix a = *this;
    SquareMatrix inv = identity(dim_);
    for (std::size_t col = 0; col < dim_; ++col) {
      std::size_t best = col;
      for (std::size_t r = col + 1; r < dim_; ++r) {
        if (std::fabs(a(r, col)) > std::fabs(a(best, col))) best = r;
      }
      if (a(best, col) == 0.0) throw CurvatureError("matrix is singular");
      if (best != col) {
        for (std::size_t j = 0; j < dim_; ++j) {
          std::swap(a(best, j), a(col, j));
          std::swap(inv(best, j), inv(col, j));
        }
      }
      const double pivot = a(col, col);
      for (std::size_t j = 0; j < dim_; ++j) {
        a(col, j) /= pivot;
        inv(col, j) /= pivot;
      }
      for (std::size_t r = 0; r < dim_; ++r) {
        if (r == col) continue;
        const double factor = a(r, col);
        if (factor == 0.0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
          a(r, j) -= factor * a(col, j);
          inv(r, j) -= factor * inv(col, j);
        }
      }
    }
    return inv;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

}  // namespace confint
