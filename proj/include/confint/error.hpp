#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confint {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a trustworthy answer.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Root solver was handed an interval without a sign change.
class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Likelihood maximization did not converge.
class FitError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Hessian at the ML point is singular or not positive definite.
class CurvatureError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Bootstrap distribution too degenerate for the requested interval.
class DegenerateError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Malformed external input (data files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An estimator threw while evaluated on a resampled or delete-one subsample.
class EstimatorError : public NumericError {
 public:
  EstimatorError(std::size_t index, const std::string& what)
      : NumericError("estimator failed on subsample " + std::to_string(index) +
                     ": " + what),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace confint
