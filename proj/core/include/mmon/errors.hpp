#pragma once

#include <stdexcept>
#include <string>

namespace mmon {

/// Invalid inputs: bad rates, malformed fleets, infeasible configs.
/// Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ratio metric whose denominator carries no probability/event mass.
class UndefinedRatioError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure: residual beyond tolerance, iteration cap breached.
/// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace mmon
