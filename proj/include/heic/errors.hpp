#pragma once

#include <stdexcept>
#include <string>

namespace heic {

/// Bad input: out-of-range parameters, malformed files, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of panels. Carries the best estimate reached.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_estimate)
      : NumericError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace heic
