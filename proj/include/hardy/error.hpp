#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardy {

enum class ErrorCode {
  Inadmissible,
  Unsupported,
  Singular,
  IllConditioned,
  NotConverged,    // quadrature
  NonConverged,    // optimizer refinement stalled
  FitUnstable,
  SupportViolation,
  NegativeR,
  Truncation,
  EmptyInput,
  Domain,
  SingularParams,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an integral misses its tolerance; carries the best available estimate.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double value, double err_estimate)
      : Error(ErrorCode::NotConverged, what), value_(value), err_estimate_(err_estimate) {}

  double value() const noexcept { return value_; }
  double err_estimate() const noexcept { return err_estimate_; }

 private:
  double value_;
  double err_estimate_;
};

}  // namespace hardy
