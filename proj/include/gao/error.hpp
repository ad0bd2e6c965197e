#pragma once

#include <stdexcept>
#include <string>

namespace gao {

enum class ErrorKind {
  invalid_argument,
  numerical_blowup,
  divergence,
  unsupported_exponent,
  unsupported_shape,
  linearization_breakdown,
  measure_construction,
  quadrature_failure,
  calibration,
  undefined_correlation,
  config,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the engine; the kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::numerical_blowup: return "numerical blow-up";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::unsupported_exponent: return "unsupported exponent";
    case ErrorKind::unsupported_shape: return "unsupported shape";
    case ErrorKind::linearization_breakdown: return "linearization breakdown";
    case ErrorKind::measure_construction: return "measure construction";
    case ErrorKind::quadrature_failure: return "quadrature failure";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::undefined_correlation: return "undefined correlation";
    case ErrorKind::config: return "config";
  }
  return "error";
}

}  // namespace gao
