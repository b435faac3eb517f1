#pragma once

#include <stdexcept>
#include <string>

namespace stochwave {

// Invalid parameters in a user-supplied configuration (grid sizes, model
// coefficients, scheme names, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse: component-count mismatches, wrong model for an operation.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative solver failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, double last_residual)
      : std::runtime_error(msg), last_residual(last_residual) {}
  double last_residual;
};

// Consistency violation inside the library itself (e.g. a multiplier
// left a real field with a large imaginary residual).
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stochwave
