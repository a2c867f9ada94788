#pragma once

#include <stdexcept>
#include <string>

namespace sagnac {

/// Rejected input: violated precondition, malformed scenario, bad argument.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure during a computation (non-finite field, step collapse).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sagnac
