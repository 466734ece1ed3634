#pragma once

#include <stdexcept>
#include <string>

namespace copclust {

/// Bad input: malformed files, invalid configuration, precondition violations.
/// The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Numerical failure (bracketing, non-convergence). Exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace copclust
