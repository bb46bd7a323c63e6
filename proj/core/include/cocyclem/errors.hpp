#pragma once

#include <stdexcept>
#include <string>

namespace cocyclem {

// Bad input: malformed files, violated preconditions, inconsistent shapes.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not produce a trustworthy number: non-integer
// defects, power iteration that did not converge, integer overflow.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace cocyclem
