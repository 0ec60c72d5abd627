#pragma once

#include <stdexcept>
#include <string>

namespace visbench {

/// Raised when an input violates a documented precondition (bad PMF, bad
/// measure spelling, malformed survey row, ...).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a file cannot be opened, read or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace visbench
