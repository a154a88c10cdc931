#pragma once

#include <stdexcept>
#include <string>

namespace gamma_omega {

// Malformed input: bad syntax, inconsistent dimensions, violated preconditions
// that the caller could have checked.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap (class, word length, element bound) was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The computation ran but a mathematical hypothesis failed, e.g. a level of a
// tower is not normally generated by the chosen elements.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gamma_omega
