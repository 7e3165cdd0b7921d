#pragma once

#include <stdexcept>
#include <string>

namespace hochlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold (bad shapes, wrong ring, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured resource cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Construction-time identity failed (d^2 != 0 and similar).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hochlab
