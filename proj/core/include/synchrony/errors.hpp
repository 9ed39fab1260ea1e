#pragma once

#include <stdexcept>
#include <string>

namespace synchrony {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A convention in which the requested worldline or direction lies on a
/// surface of simultaneity, so the one-way speed is undefined.
class DegenerateConvention : public Error {
 public:
  using Error::Error;
};

/// Operands expressed in different synchronization conventions.
class ConventionMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (nonpositive length, non-unit
/// direction, non-Hermitian generator, invalid projector set, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace synchrony
