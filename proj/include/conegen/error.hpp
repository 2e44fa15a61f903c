#pragma once

#include <stdexcept>
#include <string>

namespace conegen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or dimension-inconsistent input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The operation needs a representation the value does not carry
/// (e.g. generators of a general cone in dimension > 3).
class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of the requested operation does not hold.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the effective domain of an extended-real function.
class DomainError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

inline void require_dim(std::ptrdiff_t expected, std::ptrdiff_t actual, const char* what) {
  if (expected != actual) {
    throw InputError(std::string("dimension mismatch in ") + what + ": expected " +
                     std::to_string(expected) + ", got " + std::to_string(actual));
  }
}

}  // namespace conegen
