#pragma once

#include <stdexcept>
#include <string>

namespace diias {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup outside a field's domain, or a domain too small for the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A strict geometric predicate landed within tolerance of zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The polyline pair breaks a restriction the construction relies on.
class InadmissibleError : public Error {
 public:
  using Error::Error;
};

/// A net failed an asymptotic / DIIAS / normalization check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written, or its contents could not be parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace diias
