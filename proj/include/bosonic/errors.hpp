#pragma once

#include <stdexcept>
#include <string>

namespace bosonic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or invalid run configuration.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Non-normalized state, non-finite objective, lost unitarity.
class NumericIntegrityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard resource bound.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bosonic
