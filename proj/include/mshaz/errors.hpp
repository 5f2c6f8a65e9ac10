#pragma once

#include <stdexcept>
#include <string>

namespace mshaz {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A model parameter is outside its admissible range (or non-finite).
class InvalidParameterError : public Error {
 public:
  explicit InvalidParameterError(const std::string& msg) : Error(msg) {}
};

/// The requested operation is not defined for the given inputs
/// (e.g. convolving an improper density, or exceeding a hard size cap).
class UnsupportedOperationError : public Error {
 public:
  explicit UnsupportedOperationError(const std::string& msg) : Error(msg) {}
};

/// Mismatched or malformed arguments to an operation (e.g. grids differ).
class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

/// A declarative specification is incomplete or inconsistent
/// (e.g. a cascade law entry is missing for a reachable state).
class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& msg) : Error(msg) {}
};

}  // namespace mshaz
