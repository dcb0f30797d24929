#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace packlp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector or index set does not match the instance dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An index outside [0, n).
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An instance violates one of the packing-LP invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure or iteration cap inside a solver.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A reference objective that cannot be used for relative error.
class InvalidReferenceError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent generator or experiment parameters.
class SpecError : public Error {
 public:
  using Error::Error;
};

class AcceleratorError : public Error {
 public:
  using Error::Error;
};

class CloningError : public Error {
 public:
  using Error::Error;
};

}  // namespace packlp
