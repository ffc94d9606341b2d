#pragma once

#include <stdexcept>
#include <string>

namespace iqp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed numeric input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Cholesky hit a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// The constraint set {x : Ax >= b} could not be shown nonempty.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Iteration cap or breakdown inside a numerical kernel.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Decomposition parameter or run configuration violates an admissibility rule.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle refused an instance that is too large to enumerate.
class ScaleGuard : public Error {
 public:
  using Error::Error;
};

/// A runtime property check (descent, fixed point) failed in strict mode.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace iqp
