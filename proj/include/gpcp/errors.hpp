#pragma once

#include <stdexcept>
#include <string>

namespace gpcp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Tensor or vector data that violates a construction invariant (NaN, bad length).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Projection requested on a cone represented only by halfspaces.
class ProjectionUnsupported : public Error {
 public:
  using Error::Error;
};

/// Operation defined only for the nonnegative orthant.
class UnsupportedCone : public Error {
 public:
  using Error::Error;
};

class OddOrderError : public Error {
 public:
  using Error::Error;
};

class EmptySolutionEstimate : public Error {
 public:
  using Error::Error;
};

class NotASolution : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed problem file whose content breaks the schema.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpcp
