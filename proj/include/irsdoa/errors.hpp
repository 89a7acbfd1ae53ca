#pragma once

#include <stdexcept>
#include <string>

namespace irsdoa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf input, or an iterate that stopped being finite.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is singular even after regularization.
class SingularityError : public NumericError {
 public:
  SingularityError(const std::string& what, double eigenvalue)
      : NumericError(what), eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// CRB requested at |theta| = 90 degrees, where the angle derivative vanishes.
class EndfireError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// MUSIC asked for K >= M sources; the noise subspace is empty.
class DegenerateSubspaceError : public Error {
 public:
  using Error::Error;
};

/// Invalid scene, sweep or solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An aggregate was requested over zero usable records.
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace irsdoa
