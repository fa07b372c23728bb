#pragma once

#include <stdexcept>
#include <string>

namespace floqsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Time or index outside the support of a pulse or grid.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// An eigensolver or optimizer failed to converge.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// An integrator could not reach the requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Quasienergy states are not uniquely defined (degenerate pair).
class IllDefinedBasis : public Error {
 public:
  using Error::Error;
};

}  // namespace floqsim
