#pragma once

#include <stdexcept>
#include <string>

namespace hdc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A fractional or negative power was requested of a spectrum that cannot
// support it (zero coefficient, or a non-unitary vector for fractional p).
class SingularSpectrum : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hdc
