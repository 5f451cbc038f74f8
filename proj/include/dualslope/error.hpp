#pragma once

#include <stdexcept>

namespace dualslope {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Path loss exponents violate 0 <= alpha0 <= alpha1.
class InvalidExponents : public Error {
 public:
  using Error::Error;
};

/// Long-range exponent does not exceed the deployment dimension, so the
/// aggregate interference has infinite mean.
class DivergentInterference : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside its admissible range (non-positive density,
/// negative noise, non-finite input, ...).
class InvalidScalar : public Error {
 public:
  using Error::Error;
};

/// A special-function parameter hits a pole or an undefined limit.
class SingularParameter : public Error {
 public:
  using Error::Error;
};

/// A series or quadrature did not reach the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A log-log fit window is too short or holds non-positive values.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

}  // namespace dualslope
