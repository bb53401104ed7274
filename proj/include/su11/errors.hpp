#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the domain of the requested operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The quantum Fisher information vanishes, so the Cramer-Rao bound is infinite.
class NoPhaseInformation : public Error {
 public:
  using Error::Error;
};

/// Error propagation is undefined because the signal slope is zero.
class ZeroSlope : public Error {
 public:
  using Error::Error;
};

/// The requested total photon number cannot be met with a non-negative n_a.
class InfeasibleBudget : public Error {
 public:
  using Error::Error;
};

/// The truncated Fock-space simulation pushed more norm past the cutoff than allowed.
class LeakBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An intermediate value overflowed or became NaN.
class NonFinite : public Error {
 public:
  using Error::Error;
};

}  // namespace su11
