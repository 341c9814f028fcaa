#pragma once

#include <stdexcept>
#include <string>

namespace dtnlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters (CLI exit code 2).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// (|z|/2)^alpha / Gamma(alpha+1) left the double range; use the scaled API.
class ScaleOverflowError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a singular point (Y_alpha at z = 0, J_{-1/2} at 0, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Energy too close to a Dirichlet eigenvalue for a stable solve.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double distance)
      : Error(what), distance_(distance) {}
  // Distance to the offending eigenvalue (or a relative singularity measure).
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

// An energy set failed sigma-regularity, or a resolvent denominator went
// nonpositive.
class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

// Requested feature not supported (e.g. harmonics for d >= 4).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Should-not-happen failures (bracketing, digamma, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtnlab
