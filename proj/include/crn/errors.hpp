#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Base of every error raised by the library. The C API maps each subclass
// onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidNetwork : public Error {
 public:
  using Error::Error;
};

// Requested SINR vector has no nonnegative power solution.
class InfeasibleSinr : public Error {
 public:
  using Error::Error;
};

// PUs cannot all be protected even with no SU transmitting.
class PrimaryInfeasible : public Error {
 public:
  using Error::Error;
};

class NoCandidate : public Error {
 public:
  using Error::Error;
};

class DegenerateGamma : public Error {
 public:
  using Error::Error;
};

// Throughput maximization needs every PU and SU protectable at its target.
class FeasibilityRequired : public Error {
 public:
  using Error::Error;
};

class InfeasibleProblem : public Error {
 public:
  using Error::Error;
};


class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace crn
