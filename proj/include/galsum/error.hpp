#pragma once

#include <stdexcept>
#include <string>

namespace galsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Parameter tuple violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Input too large for the desk-scale algorithms (or not enough fresh primes).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedAlgorithm : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double bound)
      : Error(what), estimate_(estimate), bound_(bound) {}
  double estimate() const { return estimate_; }
  double bound() const { return bound_; }

 private:
  double estimate_;
  double bound_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last, double residual)
      : Error(what), last_(last), residual_(residual) {}
  double last_iterate() const { return last_; }
  double residual() const { return residual_; }

 private:
  double last_;
  double residual_;
};

}  // namespace galsum
