#pragma once

#include <stdexcept>
#include <string>

namespace deltakit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonInvertible : public Error {
 public:
  using Error::Error;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic left the 64-bit range. index() is the first
/// offending position of a sequence, or -1.
class Overflow : public Error {
 public:
  explicit Overflow(const std::string& what, long long index = -1) : Error(what), index_(index) {}
  long long index() const noexcept { return index_; }

 private:
  long long index_;
};

/// A quadrature or series evaluation failed to reach its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// The delta-method evaluation of a shifted sum disagrees with brute force.
class PipelineMismatch : public Error {
 public:
  PipelineMismatch(const std::string& what, double brute, double delta)
      : Error(what), brute_(brute), delta_(delta) {}
  double brute() const noexcept { return brute_; }
  double delta() const noexcept { return delta_; }

 private:
  double brute_;
  double delta_;
};

/// Both sides of an identity are too small to determine a unit factor.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

/// Externally supplied data failed a consistency gate.
class ValidationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace deltakit
