#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mpinv {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible with the requested operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinite value reached a matrix constructor.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Elimination met a pivot below the relative pivot tolerance.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure exhausted its step budget.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Two distinct eigenvalues are too close for Lagrange-type projector formulas.
class DegenerateSeparation : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Every route tried by the automatic pseudoinverse front door failed.
class RouteFailed : public Error {
 public:
  RouteFailed(const std::string& what, std::vector<std::string> causes)
      : Error(what), causes_(std::move(causes)) {}

  const std::vector<std::string>& causes() const noexcept { return causes_; }

 private:
  std::vector<std::string> causes_;
};

}  // namespace mpinv
