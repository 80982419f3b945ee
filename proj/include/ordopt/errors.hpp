#pragma once

#include <stdexcept>
#include <string>

namespace ordopt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: the caller asked for something outside the domain.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The inputs were valid but a numerical procedure could not deliver.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public ValidationError {
 public:
  OutOfRange(std::string field, const std::string& what)
      : ValidationError(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Selection size equals sample size where the method needs m < n.
class Degenerate : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotPSD : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoRealRoot : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Infeasible : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ordopt
