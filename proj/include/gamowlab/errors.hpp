#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gamowlab {

using cplx = std::complex<double>;

// Base of every error raised by the library. The CLI maps the subclasses
// onto exit codes, so new error kinds must derive from one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a type invariant or an operation precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Evaluation point too close to a pole.
class PoleProximityError : public ValidationError {
 public:
  PoleProximityError(const std::string& what, cplx root)
      : ValidationError(what), root_(root) {}
  cplx root() const { return root_; }

 private:
  cplx root_;
};

// Inverse of E = w^2 requested where the sheet is not determined.
class AmbiguityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Time parameter outside the semigroup domain (t < 0 for decaying kets,
// t > 0 for growing kets). Physics, not plumbing: never silently extended.
class SemigroupDomainError : public Error {
 public:
  using Error::Error;
};

// Matrix dimensions inconsistent.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical procedure failed to converge or exceeded its budget.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class RootFindingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A computed check exceeded its tolerance. `check` names the check.
class ToleranceError : public NumericalError {
 public:
  ToleranceError(const std::string& check, const std::string& what)
      : NumericalError(what), check_(check) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gamowlab
