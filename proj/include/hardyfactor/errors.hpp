#pragma once

#include <stdexcept>
#include <string>

namespace hardyfactor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic between exact and floating polynomials.
class KindMismatchError : public Error {
 public:
  using Error::Error;
};

// Operation undefined on its input (zero polynomial roots, division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid construction parameters (|alpha| >= 1, non-positive atom mass, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Evaluation at an atom, a boundary pole, or outside the closed disk.
class EvaluationSingularityError : public Error {
 public:
  using Error::Error;
};

// All combination coefficients are zero.
class TrivialCombinationError : public Error {
 public:
  using Error::Error;
};

// Inputs are linearly dependent, so the Wronskian vanishes identically.
class DependentInputsError : public Error {
 public:
  using Error::Error;
};

// The Wronskian matrix is numerically nonsingular at the requested point.
class NoDeepZeroError : public Error {
 public:
  explicit NoDeepZeroError(const std::string& what, double gap)
      : Error(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

class ContourTooCloseError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailureError : public Error {
 public:
  QuadratureFailureError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

class InconsistentZeroInventoryError : public Error {
 public:
  using Error::Error;
};

class RadialZeroError : public Error {
 public:
  using Error::Error;
};

// Configuration violates the schema; `pointer` is a JSON pointer to the
// offending location.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& pointer, const std::string& message)
      : Error(pointer + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace hardyfactor
