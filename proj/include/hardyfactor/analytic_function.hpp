#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/scaled_complex.hpp"
#include "hardyfactor/structured.hpp"

namespace hardyfactor {

// Type-erased holomorphic function on the disk, the common input of the zero
// and factorization machinery. Values come in scaled form so that moduli far
// below the double range keep a usable phase and logarithm. Derivatives are
// optional; `max_derivative_order()` reports how many are available.
class AnalyticFunction {
 public:
  using ValueFn = std::function<ScaledComplex(Complex)>;
  using DerivativeFn = std::function<Complex(int, Complex)>;
  using LogDerivativeFn = std::function<std::optional<Complex>(Complex)>;

  AnalyticFunction(ValueFn value, DerivativeFn derivative = {}, int max_derivative_order = 0,
                   std::vector<double> boundary_singular_args = {}, std::vector<double> atom_args = {});

  static AnalyticFunction from(const FloatPolynomial& p);
  static AnalyticFunction from(const ExactPolynomial& p);
  // Precomputes the in-family derivative chain up to `derivative_order`.
  static AnalyticFunction from(const StructuredFunction& f, int derivative_order = 1);
  static AnalyticFunction from(const FrostmanShift& shift);
  static AnalyticFunction from(const BlaschkeProduct& b);

  ScaledComplex scaled(Complex z) const { return value_(z); }
  Complex operator()(Complex z) const { return value_(z).value(); }
  double log_abs(Complex z) const { return value_(z).log_abs(); }

  int max_derivative_order() const { return derivative_ ? max_order_ : 0; }
  // derivative(0, z) is the value.
  Complex derivative(int order, Complex z) const;

  // Boundary points the quadrature and contours must avoid.
  const std::vector<double>& boundary_singular_args() const { return singular_args_; }
  // Boundary points that may carry singular mass.
  const std::vector<double>& atom_args() const { return atom_args_; }

  // f'(z) / f(z) when it can be formed without overflow or underflow.
  std::optional<Complex> log_derivative(Complex z) const;

  // f(z) / z^m, evaluated pointwise.
  AnalyticFunction divided_by_power(int m) const;
  // c * f
  AnalyticFunction scaled_by(Complex c) const;

 private:
  ValueFn value_;
  DerivativeFn derivative_;
  int max_order_ = 0;
  std::vector<double> singular_args_;
  std::vector<double> atom_args_;
  LogDerivativeFn log_derivative_;
};

}  // namespace hardyfactor
