#include "hardyfactor/analytic_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardyfactor/errors.hpp"

namespace hardyfactor {

AnalyticFunction::AnalyticFunction(ValueFn value, DerivativeFn derivative, int max_derivative_order,
                                   std::vector<double> boundary_singular_args, std::vector<double> atom_args)
    : value_(std::move(value)),
      derivative_(std::move(derivative)),
      max_order_(max_derivative_order),
      singular_args_(std::move(boundary_singular_args)),
      atom_args_(std::move(atom_args)) {}

Complex AnalyticFunction::derivative(int order, Complex z) const {
  if (order == 0) return (*this)(z);
  if (!derivative_ || order > max_order_)
    throw ParameterError("derivative of order " + std::to_string(order) + " not available");
  return derivative_(order, z);
}

std::optional<Complex> AnalyticFunction::log_derivative(Complex z) const {
  if (log_derivative_) return log_derivative_(z);
  if (!derivative_ || max_order_ < 1) return std::nullopt;
  const Complex v = (*this)(z);
  const Complex d = derivative_(1, z);
  if (v == Complex(0.0) || !std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) return std::nullopt;
  return d / v;
}

AnalyticFunction AnalyticFunction::from(const FloatPolynomial& p) {
  // Every derivative past the degree is zero, so any order is available.
  auto chain = std::make_shared<std::vector<FloatPolynomial>>();
  chain->push_back(p);
  while (!chain->back().is_zero()) chain->push_back(chain->back().derivative());
  return AnalyticFunction([chain](Complex z) { return ScaledComplex::from((*chain)[0](z)); },
                          [chain](int k, Complex z) {
                            if (k >= static_cast<int>(chain->size())) return Complex(0.0);
                            return (*chain)[k](z);
                          },
                          std::numeric_limits<int>::max());
}

AnalyticFunction AnalyticFunction::from(const ExactPolynomial& p) { return from(to_float(p)); }

AnalyticFunction AnalyticFunction::from(const StructuredFunction& f, int derivative_order) {
  const int order = std::max(derivative_order, 1);
  auto chain = std::make_shared<std::vector<StructuredFunction>>(f.derivative_chain(order));
  AnalyticFunction out([chain](Complex z) { return (*chain)[0].eval_scaled(z); },
                       [chain](int k, Complex z) { return (*chain)[k](z); }, order, f.boundary_singular_args(),
                       f.atom_args());
  out.log_derivative_ = [chain](Complex z) -> std::optional<Complex> {
    const ScaledComplex v = (*chain)[0].eval_scaled(z);
    const ScaledComplex d = (*chain)[1].eval_scaled(z);
    if (v.is_zero()) return std::nullopt;
    if (d.is_zero()) return Complex(0.0);
    const Complex r = d.mantissa / v.mantissa * std::exp(d.log_scale - v.log_scale);
    if (!std::isfinite(std::abs(r))) return std::nullopt;
    return r;
  };
  return out;
}

AnalyticFunction AnalyticFunction::from(const FrostmanShift& shift) {
  auto s = std::make_shared<FrostmanShift>(shift);
  return AnalyticFunction([s](Complex z) { return ScaledComplex::from(s->eval(z)); },
                          [s](int, Complex z) { return s->derivative_eval(z); }, 1,
                          shift.base().boundary_singular_args(), shift.base().atom_args());
}

AnalyticFunction AnalyticFunction::from(const BlaschkeProduct& b) {
  auto s = std::make_shared<BlaschkeProduct>(b);
  return AnalyticFunction([s](Complex z) { return ScaledComplex::from(s->eval(z)); });
}

AnalyticFunction AnalyticFunction::divided_by_power(int m) const {
  if (m == 0) return *this;
  auto self = std::make_shared<AnalyticFunction>(*this);
  AnalyticFunction out(
      [self, m](Complex z) {
        if (z == Complex(0.0)) {
          // Leading Taylor coefficient f^(m)(0) / m!.
          double fact = 1.0;
          for (int k = 2; k <= m; ++k) fact *= k;
          return ScaledComplex::from(self->derivative(m, 0.0) / fact);
        }
        ScaledComplex v = self->scaled(z);
        v.mantissa /= std::pow(z / std::abs(z), m);
        v.log_scale -= m * std::log(std::abs(z));
        return v;
      },
      {}, 0, singular_args_, atom_args_);
  out.log_derivative_ = [self, m](Complex z) -> std::optional<Complex> {
    if (z == Complex(0.0)) return std::nullopt;
    const auto l = self->log_derivative(z);
    if (!l) return std::nullopt;
    return *l - static_cast<double>(m) / z;
  };
  return out;
}

AnalyticFunction AnalyticFunction::scaled_by(Complex c) const {
  auto self = std::make_shared<AnalyticFunction>(*this);
  DerivativeFn d;
  if (derivative_) d = [self, c](int k, Complex z) { return c * self->derivative(k, z); };
  AnalyticFunction out(
      [self, c](Complex z) {
        ScaledComplex v = self->scaled(z);
        v.mantissa *= c;
        return v;
      },
      d, max_order_, singular_args_, atom_args_);
  out.log_derivative_ = [self](Complex z) { return self->log_derivative(z); };
  return out;
}

}  // namespace hardyfactor
