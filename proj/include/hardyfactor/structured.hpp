#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/scaled_complex.hpp"

namespace hardyfactor {

// Atom points closer than this (in argument) are the same point.
inline constexpr double kAtomArgTolerance = 1e-12;

double normalize_arg(double t);  // into [0, 2*pi)

struct Atom {
  double arg = 0.0;
  Complex point = 1.0;  // exactly polar(1, arg)
  double mass = 0.0;
};

// Finite positive combination of point masses on the unit circle. Atoms are
// kept sorted by argument, with distinct points and positive masses.
class AtomicSingularMeasure {
 public:
  AtomicSingularMeasure() = default;
  // (arg, mass) pairs; coincident points are merged, masses must be > 0.
  explicit AtomicSingularMeasure(std::vector<std::pair<double, double>> arg_mass);

  static AtomicSingularMeasure single(double arg, double mass) { return AtomicSingularMeasure({{arg, mass}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;

  // -sum m_j (zeta_j + z)/(zeta_j - z), the logarithm of S_mu(z).
  Complex exponent(Complex z) const;

  friend AtomicSingularMeasure operator+(const AtomicSingularMeasure& a, const AtomicSingularMeasure& b);

 private:
  std::vector<Atom> atoms_;
};

// exp(-sum m_j (zeta_j + z)/(zeta_j - z)). Valid for |z| < 1 and on the
// circle away from atoms.
Complex singular_inner_eval(const AtomicSingularMeasure& mu, Complex z);

// Factor (z - point)^(-order) of a term at a unit-circle point: a pole for
// positive order, a boundary zero of multiplicity -order for negative order.
// High-order boundary zeros are kept in this form rather than expanded into
// the numerator, where rounding would scatter them into nearby spurious roots.
struct BoundaryPole {
  double arg = 0.0;
  Complex point = 1.0;
  int order = 0;
};

// (numerator / denominator) * S_mu. The denominator is stored factored as a
// monic base polynomial times boundary factors at atom points; the base has no
// roots in the open disk. Numerator roots at atom and pole points are moved
// into the boundary factors.
class StructuredTerm {
 public:
  StructuredTerm(FloatPolynomial numerator, FloatPolynomial denominator = FloatPolynomial::constant(1.0),
                 AtomicSingularMeasure measure = {}, std::vector<BoundaryPole> poles = {});

  const FloatPolynomial& numerator() const { return numerator_; }
  const FloatPolynomial& denominator_base() const { return base_; }
  const std::vector<BoundaryPole>& poles() const { return poles_; }
  const AtomicSingularMeasure& measure() const { return measure_; }
  // Expanded base * prod (z - zeta)^order over the poles, monic.
  FloatPolynomial denominator() const;
  // Numerator times the boundary zero factors.
  FloatPolynomial full_numerator() const;

  bool is_zero() const { return numerator_.is_zero(); }

  ScaledComplex eval_scaled(Complex z) const;
  StructuredTerm derivative() const;
  StructuredTerm scaled(Complex c) const;
  friend StructuredTerm operator*(const StructuredTerm& a, const StructuredTerm& b);

 private:
  struct Unchecked {};
  StructuredTerm(Unchecked, FloatPolynomial numerator, FloatPolynomial base, AtomicSingularMeasure measure,
                 std::vector<BoundaryPole> poles);

  FloatPolynomial numerator_;
  FloatPolynomial base_;
  AtomicSingularMeasure measure_;
  std::vector<BoundaryPole> poles_;
  // Arguments of base roots lying on the unit circle.
  std::vector<double> boundary_root_args_;

  // Moves numerator roots at the boundary factor points into the factors.
  void extract_boundary_zeros();
  bool mergeable_with(const StructuredTerm& other) const;

  friend class StructuredFunction;
};

// Finite sum of structured terms, evaluated in fixed term order. Closed under
// sums, products and differentiation. Terms sharing measure and denominator
// base are merged over a common boundary factor, so that exact cancellations
// happen in the coefficients instead of between evaluated terms.
class StructuredFunction {
 public:
  StructuredFunction() = default;
  explicit StructuredFunction(std::vector<StructuredTerm> terms);

  static StructuredFunction constant(Complex c);
  static StructuredFunction polynomial(const FloatPolynomial& p);
  static StructuredFunction singular_inner(const AtomicSingularMeasure& mu);
  // p * S_mu
  static StructuredFunction product(const FloatPolynomial& p, const AtomicSingularMeasure& mu);

  const std::vector<StructuredTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ScaledComplex eval_scaled(Complex z) const;
  Complex operator()(Complex z) const { return eval_scaled(z).value(); }

  StructuredFunction derivative() const;
  // f, f', ..., f^(order)
  std::vector<StructuredFunction> derivative_chain(int order) const;
  StructuredFunction scaled(Complex c) const;

  // Sorted, de-duplicated atom arguments over all terms: the only boundary
  // points that can carry singular mass.
  std::vector<double> atom_args() const;
  // Arguments of boundary points where evaluation is not allowed.
  std::vector<double> boundary_singular_args() const;

  friend StructuredFunction operator+(const StructuredFunction& a, const StructuredFunction& b);
  friend StructuredFunction operator-(const StructuredFunction& a, const StructuredFunction& b);
  friend StructuredFunction operator*(const StructuredFunction& a, const StructuredFunction& b);

 private:
  std::vector<StructuredTerm> terms_;
};

Complex structured_eval(const StructuredFunction& f, Complex z);
StructuredFunction structured_derivative(const StructuredFunction& f);
StructuredFunction structured_multiply(const StructuredFunction& f, const StructuredFunction& g);

enum class CombineMode { nontrivial, allow_trivial };

// sum lambda_j f_j by term concatenation; zero coefficients drop their terms.
StructuredFunction structured_combine(std::span<const StructuredFunction> fs, std::span<const Complex> lambdas,
                                      CombineMode mode = CombineMode::nontrivial);

// (theta - alpha) / (1 - conj(alpha) theta); a pointwise wrapper, since the
// quotient leaves the structured family.
class FrostmanShift {
 public:
  FrostmanShift(StructuredFunction base, Complex alpha);

  const StructuredFunction& base() const { return base_; }
  Complex alpha() const { return alpha_; }

  Complex eval(Complex z) const;
  // theta' (1 - |alpha|^2) / (1 - conj(alpha) theta)^2
  Complex derivative_eval(Complex z) const;

 private:
  StructuredFunction base_;
  StructuredFunction base_derivative_;
  Complex alpha_;
};

Complex frostman_eval(const FrostmanShift& shift, Complex z);
Complex frostman_derivative_eval(const FrostmanShift& shift, Complex z);

// Finite Blaschke product u * prod ((|a|/a)(a - z)/(1 - conj(a) z))^m, with the
// factor for a = 0 taken as z.
class BlaschkeProduct {
 public:
  BlaschkeProduct(std::vector<std::pair<Complex, int>> zeros, Complex unimodular_constant = 1.0);

  const std::vector<std::pair<Complex, int>>& zeros() const { return zeros_; }
  Complex unimodular_constant() const { return constant_; }
  // sum m_k (1 - |a_k|)
  double blaschke_sum() const;

  Complex eval(Complex z) const;

 private:
  std::vector<std::pair<Complex, int>> zeros_;
  Complex constant_;
};

}  // namespace hardyfactor
