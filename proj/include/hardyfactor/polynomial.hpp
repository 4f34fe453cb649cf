#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/exact_complex.hpp"

namespace hardyfactor {

enum class ScalarKind { exact, floating };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr ScalarKind kind = ScalarKind::exact;
  static bool is_zero(const ExactComplex& s) { return s.is_zero(); }
  static Complex to_complex(const ExactComplex& s) { return s.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr ScalarKind kind = ScalarKind::floating;
  static bool is_zero(const Complex& s) { return s == Complex(0.0, 0.0); }
  static Complex to_complex(const Complex& s) { return s; }
};

// Dense univariate polynomial, coefficients in ascending degree. The zero
// polynomial is the empty coefficient list and has no degree.
// Horner's scheme with error-free transformations (TwoSum, FMA-based
// TwoProd); the accumulated rounding errors are run through a second Horner
// pass and added back, giving roughly twice the working precision.
inline Complex compensated_horner(const std::vector<Complex>& c, Complex z) {
  auto two_sum = [](double a, double b, double& e) {
    const double s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
    return s;
  };
  auto two_prod = [](double a, double b, double& e) {
    const double p = a * b;
    e = std::fma(a, b, -p);
    return p;
  };
  double ar = 0.0, ai = 0.0, er = 0.0, ei = 0.0;
  const double zr = z.real(), zi = z.imag();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    double e1, e2, e3, e4, f1, f2, g1, g2;
    const double p1 = two_prod(ar, zr, e1), p2 = two_prod(ai, zi, e2);
    const double p3 = two_prod(ar, zi, e3), p4 = two_prod(ai, zr, e4);
    const double s1 = two_sum(p1, -p2, f1), s2 = two_sum(s1, it->real(), f2);
    const double t1 = two_sum(p3, p4, g1), t2 = two_sum(t1, it->imag(), g2);
    const double nr = er * zr - ei * zi + (e1 - e2 + f1 + f2);
    const double ni = er * zi + ei * zr + (e3 + e4 + g1 + g2);
    er = nr;
    ei = ni;
    ar = s2;
    ai = t2;
  }
  return {ar + er, ai + ei};
}

template <class S>
class Polynomial {
 public:
  using Scalar = S;
  static constexpr ScalarKind kind = ScalarTraits<S>::kind;

  Polynomial() = default;
  explicit Polynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<S> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const S& c) { return Polynomial({c}); }
  static Polynomial monomial(std::size_t k, const S& c = S(1)) {
    std::vector<S> v(k + 1, S(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }
  // Monic (z - root).
  static Polynomial linear_factor(const S& root) { return Polynomial({-root, S(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  const std::vector<S>& coeffs() const { return coeffs_; }
  const S& operator[](std::size_t k) const { return coeffs_[k]; }
  const S& leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<S> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * S(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial derivative(int order) const {
    Polynomial p = *this;
    for (int k = 0; k < order; ++k) p = p.derivative();
    return p;
  }

  // Horner evaluation; compensated for complex coefficients at a complex
  // argument, which keeps values near high-order roots accurate.
  template <class Z>
  Z operator()(const Z& z) const {
    if constexpr (std::is_same_v<S, Complex> && std::is_same_v<Z, Complex>) return compensated_horner(coeffs_, z);
    Z acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      if constexpr (std::is_same_v<Z, S>)
        acc = acc * z + *it;
      else
        acc = acc * z + Z(ScalarTraits<S>::to_complex(*it));
    }
    return acc;
  }

  Polynomial scaled(const S& c) const {
    if (ScalarTraits<S>::is_zero(c)) return {};
    std::vector<S> v = coeffs_;
    for (auto& x : v) x = x * c;
    return Polynomial(std::move(v));
  }

  Polynomial monic() const { return scaled(S(1) / leading()); }

  Polynomial operator-() const { return scaled(S(-1)); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const auto& big = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    const auto& small = a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
    std::vector<S> v = big;
    for (std::size_t k = 0; k < small.size(); ++k) v[k] = v[k] + small[k];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> v(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(S(1)), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      base = base * base;
      e >>= 1u;
    }
    return result;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && ScalarTraits<S>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<S> coeffs_;
};

using ExactPolynomial = Polynomial<ExactComplex>;
using FloatPolynomial = Polynomial<Complex>;

// Long division over the field of scalars; b must be nonzero.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.is_zero() || *a.degree() < *b.degree()) return {Polynomial<S>{}, a};
  std::vector<S> rem = a.coeffs();
  const std::size_t db = *b.degree();
  std::vector<S> quot(rem.size() - db, S(0));
  const S inv_lead = S(1) / b.leading();
  for (std::size_t k = rem.size(); k-- > db;) {
    S q = rem[k] * inv_lead;
    quot[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - q * b[j];
  }
  rem.resize(db);
  return {Polynomial<S>(std::move(quot)), Polynomial<S>(std::move(rem))};
}

// Monic greatest common divisor over Q(i).
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);

// Yun's square-free decomposition: returns monic, pairwise coprime,
// square-free factors with their multiplicities; the product of
// factor^multiplicity equals p up to its leading coefficient.
std::vector<std::pair<ExactPolynomial, int>> square_free_decomposition(const ExactPolynomial& p);

// Coefficientwise rounding; `max_relative_error` receives the largest
// relative rounding error over the coefficients when non-null.
FloatPolynomial to_float(const ExactPolynomial& p, double* max_relative_error = nullptr);

// Expanded monic product of (z - r) over the roots, with repetition.
FloatPolynomial from_roots(const std::vector<Complex>& roots);

// Runtime-tagged polynomial for interfaces that accept either kind.
using AnyPolynomial = std::variant<ExactPolynomial, FloatPolynomial>;

enum class ArithOp { add, sub, mul, scale };

// For ArithOp::scale, q must be a constant (or zero) polynomial whose value
// multiplies p. Mixed kinds raise KindMismatchError.
AnyPolynomial poly_arith(const AnyPolynomial& p, const AnyPolynomial& q, ArithOp op);

ScalarKind kind_of(const AnyPolynomial& p);

}  // namespace hardyfactor
