#include "hardyfactor/polynomial.hpp"

#include <algorithm>

namespace hardyfactor {

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a.is_zero() ? a : a.monic();
}

std::vector<std::pair<ExactPolynomial, int>> square_free_decomposition(const ExactPolynomial& p) {
  if (p.is_zero()) throw DomainError("square-free decomposition of the zero polynomial");
  std::vector<std::pair<ExactPolynomial, int>> out;
  if (*p.degree() == 0) return out;

  const ExactPolynomial f = p.monic();
  const ExactPolynomial df = f.derivative();
  ExactPolynomial a = gcd(f, df);
  ExactPolynomial b = divmod(f, a).first;
  ExactPolynomial c = divmod(df, a).first;
  ExactPolynomial d = c - b.derivative();
  for (int i = 1; *b.degree() > 0; ++i) {
    ExactPolynomial ai = gcd(b, d);
    if (*ai.degree() > 0) out.emplace_back(ai, i);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = c - b.derivative();
  }
  return out;
}

FloatPolynomial to_float(const ExactPolynomial& p, double* max_relative_error) {
  std::vector<Complex> v;
  v.reserve(p.coeffs().size());
  double worst = 0.0;
  for (const auto& c : p.coeffs()) {
    Complex x = c.to_complex();
    if (max_relative_error) {
      ExactComplex back(mpq_class(x.real()), mpq_class(x.imag()));
      ExactComplex diff = back - c;
      double err = std::sqrt(diff.norm().get_d());
      double mag = std::sqrt(c.norm().get_d());
      if (mag > 0) worst = std::max(worst, err / mag);
    }
    v.push_back(x);
  }
  if (max_relative_error) *max_relative_error = worst;
  return FloatPolynomial(std::move(v));
}

FloatPolynomial from_roots(const std::vector<Complex>& roots) {
  FloatPolynomial p = FloatPolynomial::constant(1.0);
  for (const auto& r : roots) p = p * FloatPolynomial::linear_factor(r);
  return p;
}

ScalarKind kind_of(const AnyPolynomial& p) {
  return std::holds_alternative<ExactPolynomial>(p) ? ScalarKind::exact : ScalarKind::floating;
}

namespace {

template <class P>
P apply(const P& p, const P& q, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return p + q;
    case ArithOp::sub:
      return p - q;
    case ArithOp::mul:
      return p * q;
    case ArithOp::scale:
      if (q.is_zero()) return {};
      if (*q.degree() != 0) throw DomainError("scale operand must be a constant polynomial");
      return p.scaled(q[0]);
  }
  return {};
}

}  // namespace

AnyPolynomial poly_arith(const AnyPolynomial& p, const AnyPolynomial& q, ArithOp op) {
  if (p.index() != q.index()) throw KindMismatchError("polynomial arithmetic on mixed scalar kinds");
  if (auto* ep = std::get_if<ExactPolynomial>(&p)) return apply(*ep, std::get<ExactPolynomial>(q), op);
  return apply(std::get<FloatPolynomial>(p), std::get<FloatPolynomial>(q), op);
}

}  // namespace hardyfactor
