#include "hardyfactor/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "hardyfactor/wronskian.hpp"

namespace hardyfactor {

namespace {

ExactPolynomial random_exact(Rng& rng, int degree) {
  std::vector<ExactComplex> c;
  for (int k = 0; k <= degree; ++k)
    c.emplace_back(mpq_class(rng.integer(-4, 4), rng.integer(1, 3)), mpq_class(rng.integer(-4, 4), rng.integer(1, 3)));
  if (c.back().is_zero()) c.back() = ExactComplex(1);
  return ExactPolynomial(std::move(c));
}

ExactComplex planted_point(Rng& rng) {
  for (;;) {
    const long re = rng.integer(-7, 7), im = rng.integer(-7, 7);
    if (re * re + im * im < 0.81 * 64) return ExactComplex(mpq_class(re, 8), mpq_class(im, 8));
  }
}

}  // namespace

PolynomialTuple random_polynomial_tuple(Rng& rng, int max_n, int max_degree) {
  for (;;) {
    PolynomialTuple t;
    t.n = static_cast<int>(rng.integer(1, max_n));
    t.planted_root = planted_point(rng);
    const int free_degree = std::max(0, max_degree - (t.n + 1));
    const ExactPolynomial planted = ExactPolynomial::linear_factor(t.planted_root).pow(static_cast<unsigned>(t.n + 1));
    t.ps.push_back(planted * random_exact(rng, static_cast<int>(rng.integer(0, free_degree))));
    for (int j = 1; j <= t.n; ++j) t.ps.push_back(random_exact(rng, static_cast<int>(rng.integer(0, max_degree))));
    if (!wronskian_exact(t.ps).is_zero()) return t;
  }
}

std::vector<std::vector<ExactComplex>> lambda_draws(Rng& rng, int n, int count) {
  std::vector<std::vector<ExactComplex>> out;
  for (int s = 0; s < count; ++s) {
    std::vector<ExactComplex> l(n + 1);
    if (s <= n) {
      l[s] = ExactComplex(1);
    } else {
      bool any = false;
      while (!any) {
        for (auto& x : l) {
          x = rng.chance(1.0 / 3.0) ? ExactComplex(0)
                                    : ExactComplex(mpq_class(rng.integer(-2, 2)), mpq_class(rng.integer(-2, 2)));
          any = any || !x.is_zero();
        }
      }
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<StructuredFunction> random_structured_tuple(Rng& rng, int max_n) {
  const int n = static_cast<int>(rng.integer(1, max_n));
  const double args[2] = {0.0, rng.uniform(0.5, 5.5)};
  std::vector<StructuredFunction> fs;
  for (int j = 0; j <= n; ++j) {
    std::vector<Complex> c;
    const int degree = static_cast<int>(rng.integer(0, 3));
    for (int k = 0; k <= degree; ++k) c.emplace_back(rng.normal(), rng.normal());
    const double arg = args[rng.integer(0, 1)];
    fs.push_back(StructuredFunction::product(FloatPolynomial(std::move(c)),
                                             AtomicSingularMeasure::single(arg, rng.uniform(0.2, 1.5))));
  }
  return fs;
}

StructuredFunction atom_function(double arg, double mass) {
  return StructuredFunction::singular_inner(AtomicSingularMeasure::single(arg, mass));
}

StructuredFunction power_times_atom(int power, double arg, double mass) {
  const FloatPolynomial factor{1.0, -std::conj(std::polar(1.0, arg))};
  return StructuredFunction::product(factor.pow(static_cast<unsigned>(power)), AtomicSingularMeasure::single(arg, mass));
}

StructuredFunction times_z_power(const StructuredFunction& f, int k) {
  return f * StructuredFunction::polynomial(FloatPolynomial::monomial(static_cast<std::size_t>(k)));
}

}  // namespace hardyfactor
