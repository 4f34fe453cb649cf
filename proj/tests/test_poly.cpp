#include <doctest.h>

#include <cmath>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/poly_roots.hpp"
#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/random.hpp"
#include "hardyfactor/serialization.hpp"
#include "hardyfactor/wronskian.hpp"

using namespace hardyfactor;

namespace {

ExactComplex q(long num, long den = 1, long inum = 0, long iden = 1) {
  return ExactComplex(mpq_class(num, den), mpq_class(inum, iden));
}

ExactComplex random_gaussian_rational(Rng& rng) {
  return q(rng.integer(-9, 9), rng.integer(1, 7), rng.integer(-9, 9), rng.integer(1, 7));
}

ExactPolynomial random_exact(Rng& rng, int degree) {
  std::vector<ExactComplex> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_gaussian_rational(rng));
  if (c.back().is_zero()) c.back() = 1;
  return ExactPolynomial(c);
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("gaussian rationals stay canonical") {
    ExactComplex a(mpq_class(6, 4), mpq_class(-2, -8));
    CHECK(a.real() == mpq_class(3, 2));
    CHECK(a.imag().get_den() == 4);
    CHECK(rational_to_string(mpq_class(3)) == "3/1");
    CHECK(parse_rational("-0.25") == mpq_class(-1, 4));
    CHECK(parse_rational("0123") == mpq_class(123));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK((q(1, 2, 1, 3) * q(1, 2, 1, 3).inverse()) == ExactComplex(1));
    CHECK_THROWS_AS(ExactComplex(0).inverse(), DomainError);
  }

  TEST_CASE("arithmetic examples") {
    const ExactPolynomial one_plus_z{1, 1}, one_minus_z{1, -1};
    CHECK(one_plus_z * one_minus_z == ExactPolynomial{1, 0, -1});
    const ExactPolynomial p{q(2, 3), 0, q(1, 1, 5, 1)};
    CHECK(p + ExactPolynomial{} == p);
    const ExactPolynomial s{1, 0, 1};
    const ExactPolynomial s2 = s * s;
    CHECK(s2 == ExactPolynomial{1, 0, 2, 0, 1});
    CHECK(s2.degree() == 4u);
    CHECK(!ExactPolynomial{}.degree().has_value());
  }

  TEST_CASE("poly_arith checks kinds") {
    const AnyPolynomial e = ExactPolynomial{1, 1};
    const AnyPolynomial f = FloatPolynomial{1.0, 1.0};
    CHECK_THROWS_AS(poly_arith(e, f, ArithOp::add), KindMismatchError);
    const auto prod = std::get<ExactPolynomial>(poly_arith(e, ExactPolynomial{1, -1}, ArithOp::mul));
    CHECK(prod == ExactPolynomial{1, 0, -1});
    const auto scaled = std::get<ExactPolynomial>(poly_arith(e, ExactPolynomial{3}, ArithOp::scale));
    CHECK(scaled == ExactPolynomial{3, 3});
    CHECK_THROWS_AS(poly_arith(e, ExactPolynomial{1, 1}, ArithOp::scale), DomainError);
  }

  TEST_CASE("derivative examples") {
    CHECK(ExactPolynomial::monomial(3).derivative() == ExactPolynomial{0, 0, 3});
    CHECK(ExactPolynomial{5}.derivative().is_zero());
    const FloatPolynomial p = FloatPolynomial{1.0, -1.0}.pow(4);
    const FloatPolynomial dp = p.derivative();
    const FloatPolynomial expected = FloatPolynomial{1.0, -1.0}.pow(3).scaled(-4.0);
    const Complex z(0.3, 0.1);
    CHECK(std::abs(dp(z) - expected(z)) <= 1e-14);
    const double h = 1e-5;
    const Complex fd = (p(z + h) - p(z - h)) / (2.0 * h);
    CHECK(std::abs(fd - dp(z)) <= 1e-8 * std::abs(dp(z)));
  }

  TEST_CASE("evaluation examples") {
    CHECK(FloatPolynomial{1.0, 0.0, 1.0}(Complex(0.0, 1.0)) == Complex(0.0));
    CHECK(ExactPolynomial{1, 0, 1}(q(0, 1, 1, 1)).is_zero());
    CHECK(FloatPolynomial{}(Complex(0.3, 0.2)) == Complex(0.0));
    std::vector<ExactPolynomial> ps{ExactPolynomial{1}, ExactPolynomial{0, 1}, ExactPolynomial{0, 0, 1}};
    CHECK(wronskian_exact(ps)(ExactComplex(mpq_class(7, 10))) == ExactComplex(2));
  }

  TEST_CASE("randomized ring axioms") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
      const ExactComplex a = random_gaussian_rational(rng), b = random_gaussian_rational(rng),
                         c = random_gaussian_rational(rng);
      REQUIRE(((a + b) * c) == (a * c + b * c));
      REQUIRE((a * b) == (b * a));
      REQUIRE(((a * b) * c) == (a * (b * c)));
    }
    for (int i = 0; i < 1000; ++i) {
      const auto p = random_exact(rng, static_cast<int>(rng.integer(0, 4)));
      const auto r = random_exact(rng, static_cast<int>(rng.integer(0, 4)));
      const auto s = random_exact(rng, static_cast<int>(rng.integer(0, 4)));
      REQUIRE((p + r) * s == p * s + r * s);
      REQUIRE((p * r).degree().value() == p.degree().value() + r.degree().value());
    }
  }

  TEST_CASE("derivative is additive and obeys Leibniz exactly") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
      const auto p = random_exact(rng, static_cast<int>(rng.integer(0, 6)));
      const auto r = random_exact(rng, static_cast<int>(rng.integer(0, 6)));
      REQUIRE((p + r).derivative() == p.derivative() + r.derivative());
      REQUIRE((p * r).derivative() == p.derivative() * r + p * r.derivative());
    }
  }

  TEST_CASE("square-free decomposition recovers multiplicities") {
    const ExactPolynomial a = ExactPolynomial::linear_factor(q(1, 2));
    const ExactPolynomial b = ExactPolynomial::linear_factor(q(0, 1, 1, 3));
    const ExactPolynomial p = a.pow(3) * b * b;
    const auto parts = square_free_decomposition(p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == b);
    CHECK(parts[0].second == 2);
    CHECK(parts[1].first == a);
    CHECK(parts[1].second == 3);
  }

  TEST_CASE("root examples") {
    const auto r1 = poly_roots(FloatPolynomial{-1.0, 0.0, 1.0});
    REQUIRE(r1.roots.size() == 2);
    CHECK(std::abs(r1.roots[0].location - Complex(1.0)) < 1e-14);
    CHECK(std::abs(r1.roots[1].location - Complex(-1.0)) < 1e-14);
    CHECK(r1.roots[0].multiplicity == 1);

    const auto r3 = poly_roots(FloatPolynomial{-0.5, 1.0}.pow(3));
    REQUIRE(r3.roots.size() == 1);
    CHECK(r3.roots[0].multiplicity == 3);
    CHECK(std::abs(r3.roots[0].location - Complex(0.5)) < 1e-9);

    const auto rw = poly_roots(ExactPolynomial{0, 2});
    REQUIRE(rw.roots.size() == 1);
    CHECK(rw.roots[0].location == Complex(0.0));
    CHECK(rw.roots[0].multiplicity == 1);

    CHECK_THROWS_AS(poly_roots(FloatPolynomial{}), DomainError);
  }

  TEST_CASE("residual bounds hold and multiplicities sum to the degree") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      const auto p = to_float(random_exact(rng, static_cast<int>(rng.integer(1, 8))));
      const auto rs = poly_roots(p);
      CHECK(rs.total_multiplicity() == static_cast<int>(*p.degree()));
      for (const auto& r : rs.roots) CHECK(std::abs(p(r.location)) <= r.residual);
    }
  }

  TEST_CASE("roots re-expand to the monic coefficients") {
    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
      std::vector<Complex> roots;
      const int d = static_cast<int>(rng.integer(1, 8));
      for (int k = 0; k < d; ++k) roots.push_back(rng.in_disk(0.95));
      const FloatPolynomial p = from_roots(roots);
      std::vector<Complex> found;
      for (const auto& r : poly_roots(p).roots)
        for (int m = 0; m < r.multiplicity; ++m) found.push_back(r.location);
      const FloatPolynomial back = from_roots(found);
      REQUIRE(back.coeffs().size() == p.coeffs().size());
      double scale = 0.0;
      for (auto c : p.coeffs()) scale = std::max(scale, std::abs(c));
      for (std::size_t k = 0; k < p.coeffs().size(); ++k) CHECK(std::abs(back[k] - p[k]) <= 1e-8 * scale);
    }
  }

  TEST_CASE("exact multiplicities from the exact path") {
    const ExactPolynomial a = ExactPolynomial::linear_factor(q(1, 3, 1, 5));
    const ExactPolynomial b = ExactPolynomial::linear_factor(q(-1, 2));
    const auto rs = poly_roots(a.pow(5) * b.pow(2));
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.roots[0].multiplicity == 5);
    CHECK(rs.roots[1].multiplicity == 2);
    CHECK(std::abs(rs.roots[0].location - Complex(1.0 / 3, 0.2)) < 1e-12);
  }

  TEST_CASE("json round trip") {
    const ExactPolynomial p{q(1, 2, -3, 4), 0, q(7)};
    const Json j = to_json(p);
    CHECK(j["kind"] == "exact");
    CHECK(j["coeffs"][0][0] == "1/2");
    CHECK(j["coeffs"][2][1] == "0/1");
    CHECK(exact_polynomial_from_json(j, "") == p);
    const FloatPolynomial f{Complex(0.25, -1.5), 2.0};
    CHECK(float_polynomial_from_json(to_json(f), "") == f);
    CHECK_THROWS_AS(polynomial_from_json(Json{{"kind", "exact"}, {"coeffs", {{0.5, 0}}}}, "/functions/0"), ConfigError);
  }
}
