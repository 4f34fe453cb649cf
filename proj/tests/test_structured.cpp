#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/random.hpp"
#include "hardyfactor/serialization.hpp"
#include "hardyfactor/structured.hpp"
#include "hardyfactor/wronskian.hpp"

using namespace hardyfactor;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight-line formula for (1 - z)^k exp(-c (1 + z)/(1 - z)).
Complex direct_power_times_atom(int k, double c, Complex z) {
  return std::pow(1.0 - z, k) * std::exp(-c * (1.0 + z) / (1.0 - z));
}

FloatPolynomial one_minus_z_pow(unsigned k) { return FloatPolynomial{1.0, -1.0}.pow(k); }

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Complex central_difference(const StructuredFunction& f, Complex z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("structured") {
  TEST_CASE("measure construction normalizes atoms") {
    AtomicSingularMeasure mu({{2.0 * kPi, 0.5}, {0.0, 0.25}, {kPi, 1.0}});
    REQUIRE(mu.atoms().size() == 2);
    CHECK(mu.atoms()[0].arg == 0.0);
    CHECK(mu.atoms()[0].mass == doctest::Approx(0.75));
    CHECK(std::abs(mu.atoms()[1].point) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mu.total_mass() == doctest::Approx(1.75));
    CHECK_THROWS_AS(AtomicSingularMeasure({{0.0, 0.0}}), ParameterError);
    CHECK(AtomicSingularMeasure().total_mass() == 0.0);
  }

  TEST_CASE("singular inner examples") {
    const Complex z(0.3, -0.4);
    CHECK(singular_inner_eval(AtomicSingularMeasure(), z) == Complex(1.0));
    for (double c : {0.25, 1.0, 4.0})
      for (double r : {0.0, 0.5, 0.9, 0.99}) {
        const double expected = std::exp(-c * (1 + r) / (1 - r));
        CHECK(std::abs(singular_inner_eval(AtomicSingularMeasure::single(0.0, c), r)) ==
              doctest::Approx(expected).epsilon(1e-13));
      }
    const AtomicSingularMeasure two({{0.0, 0.5}, {kPi, 0.5}});
    CHECK(std::abs(singular_inner_eval(two, 0.0) - std::exp(-1.0)) < 1e-15);
    CHECK_THROWS_AS(singular_inner_eval(AtomicSingularMeasure::single(0.0, 1.0), 1.0), EvaluationSingularityError);
  }

  TEST_CASE("boundary unimodularity away from atoms") {
    const AtomicSingularMeasure mu({{0.3, 1.0}, {2.0, 0.7}, {4.5, 2.0}});
    Rng rng(21);
    int checked = 0;
    while (checked < 200) {
      const double t = rng.uniform(0.0, 2.0 * kPi);
      bool near = false;
      for (const auto& a : mu.atoms()) near = near || std::abs(std::remainder(t - a.arg, 2 * kPi)) < 1e-3;
      if (near) continue;
      CHECK(std::abs(std::abs(singular_inner_eval(mu, std::polar(1.0, t))) - 1.0) <= 1e-10);
      ++checked;
    }
  }

  TEST_CASE("structured evaluation examples") {
    CHECK(StructuredFunction::constant(1.0)(0.3) == Complex(1.0));
    for (double c : {0.5, 2.0})
      for (double r : {0.1, 0.6, 0.95}) {
        const auto f = StructuredFunction::product(one_minus_z_pow(4), AtomicSingularMeasure::single(0.0, c));
        // Expanded (1 - z)^4 cancels near 1; allow for the condition number of the sum.
        const double cond = std::pow(1 + r, 4) / std::pow(1 - r, 4);
        CHECK(rel_err(f(r), std::pow(1 - r, 4) * std::exp(-c * (1 + r) / (1 - r))) <= 1e-13 * cond);
      }
    // Random structured function against a straight-line re-evaluation.
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
      const double c1 = rng.uniform(0.1, 2.0), c2 = rng.uniform(0.1, 2.0);
      const double t1 = rng.uniform(0.0, 2 * kPi), t2 = rng.uniform(0.0, 2 * kPi);
      const Complex a0(rng.normal(), rng.normal()), a1(rng.normal(), rng.normal());
      const Complex pole = std::polar(rng.uniform(1.2, 3.0), rng.uniform(0.0, 2 * kPi));
      const StructuredTerm t(FloatPolynomial{a0, a1}, FloatPolynomial{-pole, 1.0}, AtomicSingularMeasure::single(t1, c1));
      const StructuredTerm u(FloatPolynomial{1.0, 0.0, a0}, FloatPolynomial::constant(1.0),
                             AtomicSingularMeasure::single(t2, c2));
      const StructuredFunction f({t, u});
      const Complex z(0.4, 0.2);
      const Complex z1 = std::polar(1.0, t1), z2 = std::polar(1.0, t2);
      const Complex direct = (a0 + a1 * z) / (z - pole) * std::exp(-c1 * (z1 + z) / (z1 - z)) +
                             (1.0 + a0 * z * z) * std::exp(-c2 * (z2 + z) / (z2 - z));
      CHECK(rel_err(f(z), direct) <= 1e-12);
    }
    CHECK_THROWS_AS(StructuredTerm(FloatPolynomial{1.0}, FloatPolynomial{-0.5, 1.0}), ParameterError);
  }

  TEST_CASE("derivative examples") {
    const double c = 0.7;
    const auto s = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, c));
    const Complex z(0.0, 0.5);
    const Complex ds = s.derivative()(z);
    CHECK(rel_err(ds, -2.0 * c / ((1.0 - z) * (1.0 - z)) * s(z)) <= 1e-12);
    CHECK(rel_err(ds, central_difference(s, z)) <= 1e-6);

    CHECK(StructuredFunction::constant(1.0).derivative()(0.2) == Complex(0.0));

    const auto h = StructuredFunction::product(one_minus_z_pow(4), AtomicSingularMeasure::single(0.0, c));
    for (Complex w : {Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(0.8, 0.0)}) {
      const Complex hand = (-4.0 * std::pow(1.0 - w, 3) - 2.0 * c * std::pow(1.0 - w, 2)) *
                           std::exp(-c * (1.0 + w) / (1.0 - w));
      CHECK(rel_err(h.derivative()(w), hand) <= 1e-11);
      CHECK(rel_err(h.derivative()(w), central_difference(h, w)) <= 1e-6);
    }
    // Second derivative by differencing the first.
    const Complex w(0.2, -0.3);
    CHECK(rel_err(h.derivative().derivative()(w), central_difference(h.derivative(), w)) <= 1e-6);
  }

  TEST_CASE("combination examples") {
    const auto theta = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 1.0));
    const auto p = StructuredFunction::product(FloatPolynomial{0.5, Complex(0, 1)}, AtomicSingularMeasure::single(1.0, 0.3));
    std::vector<StructuredFunction> fs{theta, p};
    const std::vector<Complex> first{1.0, 0.0};
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.in_disk(0.95);
      CHECK(structured_combine(fs, first)(z) == theta(z));
      std::vector<StructuredFunction> pair{p, p};
      const std::vector<Complex> opposite{1.0, -1.0};
      CHECK(std::abs(structured_combine(pair, opposite)(z)) <= 1e-15 * std::max(1.0, std::abs(p(z))));
    }
    const std::vector<Complex> zero{0.0, 0.0};
    CHECK_THROWS_AS(structured_combine(fs, zero), TrivialCombinationError);
    CHECK(structured_combine(fs, zero, CombineMode::allow_trivial).is_zero());

    // theta - alpha against the Frostman identity.
    const Complex alpha(0.3, 0.0);
    std::vector<StructuredFunction> tv{theta, StructuredFunction::constant(1.0)};
    const std::vector<Complex> l{1.0, -alpha};
    const auto g = structured_combine(tv, l);
    const FrostmanShift shift(theta, alpha);
    for (int i = 0; i < 50; ++i) {
      const Complex z = rng.in_disk(0.99);
      CHECK(std::abs(g(z) - shift.eval(z) * (1.0 - std::conj(alpha) * theta(z))) <= 1e-13);
    }
  }

  TEST_CASE("products") {
    const auto a = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 0.4));
    const auto b = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 0.9));
    const auto ab = a * b;
    REQUIRE(ab.terms().size() == 1);
    REQUIRE(ab.terms()[0].measure().atoms().size() == 1);
    CHECK(ab.terms()[0].measure().total_mass() == doctest::Approx(1.3).epsilon(1e-14));
    const auto one = StructuredFunction::constant(1.0);
    const Complex z(0.1, 0.7);
    CHECK(rel_err((a * one)(z), a(z)) <= 1e-15);

    // W(S, zS) = S^2.
    const auto s = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 1.0));
    const auto zs = StructuredFunction::product(FloatPolynomial{0.0, 1.0}, AtomicSingularMeasure::single(0.0, 1.0));
    std::vector<StructuredFunction> fs{s, zs};
    const auto w = wronskian_structured(fs);
    Rng rng(24);
    for (int i = 0; i < 20; ++i) {
      const Complex x = rng.in_disk(0.9);
      CHECK(rel_err(w(x), s(x) * s(x)) <= 1e-9);
    }
  }

  TEST_CASE("algebraic properties hold pointwise") {
    Rng rng(25);
    auto random_f = [&]() {
      const Complex a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
      return StructuredFunction::product(FloatPolynomial{a, b, 0.5},
                                         AtomicSingularMeasure::single(rng.uniform(0, 2 * kPi), rng.uniform(0.1, 1.5)));
    };
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_f(), g = random_f();
      std::vector<StructuredFunction> fs{f, g};
      const std::vector<Complex> l{Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal())};
      std::vector<StructuredFunction> dfs{f.derivative(), g.derivative()};
      const auto lhs = structured_combine(fs, l).derivative();
      const auto rhs = structured_combine(dfs, l);
      const auto prod = (f * g).derivative();
      const auto rule = f.derivative() * g + f * g.derivative();
      for (int i = 0; i < 5; ++i) {
        const Complex z = rng.in_disk(0.8);
        CHECK(std::abs(lhs(z) - rhs(z)) <= 1e-10 * std::max(1.0, std::abs(rhs(z))));
        CHECK(std::abs(prod(z) - rule(z)) <= 1e-9 * std::max(1.0, std::abs(rule(z))));
      }
      const double mass = (f * g).terms()[0].measure().total_mass();
      CHECK(std::abs(mass - f.terms()[0].measure().total_mass() - g.terms()[0].measure().total_mass()) <= 1e-14);
    }
  }

  TEST_CASE("maximum modulus for inner objects") {
    const AtomicSingularMeasure mu({{0.0, 1.0}, {2.0, 0.5}});
    const auto theta = StructuredFunction::singular_inner(mu);
    const FrostmanShift shift(theta, Complex(0.2, -0.4));
    const BlaschkeProduct b({{Complex(0.5, 0.1), 2}, {Complex(-0.3, 0.6), 1}}, std::polar(1.0, 0.4));
    Rng rng(26);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = rng.in_disk(0.999);
      REQUIRE(std::abs(singular_inner_eval(mu, z)) <= 1.0);
      REQUIRE(std::abs(shift.eval(z)) <= 1.0 + 1e-15);
      REQUIRE(std::abs(b.eval(z)) <= 1.0 + 1e-15);
    }
  }

  TEST_CASE("Frostman shift") {
    const auto theta = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 1.0));
    CHECK_THROWS_AS(FrostmanShift(theta, 1.0), ParameterError);
    const FrostmanShift identity(theta, 0.0);
    const Complex z(0.2, 0.6);
    CHECK(identity.eval(z) == theta(z));

    const Complex alpha(0.3, 0.0);
    const FrostmanShift shift(theta, alpha);
    Rng rng(27);
    for (int i = 0; i < 100; ++i) {
      const Complex x = rng.in_disk(0.999);
      const Complex residual = (theta(x) - alpha) - shift.eval(x) * (1.0 - std::conj(alpha) * theta(x));
      CHECK(std::abs(residual) <= 1e-12);
    }
    const Complex w(0.2, -0.4);
    const double h = 1e-5;
    const Complex fd = (shift.eval(w + h) - shift.eval(w - h)) / (2.0 * h);
    CHECK(rel_err(shift.derivative_eval(w), fd) <= 1e-6);
    CHECK(frostman_eval(shift, w) == shift.eval(w));
  }

  TEST_CASE("Blaschke products") {
    const BlaschkeProduct b({{Complex(0.5, 0.1), 2}, {Complex(0.0), 1}, {Complex(-0.3, 0.6), 1}});
    Rng rng(28);
    for (int i = 0; i < 64; ++i)
      CHECK(std::abs(std::abs(b.eval(std::polar(1.0, rng.uniform(0, 2 * kPi)))) - 1.0) <= 1e-10);
    CHECK(b.blaschke_sum() == doctest::Approx(2 * (1 - std::abs(Complex(0.5, 0.1))) + 1 + 1 - std::abs(Complex(-0.3, 0.6))));
    CHECK(std::abs(b.eval(Complex(0.5, 0.1))) < 1e-15);
    CHECK_THROWS_AS(BlaschkeProduct({{Complex(1.0), 1}}), ParameterError);
  }

  TEST_CASE("json round trip") {
    const auto f = StructuredFunction::product(one_minus_z_pow(4), AtomicSingularMeasure({{0.0, 1.0}, {1.5, 0.5}}));
    const auto g = f.derivative() + StructuredFunction::constant(Complex(0.0, 2.0));
    const Json j = to_json(g);
    const auto back = structured_from_json(j, "");
    const Complex z(0.3, -0.2);
    CHECK(rel_err(back(z), g(z)) <= 1e-13);
    CHECK(to_json(back) == j);
    const Json shorthand = {{"polynomial", {{"kind", "float"}, {"coeffs", {{1, 0}, {-1, 0}}}}},
                            {"measure", {{"atoms", {{{"arg", 0.0}, {"mass", 2.0}}}}}}};
    CHECK(rel_err(structured_from_json(shorthand, "")(z), direct_power_times_atom(1, 2.0, z)) <= 1e-13);
    CHECK_THROWS_AS(measure_from_json(Json{{"atoms", {{{"arg", 0.0}, {"mass", -1.0}}}}}, "/theta/measure"), ConfigError);
  }
}
