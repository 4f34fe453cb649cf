#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/factor.hpp"
#include "hardyfactor/random.hpp"

using namespace hardyfactor;

namespace {

constexpr double kPi = std::numbers::pi;

StructuredFunction atom(double arg, double c) {
  return StructuredFunction::singular_inner(AtomicSingularMeasure::single(arg, c));
}

StructuredFunction power_times_atom(unsigned n, double c) {
  return StructuredFunction::product(FloatPolynomial{1.0, -1.0}.pow(n), AtomicSingularMeasure::single(0.0, c));
}

// Independent midpoint-rule mean of |g| over |z| = r.
template <class G>
double midpoint_mean_abs(G g, double r, int n) {
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += std::abs(g(std::polar(r, 2.0 * kPi / n * (k + 0.5))));
  return sum / n;
}

}  // namespace

TEST_SUITE("factor") {
  TEST_CASE("circle mean examples") {
    for (double c : {0.5, 1.0, 3.0})
      for (double r : {0.3, 0.9, 0.99}) {
        const auto m = circle_mean_log_modulus(AnalyticFunction::from(atom(0.0, c)), r);
        CHECK(m.value == doctest::Approx(-c).epsilon(1e-8));
      }
    CHECK(circle_mean_log_modulus(AnalyticFunction::from(FloatPolynomial{2.0}), 0.7).value ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const auto lin = AnalyticFunction::from(FloatPolynomial{-0.5, 1.0});
    CHECK(circle_mean_log_modulus(lin, 0.9).value == doctest::Approx(std::log(0.9)).epsilon(1e-9));
    CHECK(circle_mean_log_modulus(lin, 0.3).value == doctest::Approx(std::log(0.5)).epsilon(1e-9));
    // Boundary circle: S is unimodular off the atom.
    CHECK(std::abs(circle_mean_log_modulus(AnalyticFunction::from(atom(0.0, 1.0)), 1.0).value) <= 1e-6);
    CHECK_THROWS_AS(circle_mean_log_modulus(lin, 0.5), Error);
  }

  TEST_CASE("atom mass examples") {
    for (double c : {0.5, 2.0}) {
      const auto f = AnalyticFunction::from(atom(0.0, c));
      const auto at1 = atom_mass_at(f, 0.0);
      for (double v : at1.per_radius) CHECK(v == doctest::Approx(c).epsilon(1e-12));
      CHECK(at1.mass == doctest::Approx(c).epsilon(1e-10));
      const auto opposite = atom_mass_at(f, kPi);
      // Oracle: log|f(-r)| = -c (1 - r)/(1 + r).
      const std::vector<double> radii = radii_ladder();
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        CHECK(opposite.per_radius[i] == doctest::Approx(c * (1 - r) * (1 - r) / ((1 + r) * (1 + r))).epsilon(1e-9));
      }
      CHECK(opposite.mass <= 1e-6);
    }
    const double c = 1.0;
    const auto dh = AnalyticFunction::from(power_times_atom(4, c).derivative());
    CHECK(atom_mass_at(dh, 0.0).mass == doctest::Approx(c).epsilon(0.02));
    CHECK(atom_mass_at(AnalyticFunction::from(power_times_atom(4, c)), 0.0).mass == doctest::Approx(c).epsilon(0.02));
  }

  TEST_CASE("total singular mass examples") {
    for (double c : {0.5, 1.0, 2.0}) {
      const auto e = total_singular_mass(AnalyticFunction::from(atom(0.0, c)), {});
      CHECK(e.total_mass == doctest::Approx(c).epsilon(1e-4));
      CHECK(e.extrapolated);
      REQUIRE(e.atoms.size() == 1);
      CHECK(e.atoms[0].mass == doctest::Approx(c).epsilon(1e-6));
    }
    const auto two = total_singular_mass(
        AnalyticFunction::from(StructuredFunction::singular_inner(AtomicSingularMeasure({{0.0, 0.5}, {2.0, 1.5}}))), {});
    CHECK(two.total_mass == doctest::Approx(2.0).epsilon(1e-4));

    const auto h = total_singular_mass(AnalyticFunction::from(power_times_atom(4, 1.0)), {});
    CHECK(h.total_mass == doctest::Approx(1.0).epsilon(0.02));

    const BlaschkeProduct b({{Complex(0.5), 1}});
    const auto fb = AnalyticFunction::from(b);
    const auto zs = locate_zeros(fb, 0.995, 8);
    const auto eb = total_singular_mass(fb, zs);
    CHECK(std::abs(eb.total_mass) <= 1e-4);

    // An incomplete zero inventory is rejected.
    CHECK_THROWS_AS(total_singular_mass(fb, {}), InconsistentZeroInventoryError);
  }

  TEST_CASE("zero at the origin is divided out") {
    const auto f = AnalyticFunction::from(StructuredFunction::product(FloatPolynomial{0.0, 0.0, 1.0},
                                                                      AtomicSingularMeasure::single(1.0, 0.75)),
                                          3);
    const auto zs = locate_zeros(f, 0.995, 8);
    const auto e = total_singular_mass(f, zs);
    CHECK(e.zero_order_at_origin == 2);
    CHECK(e.total_mass == doctest::Approx(0.75).epsilon(1e-4));
  }

  TEST_CASE("scale invariance and additivity") {
    const auto f = power_times_atom(4, 0.8);
    const auto g = StructuredFunction::product(FloatPolynomial{2.0, 1.0}, AtomicSingularMeasure::single(2.5, 0.6));
    const auto ef = total_singular_mass(AnalyticFunction::from(f), {});
    const auto eg = total_singular_mass(AnalyticFunction::from(g), {});
    const auto efg = total_singular_mass(AnalyticFunction::from(f * g), {});
    CHECK(std::abs(efg.total_mass - ef.total_mass - eg.total_mass) <=
          ef.uncertainty + eg.uncertainty + efg.uncertainty + 1e-6);
    const auto scaled = total_singular_mass(AnalyticFunction::from(f.scaled(Complex(-3.0, 4.0))), {});
    CHECK(std::abs(scaled.total_mass - ef.total_mass) <= ef.uncertainty + scaled.uncertainty + 1e-9);
    REQUIRE(scaled.atoms.size() == ef.atoms.size());
    for (std::size_t i = 0; i < ef.atoms.size(); ++i) CHECK(std::abs(scaled.atoms[i].mass - ef.atoms[i].mass) <= 1e-9);
    CHECK(ef.total_mass >= -ef.uncertainty);
    CHECK(eg.total_mass >= -eg.uncertainty);
  }

  TEST_CASE("outerness examples") {
    const auto theta = atom(0.0, 1.0);
    const auto outer = theta.scaled(-0.3) + StructuredFunction::constant(1.0);
    const auto d = outerness_test(AnalyticFunction::from(outer), {});
    CHECK(d.outer_verdict == OuterVerdict::outer);
    CHECK(d.inner_deficit <= 1e-4);
    CHECK(outerness_test(AnalyticFunction::from(theta), {}).outer_verdict == OuterVerdict::not_outer);
    CHECK(outerness_test(AnalyticFunction::from(FloatPolynomial{3.0}), {}).outer_verdict == OuterVerdict::outer);
    const auto lin = AnalyticFunction::from(FloatPolynomial{-0.5, 1.0});
    const auto zs = locate_zeros(lin, 0.995, 4);
    CHECK(outerness_test(lin, zs).outer_verdict == OuterVerdict::not_outer);
  }

  TEST_CASE("measure comparison examples") {
    auto estimate = [](std::vector<std::pair<double, double>> atoms) {
      SingularMassEstimate e;
      for (auto [arg, mass] : atoms) {
        AtomMass a;
        a.arg = arg;
        a.point = std::polar(1.0, arg);
        a.mass = mass;
        e.atoms.push_back(a);
        e.total_mass += mass;
      }
      return e;
    };
    CHECK(measure_leq(estimate({{0.0, 1.0}}), estimate({{0.0, 2.0}}), 1e-3).leq);
    CHECK(!measure_leq(estimate({{kPi / 2, 0.5}}), estimate({{0.0, 5.0}}), 1e-3).leq);
    CHECK(!measure_leq(estimate({{0.0, 2.5}}), estimate({{0.0, 2.0}}), 1e-3).leq);
    CHECK(measure_leq(estimate({}), estimate({}), 1e-3).leq);
  }

  TEST_CASE("divisibility examples") {
    const auto s = atom(0.0, 1.0);
    const auto zs = StructuredFunction::product(FloatPolynomial{0.0, 1.0}, AtomicSingularMeasure::single(0.0, 1.0));
    std::vector<StructuredFunction> fs{s, zs};
    DivisibilityOptions o;
    o.lambda_samples = 8;
    const auto rep = singular_divisibility_check(fs, o);
    CHECK(rep.wronskian_mass.total_mass == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(rep.all_pass);
    for (const auto& sample : rep.samples) {
      CHECK(sample.ok);
      CHECK(sample.total_mass == doctest::Approx(1.0).epsilon(1e-3));
    }

    std::vector<StructuredFunction> polys{StructuredFunction::constant(1.0), StructuredFunction::polynomial(FloatPolynomial{0.0, 1.0})};
    const auto prep = singular_divisibility_check(polys, o);
    CHECK(prep.all_pass);
    CHECK(std::abs(prep.wronskian_mass.total_mass) <= 1e-4);

    const double c = 0.7;
    std::vector<StructuredFunction> smooth{power_times_atom(4, c),
                                           power_times_atom(4, c) * StructuredFunction::polynomial(FloatPolynomial{0.0, 1.0})};
    const auto srep = singular_divisibility_check(smooth, o);
    CHECK(srep.wronskian_mass.atoms.at(0).mass == doctest::Approx(2 * c).epsilon(0.02));
    CHECK(srep.all_pass);
  }

  TEST_CASE("Hardy-Sobolev diagnostic examples") {
    const std::vector<double> radii = radii_ladder(2, 10);
    CHECK(hardy_sobolev_diagnostic(StructuredFunction::polynomial(FloatPolynomial{1.0, 2.0, -1.0}), 1, radii).verdict ==
          SobolevVerdict::plausibly_in);
    const auto sr = hardy_sobolev_diagnostic(atom(0.0, 1.0), 1, radii);
    CHECK(sr.verdict == SobolevVerdict::likely_not);
    CHECK(hardy_sobolev_diagnostic(power_times_atom(4, 1.0), 1, radii).verdict == SobolevVerdict::plausibly_in);

    // Oracle: midpoint quadrature of the closed form |S'| = 2|S| / |1 - z|^2.
    for (std::size_t i = 0; i < 3; ++i) {
      const double r = sr.radii[i];
      const double oracle = midpoint_mean_abs(
          [](Complex z) { return 2.0 * std::exp(-std::real((1.0 + z) / (1.0 - z))) / std::norm(1.0 - z); }, r, 1 << 16);
      CHECK(sr.integrals[i] == doctest::Approx(oracle).epsilon(1e-6));
    }
  }

  TEST_CASE("trace csv") {
    const auto e = total_singular_mass(AnalyticFunction::from(atom(0.0, 1.0)), {});
    const std::string csv = mass_trace_csv(e);
    CHECK(csv.rfind("r,deficit,mass_at_0", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(e.radii.size()) + 1);
  }
}
