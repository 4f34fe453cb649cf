#include <doctest.h>

#include <cmath>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/random.hpp"
#include "hardyfactor/wronskian.hpp"

using namespace hardyfactor;

namespace {

ExactPolynomial random_exact(Rng& rng, int degree) {
  std::vector<ExactComplex> c;
  for (int k = 0; k <= degree; ++k)
    c.emplace_back(mpq_class(rng.integer(-5, 5), rng.integer(1, 4)), mpq_class(rng.integer(-5, 5), rng.integer(1, 4)));
  if (c.back().is_zero()) c.back() = 1;
  return ExactPolynomial(c);
}

// Plain Leibniz-formula determinant, independent of the engine.
Complex permutation_determinant(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Complex total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Complex term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_SUITE("wronskian") {
  TEST_CASE("exact examples") {
    std::vector<ExactPolynomial> a{ExactPolynomial{1}, ExactPolynomial{0, 1}};
    CHECK(wronskian_exact(a) == ExactPolynomial{1});
    std::vector<ExactPolynomial> b{ExactPolynomial{1}, ExactPolynomial{0, 1}, ExactPolynomial{0, 0, 1}};
    CHECK(wronskian_exact(b) == ExactPolynomial{2});
    std::vector<ExactPolynomial> c{ExactPolynomial{1}, ExactPolynomial{0, 0, 1}, ExactPolynomial{2, 0, 2}};
    CHECK(wronskian_exact(c).is_zero());
    std::vector<ExactPolynomial> d{ExactPolynomial{1}, ExactPolynomial{0, 0, 1}};
    CHECK(wronskian_exact(d) == ExactPolynomial{0, 2});
    CHECK_THROWS_AS(wronskian_exact(std::span<const ExactPolynomial>{}), ParameterError);
  }

  TEST_CASE("cofactor determinant agrees with the permutation formula") {
    Rng rng(31);
    for (int n = 1; n <= 5; ++n) {
      Eigen::MatrixXcd m(n, n);
      std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = m(i, j) = Complex(rng.normal(), rng.normal());
      CHECK(std::abs(cofactor_determinant(rows) - permutation_determinant(m)) <= 1e-12 * std::pow(4.0, n));
    }
  }

  TEST_CASE("alternating multilinearity") {
    Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = static_cast<int>(rng.integer(2, 4));
      std::vector<ExactPolynomial> ps;
      for (int j = 0; j < n; ++j) ps.push_back(random_exact(rng, static_cast<int>(rng.integer(0, 6))));
      const ExactPolynomial w = wronskian_exact(ps);
      auto swapped = ps;
      std::swap(swapped[0], swapped[n - 1]);
      CHECK(wronskian_exact(swapped) == -w);
      const ExactComplex c(mpq_class(rng.integer(-7, 7), 3), mpq_class(rng.integer(1, 7), 5));
      auto scaled = ps;
      scaled[1] = scaled[1].scaled(c);
      CHECK(wronskian_exact(scaled) == w.scaled(c));
    }
  }

  TEST_CASE("W_k equals lambda_k W exactly") {
    Rng rng(33);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = static_cast<int>(rng.integer(2, 4));
      std::vector<ExactPolynomial> ps;
      for (int j = 0; j < n; ++j) ps.push_back(random_exact(rng, static_cast<int>(rng.integer(0, 6))));
      std::vector<ExactComplex> l;
      ExactPolynomial g;
      for (int j = 0; j < n; ++j) {
        l.emplace_back(mpq_class(rng.integer(-3, 3)), mpq_class(rng.integer(-3, 3)));
        g = g + ps[j].scaled(l[j]);
      }
      for (int k = 0; k < n; ++k) {
        if (l[k].is_zero()) continue;
        auto replaced = ps;
        replaced[k] = g;
        CHECK(wronskian_exact(replaced) == wronskian_exact(ps).scaled(l[k]));
      }
    }
  }

  TEST_CASE("structured examples") {
    const auto s = StructuredFunction::singular_inner(AtomicSingularMeasure::single(0.0, 1.0));
    const auto zs = StructuredFunction::product(FloatPolynomial{0.0, 1.0}, AtomicSingularMeasure::single(0.0, 1.0));
    Rng rng(34);
    std::vector<StructuredFunction> same{zs, zs};
    std::vector<StructuredFunction> one_s{StructuredFunction::constant(1.0), s};
    const auto w_same = wronskian_structured(same);
    const auto w_one_s = wronskian_structured(one_s);
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.in_disk(0.9);
      CHECK(std::abs(w_same(z)) <= 1e-14);
      CHECK(std::abs(w_one_s(z) - s.derivative()(z)) <= 1e-13 * std::abs(s.derivative()(z)));
    }
    // (S, zS, z^2 S) has W = 2 S^3.
    const auto z2s = StructuredFunction::product(FloatPolynomial{0.0, 0.0, 1.0}, AtomicSingularMeasure::single(0.0, 1.0));
    std::vector<StructuredFunction> three{s, zs, z2s};
    const auto w3 = wronskian_structured(three);
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.in_disk(0.6);
      CHECK(std::abs(w3(z) - 2.0 * std::pow(s(z), 3)) <= 1e-9 * std::abs(2.0 * std::pow(s(z), 3)));
    }
    const auto verdict = independence_check(three);
    CHECK(verdict.independent);
    CHECK(verdict.numerical);
  }

  TEST_CASE("independence verdicts") {
    std::vector<ExactPolynomial> a{ExactPolynomial{1}, ExactPolynomial{0, 1}, ExactPolynomial{0, 0, 1}};
    CHECK(independence_check(a).independent);
    CHECK(!independence_check(a).numerical);
    std::vector<ExactPolynomial> b{ExactPolynomial{1}, ExactPolynomial{0, 0, 1}, ExactPolynomial{2, 0, 2}};
    CHECK(!independence_check(b).independent);
    const auto f = StructuredFunction::product(FloatPolynomial{1.0, 0.5}, AtomicSingularMeasure::single(1.0, 0.5));
    std::vector<StructuredFunction> dep{f, f.scaled(Complex(0.0, 2.0))};
    CHECK(!independence_check(dep).independent);
  }

  TEST_CASE("matrix examples") {
    std::vector<AnalyticFunction> fs{AnalyticFunction::from(FloatPolynomial{1.0}),
                                     AnalyticFunction::from(FloatPolynomial{0.0, 1.0})};
    const auto m = wronskian_matrix_at(fs, 0.5);
    CHECK(m.entries(0, 0) == Complex(1.0));
    CHECK(m.entries(0, 1) == Complex(0.5));
    CHECK(m.entries(1, 0) == Complex(0.0));
    CHECK(m.entries(1, 1) == Complex(1.0));
    CHECK(m.order == 1);

    std::vector<AnalyticFunction> gs{AnalyticFunction::from(FloatPolynomial{1.0}),
                                     AnalyticFunction::from(FloatPolynomial{0.0, 0.0, 1.0})};
    const auto sing = wronskian_matrix_at(gs, 0.0);
    CHECK(sing.entries(1, 1) == Complex(0.0));
    CHECK(sing.entries(0, 1) == Complex(0.0));
    const auto lambda = nullspace_coefficients(sing);
    CHECK(std::abs(lambda.lambdas[0]) <= 1e-15);
    CHECK(lambda.lambdas[1] == Complex(1.0));
    CHECK(lambda.sigma_min == 0.0);

    WronskianMatrix id{Eigen::MatrixXcd::Identity(2, 2), 0.0, 1};
    CHECK_THROWS_AS(nullspace_coefficients(id), NoDeepZeroError);
  }

  TEST_CASE("cross-engine agreement") {
    Rng rng(35);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = static_cast<int>(rng.integer(2, 4));
      std::vector<ExactPolynomial> ps;
      std::vector<AnalyticFunction> fs;
      for (int j = 0; j < n; ++j) {
        ps.push_back(random_exact(rng, static_cast<int>(rng.integer(0, 6))));
        fs.push_back(AnalyticFunction::from(ps.back()));
      }
      const ExactPolynomial w = wronskian_exact(ps);
      if (w.is_zero()) continue;
      const Complex z = rng.in_disk(0.95);
      const Complex det = wronskian_matrix_at(fs, z).entries.determinant();
      const Complex exact = to_float(w)(z);
      worst = std::max(worst, std::abs(det - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-9);
  }
}
