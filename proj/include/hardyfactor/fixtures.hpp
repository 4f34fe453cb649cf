#pragma once

#include <string>
#include <vector>

#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/random.hpp"
#include "hardyfactor/structured.hpp"

namespace hardyfactor {

// n + 1 linearly independent exact polynomials of degree <= max_degree.
// The first carries a planted factor (z - a)^(n + 1) with a a Gaussian
// rational of denominator 8 in |a| < 0.9, so deep zeros exist.
struct PolynomialTuple {
  int n = 0;
  std::vector<ExactPolynomial> ps;
  ExactComplex planted_root;
};

PolynomialTuple random_polynomial_tuple(Rng& rng, int max_n = 3, int max_degree = 6);

// Combination coefficients for a tuple of n + 1 functions: the first n + 1
// draws are the unit vectors, the rest Gaussian integers in [-2, 2]^2 with
// roughly a third of the entries zeroed. Never all zero.
std::vector<std::vector<ExactComplex>> lambda_draws(Rng& rng, int n, int count);

// n + 1 functions p_j S_{mu_j}: random complex polynomials of degree <= 3,
// single atoms at one of two boundary points with masses in [0.2, 1.5].
std::vector<StructuredFunction> random_structured_tuple(Rng& rng, int max_n = 2);

// Standard smooth and non-smooth fixtures.
StructuredFunction atom_function(double arg, double mass);
// (1 - z)^N S_{atom(zeta, c)}, with (1 - z) replaced by (1 - conj(zeta) z).
StructuredFunction power_times_atom(int power, double arg, double mass);
// z^k f
StructuredFunction times_z_power(const StructuredFunction& f, int k);

}  // namespace hardyfactor
