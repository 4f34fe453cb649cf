#pragma once

#include <vector>

#include "hardyfactor/polynomial.hpp"

namespace hardyfactor {

struct RootRecord {
  Complex location;
  int multiplicity = 1;
  // Upper bound on |p(location)|: the computed modulus plus a Horner
  // rounding bound.
  double residual = 0.0;
};

struct RootOptions {
  // Roots closer than this are always merged into one cluster.
  double cluster_radius = 1e-6;
  int newton_steps = 12;
};

struct RootSet {
  std::vector<RootRecord> roots;  // sorted by (|z|, arg z)
  // Largest relative coefficient rounding error when an exact polynomial was
  // converted; zero for floating input.
  double conversion_error = 0.0;

  int total_multiplicity() const;
};

// Floating kind: companion-matrix eigenvalues, Newton polish, then
// multiplicity clustering. Two clusters merge when they sit within
// `cluster_radius`, or when the merged spread is no larger than the
// perturbation an m-fold root suffers from coefficient rounding.
RootSet poly_roots(const FloatPolynomial& p, const RootOptions& options = {});

// Exact kind: multiplicities come from an exact square-free decomposition;
// each square-free factor is rounded and solved as above.
RootSet poly_roots(const ExactPolynomial& p, const RootOptions& options = {});

void sort_by_modulus_then_arg(std::vector<Complex>& zs);

}  // namespace hardyfactor
