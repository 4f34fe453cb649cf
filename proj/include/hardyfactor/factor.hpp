#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardyfactor/analytic_function.hpp"
#include "hardyfactor/structured.hpp"
#include "hardyfactor/zeros.hpp"

namespace hardyfactor {

// 1 - 2^-k for k = first..last.
std::vector<double> radii_ladder(int first = 4, int last = 14);

struct QuadratureOptions {
  int min_nodes = 256;
  int max_nodes = 1 << 20;
  // Successive doubling results must agree this closely, for r < 1.
  double interior_tolerance = 1e-9;
  // Same for the boundary circle, where log singularities and unresolved
  // oscillation near atoms limit the attainable accuracy.
  double boundary_tolerance = 1e-6;
};

struct CircleMean {
  double value = 0.0;
  double uncertainty = 0.0;  // last doubling difference
  int nodes = 0;
};

// (1 / 2pi) int log|f(r e^{it})| dt by the trapezoid rule with node doubling.
// r == 1 selects the boundary. Without atoms or boundary singularities the
// trapezoid rule is used there too; otherwise each arc next to an excluded
// point is integrated in u = cot(tau / 2) by adaptive Gauss-Legendre panels
// with a fitted a + b log u tail, doubling the panel count until two totals
// agree within boundary_tolerance.
CircleMean circle_mean_log_modulus(const AnalyticFunction& f, double r, const QuadratureOptions& options = {});

struct AtomMassOptions {
  std::vector<double> radii = radii_ladder();
  int extrapolation_depth = 2;
};

struct AtomMass {
  double arg = 0.0;
  Complex point;
  double mass = 0.0;
  double uncertainty = 0.0;
  bool clamped = false;
  std::vector<double> per_radius;  // raw -(1 - r) log|f(r zeta)| / (1 + r)
};

// Radial singular-mass density at a boundary point, extrapolated to r = 1.
AtomMass atom_mass_at(const AnalyticFunction& f, double arg, const AtomMassOptions& options = {});

struct MassOptions {
  std::vector<double> radii = radii_ladder();
  int extrapolation_depth = 2;
  QuadratureOptions quadrature;
  // Candidate atom arguments; empty means the function's own atom list.
  std::optional<std::vector<double>> atom_args;
  // Radius of the zero inventory and of its consistency check.
  double inventory_radius = 0.995;
};

struct SingularMassEstimate {
  double total_mass = 0.0;
  double uncertainty = 0.0;
  std::vector<AtomMass> atoms;
  std::vector<double> radii;
  std::vector<double> deficits;  // per radius
  bool extrapolated = false;
  double boundary_mean = 0.0;
  double log_abs_f0 = 0.0;  // of f / z^m
  int zero_order_at_origin = 0;
};

// Jensen deficit of f: boundary mean of log|f| minus log|f(0)| minus the
// located-zero correction sum log(r / |z_k|) over |z_k| < r, extrapolated in
// 1 - r. A zero of order m at the origin is divided out first. Atom masses
// are estimated at every candidate atom.
SingularMassEstimate total_singular_mass(const AnalyticFunction& f, std::span<const ZeroRecord> zeros_inside,
                                         const MassOptions& options = {});

enum class OuterVerdict { outer, not_outer, inconclusive };
const char* to_string(OuterVerdict v);

struct FactorizationDiagnostic {
  std::vector<double> radii;
  std::vector<double> log_mod_mean_at_radii;  // interior circle means
  double log_abs_f0 = 0.0;
  double blaschke_sum_located = 0.0;
  double inner_deficit = 0.0;
  double uncertainty = 0.0;
  int located_zeros = 0;
  OuterVerdict outer_verdict = OuterVerdict::inconclusive;
};

struct OuterOptions {
  double tol_outer = 1e-4;
  MassOptions mass;
  // Interior circle means are reported at these radii.
  std::vector<double> report_radii = {0.5, 0.9, 0.99};
};

// Outer iff there are no located zeros and the singular deficit is at most
// tol_outer; not-outer when zeros exist or the deficit is at least
// 10 tol_outer.
FactorizationDiagnostic outerness_test(const AnalyticFunction& f, std::span<const ZeroRecord> zeros_inside,
                                       const OuterOptions& options = {});

struct MeasureComparison {
  bool leq = true;
  // Smallest slack (mu + tol - nu) over the matched atoms and the totals.
  double margin = 0.0;
  std::string reason;
};

inline constexpr double kAtomMatchTolerance = 1e-6;

// nu <= mu: every nu-atom heavier than tol has a mu-atom within 1e-6 in
// argument with nu-mass <= mu-mass + tol, and nu-total <= mu-total + tol.
MeasureComparison measure_leq(const SingularMassEstimate& nu, const SingularMassEstimate& mu, double tol);

struct DivisibilitySample {
  std::vector<Complex> lambdas;
  bool ok = false;  // estimator succeeded
  bool leq = false;
  double margin = 0.0;
  double total_mass = 0.0;
  std::vector<AtomMass> atoms;
  std::string error;
};

struct DivisibilityReport {
  SingularMassEstimate wronskian_mass;
  double tolerance = 0.0;
  std::vector<DivisibilitySample> samples;
  double worst_margin = 0.0;
  bool all_pass = false;
};

struct DivisibilityOptions {
  int lambda_samples = 50;
  std::uint64_t seed = 1;
  double relative_tolerance = 0.05;
  double tolerance_floor = 1e-3;
  MassOptions mass;
  LocateOptions locate;
  int max_zeros = 256;
};

// mu_g <= mu_W for random unit coefficient vectors lambda, g = sum lambda_j f_j.
DivisibilityReport singular_divisibility_check(std::span<const StructuredFunction> fs,
                                               const DivisibilityOptions& options = {});

enum class SobolevVerdict { plausibly_in, likely_not, inconclusive };
const char* to_string(SobolevVerdict v);

struct SobolevReport {
  int order = 0;
  std::vector<double> radii;
  std::vector<double> integrals;  // (1 / 2pi) int |f^(n)(r e^{it})| dt
  SobolevVerdict verdict = SobolevVerdict::inconclusive;
};

// Heuristic: plausibly-in when the last integral is within 10% of the one
// before; likely-not when it grew by 2x or more over the last step, or by at
// least 20% on each of the last three steps.
SobolevReport hardy_sobolev_diagnostic(const StructuredFunction& f, int n, std::span<const double> radii,
                                       const QuadratureOptions& options = {});

// Boundary arguments (of `points` equispaced ones) where -(1 - r) log|f(r e^{it})|
// exceeds `threshold`, for spotting atoms outside the candidate list.
std::vector<double> boundary_mass_scan(const AnalyticFunction& f, double r = 1.0 - 0x1.0p-10, int points = 1024,
                                       double threshold = 0.05);

// Columns r, deficit, then one mass column per atom.
std::string mass_trace_csv(const SingularMassEstimate& e);

}  // namespace hardyfactor
