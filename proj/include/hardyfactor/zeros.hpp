#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hardyfactor/analytic_function.hpp"
#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/structured.hpp"
#include "hardyfactor/wronskian.hpp"

namespace hardyfactor {

enum class ZeroMethod { exact_root, argument_principle, newton_polish };

const char* to_string(ZeroMethod m);

struct ZeroRecord {
  Complex location;
  int multiplicity = 1;
  double residual = 0.0;  // |f(location)| as evaluated
  ZeroMethod method = ZeroMethod::argument_principle;
};

struct ContourOptions {
  int initial_nodes = 256;
  int max_initial_nodes = 1 << 14;
  // Accepted distance of the unwound phase total from an integer, in turns.
  double integer_tolerance = 0.25;
  // Arcs whose phase increment exceeds this are bisected.
  double max_phase_step = std::numbers::pi / 4.0;
  // A zero this close to the contour makes the count unreliable.
  double min_contour_distance = 1e-9;
  int max_radius_adjustments = 5;
  double radius_step = 1e-3;
};

struct CountResult {
  int count = 0;
  double radius_used = 0.0;
  int adjustments = 0;
};

// Winding number of f along |z - center| = radius. On a contour failure the
// radius is nudged (alternately inward and outward) up to
// max_radius_adjustments times before ContourTooCloseError is raised.
CountResult count_zeros(const AnalyticFunction& f, Complex center, double radius, const ContourOptions& options = {});

struct LocateOptions {
  ContourOptions contour;
  // Simple zeros are Newton-polished once their region is this small.
  double newton_start_diameter = 0.05;
  // Multiple zeros with derivatives are polished (Newton on f^(m-1)) below this.
  double cluster_polish_diameter = 1e-3;
  // Regions holding m >= 2 zeros this small are reported as one cluster.
  double cluster_diameter = 1e-6;
  double min_leaf_diameter = 1e-12;
  int max_regions = 200000;
};

// Zeros in |z| <= radius by recursive quadrisection of polar regions
// (central disks and annular sectors), counted by the argument principle and
// polished by Newton's method at the leaves. Total multiplicity equals the
// circle count. Sorted by (|z|, arg z).
std::vector<ZeroRecord> locate_zeros(const AnalyticFunction& f, double radius, int max_zeros,
                                     const LocateOptions& options = {});

struct MultiplicityResult {
  int multiplicity = 0;
  bool saturated = false;  // every derivative up to max_order vanished
  std::vector<double> derivative_moduli;
};

inline constexpr double kDefaultDerivativeTolerance = 1e-7;

// Smallest k with |f^(k)(z0)| > tol_deriv * max_{j <= max_order} |f^(j)(z0)|;
// max_order + 1 (saturated) when all vanish.
MultiplicityResult multiplicity_at(const AnalyticFunction& f, Complex z0, int max_order,
                                   double tol_deriv = kDefaultDerivativeTolerance);

struct DeepZeroCertificate {
  Complex point;
  int order = 0;  // n for n + 1 functions
  CoefficientVector witness;
  Complex wronskian_value;
  double matrix_gap = 0.0;
  int verified_multiplicity = 0;
  bool verified = false;
  std::string failure;  // why verification failed, if it did
};

struct DeepZeroOptions {
  double radius = 0.995;
  double tol_rank = kDefaultRankTolerance;
  double tol_deriv = kDefaultDerivativeTolerance;
  int max_zeros = 256;
  LocateOptions locate;
};

struct DeepZeroReport {
  std::vector<ZeroRecord> wronskian_zeros;
  std::vector<DeepZeroCertificate> certificates;  // one per Wronskian zero
  double blaschke_sum = 0.0;                      // sum m (1 - |z|) over the zeros

  bool all_verified() const;
};

// Polynomials: exact Wronskian, exact-multiplicity roots.
DeepZeroReport deep_zero_set(std::span<const ExactPolynomial> ps, const DeepZeroOptions& options = {});
// Structured functions: in-family Wronskian, argument-principle zeros.
DeepZeroReport deep_zero_set(std::span<const StructuredFunction> fs, const DeepZeroOptions& options = {});

}  // namespace hardyfactor
