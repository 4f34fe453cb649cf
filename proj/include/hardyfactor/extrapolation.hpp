#pragma once

#include <span>

namespace hardyfactor {

struct Extrapolated {
  double value = 0.0;
  // Spread between the extrapolants from the last two windows.
  double uncertainty = 0.0;
};

// Value at h = 0 of the degree-`depth` interpolant through the last depth + 1
// samples (Neville's scheme). Samples are ordered with h decreasing.
double neville_at_zero(std::span<const double> h, std::span<const double> v);

Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const double> v, int depth = 2);

}  // namespace hardyfactor
