#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace hardyfactor {

using Complex = std::complex<double>;

// mantissa * exp(log_scale). Singular inner factors near an atom are far
// below the double range, so moduli and phases are carried separately.
struct ScaledComplex {
  Complex mantissa = 0.0;
  double log_scale = 0.0;

  static ScaledComplex from(Complex v) { return {v, 0.0}; }

  bool is_zero() const { return mantissa == Complex(0.0); }
  Complex value() const {
    if (is_zero()) return 0.0;
    return mantissa * std::exp(log_scale);
  }
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mantissa)) + log_scale;
  }
  double phase() const { return std::arg(mantissa); }
};

}  // namespace hardyfactor
