#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "hardyfactor/scaled_complex.hpp"

namespace hardyfactor {

// Seeded generator with platform-independent draws: only the raw 64-bit
// mt19937_64 stream is used, never the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // [lo, hi]
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }
  bool chance(double p) { return uniform() < p; }
  double normal() {
    // Box-Muller on our own uniforms.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  // Uniform in the disk |z| <= radius.
  Complex in_disk(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hardyfactor
