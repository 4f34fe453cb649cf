#include "hardyfactor/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardyfactor/errors.hpp"

namespace hardyfactor {

double neville_at_zero(std::span<const double> h, std::span<const double> v) {
  if (h.size() != v.size() || h.empty()) throw ParameterError("extrapolation needs matching nonempty samples");
  std::vector<double> p(v.begin(), v.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = h[i], hj = h[i + level];
      if (hi == hj) throw ParameterError("extrapolation nodes must be distinct");
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
  return p[0];
}

Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const double> v, int depth) {
  if (h.size() != v.size() || h.empty()) throw ParameterError("extrapolation needs matching nonempty samples");
  const std::size_t n = h.size();
  const std::size_t window = std::min<std::size_t>(static_cast<std::size_t>(std::max(depth, 0)) + 1, n);
  Extrapolated out;
  out.value = neville_at_zero(h.subspan(n - window), v.subspan(n - window));
  if (n > window) {
    const double previous = neville_at_zero(h.subspan(n - window - 1, window), v.subspan(n - window - 1, window));
    out.uncertainty = std::abs(out.value - previous);
  } else if (n >= 2) {
    out.uncertainty = std::abs(v[n - 1] - v[n - 2]);
  }
  return out;
}

}  // namespace hardyfactor
