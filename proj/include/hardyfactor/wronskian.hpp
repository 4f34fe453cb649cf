#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "hardyfactor/analytic_function.hpp"
#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/structured.hpp"

namespace hardyfactor {

// Laplace expansion along successive rows with memoized minors. Works over
// any commutative ring whose value-initialized element is zero, which keeps
// polynomial and structured determinants inside their families.
template <class T>
T cofactor_determinant(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T{};
  std::vector<std::unordered_map<std::uint32_t, T>> memo(n);
  auto minor = [&](auto&& self, std::size_t row, std::uint32_t cols) -> T {
    if (row == n) return T{};
    if (auto it = memo[row].find(cols); it != memo[row].end()) return it->second;
    T acc{};
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      const std::uint32_t rest = cols & ~(1u << c);
      if (row + 1 == n) {
        acc = sign > 0 ? acc + m[row][c] : acc - m[row][c];
      } else {
        T product = m[row][c] * self(self, row + 1, rest);
        acc = sign > 0 ? acc + product : acc - product;
      }
      sign = -sign;
    }
    memo[row].emplace(cols, acc);
    return acc;
  };
  return minor(minor, 0, (n >= 32 ? 0xffffffffu : ((1u << n) - 1u)));
}

// det [ p_j^(k) ], exact.
ExactPolynomial wronskian_exact(std::span<const ExactPolynomial> ps);

// det [ f_j^(k) ] inside the structured family.
StructuredFunction wronskian_structured(std::span<const StructuredFunction> fs);

struct WronskianMatrix {
  Eigen::MatrixXcd entries;  // (k, j) = f_j^(k)(point)
  Complex point;
  int order = 0;  // n, for n + 1 functions
};

// Every function needs derivatives up to order fs.size() - 1.
WronskianMatrix wronskian_matrix_at(std::span<const AnalyticFunction> fs, Complex z);

struct CoefficientVector {
  // Largest-modulus entry (first one on ties) normalized to exactly 1.
  std::vector<Complex> lambdas;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double gap = 0.0;       // sigma_min / sigma_max
  double residual = 0.0;  // |m lambda|
};

inline constexpr double kDefaultRankTolerance = 1e-8;

// Right singular vector of the smallest singular value. Throws
// NoDeepZeroError when sigma_min >= tol_rank * sigma_max.
CoefficientVector nullspace_coefficients(const WronskianMatrix& m, double tol_rank = kDefaultRankTolerance);

struct IndependenceVerdict {
  bool independent = true;
  bool numerical = false;
  // Numerical mode: max over sample points of |W| / (Hadamard bound of the
  // Wronskian matrix).
  double max_relative_wronskian = 0.0;
};

IndependenceVerdict independence_check(std::span<const ExactPolynomial> ps);
// W at 32 seeded points in |z| <= 0.9; dependent iff every |W| <= 1e-10 * scale.
IndependenceVerdict independence_check(std::span<const StructuredFunction> fs);

}  // namespace hardyfactor
