#include "hardyfactor/wronskian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/random.hpp"

namespace hardyfactor {

ExactPolynomial wronskian_exact(std::span<const ExactPolynomial> ps) {
  if (ps.empty()) throw ParameterError("Wronskian of an empty list");
  const std::size_t n = ps.size();
  std::vector<std::vector<ExactPolynomial>> m(n, std::vector<ExactPolynomial>(n));
  for (std::size_t j = 0; j < n; ++j) {
    ExactPolynomial d = ps[j];
    for (std::size_t k = 0; k < n; ++k) {
      m[k][j] = d;
      d = d.derivative();
    }
  }
  return cofactor_determinant(m);
}

StructuredFunction wronskian_structured(std::span<const StructuredFunction> fs) {
  if (fs.empty()) throw ParameterError("Wronskian of an empty list");
  const std::size_t n = fs.size();
  std::vector<std::vector<StructuredFunction>> m(n, std::vector<StructuredFunction>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto chain = fs[j].derivative_chain(static_cast<int>(n) - 1);
    for (std::size_t k = 0; k < n; ++k) m[k][j] = std::move(chain[k]);
  }
  return cofactor_determinant(m);
}

WronskianMatrix wronskian_matrix_at(std::span<const AnalyticFunction> fs, Complex z) {
  if (fs.empty()) throw ParameterError("Wronskian matrix of an empty list");
  const int n = static_cast<int>(fs.size());
  WronskianMatrix w{Eigen::MatrixXcd(n, n), z, n - 1};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) w.entries(k, j) = fs[j].derivative(k, z);
  return w;
}

CoefficientVector nullspace_coefficients(const WronskianMatrix& m, double tol_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.entries, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index last = s.size() - 1;
  CoefficientVector out;
  out.sigma_max = s(0);
  out.sigma_min = s(last);
  out.gap = out.sigma_max > 0.0 ? out.sigma_min / out.sigma_max : 0.0;
  if (out.sigma_max > 0.0 && !(out.sigma_min < tol_rank * out.sigma_max))
    throw NoDeepZeroError("Wronskian matrix is numerically nonsingular", out.gap);

  Eigen::VectorXcd v = svd.matrixV().col(last);
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(pivot)) * (1.0 + 1e-12)) pivot = i;
  v /= v(pivot);
  v(pivot) = 1.0;
  out.residual = (m.entries * v).norm();
  out.lambdas.assign(v.data(), v.data() + v.size());
  return out;
}

IndependenceVerdict independence_check(std::span<const ExactPolynomial> ps) {
  IndependenceVerdict v;
  v.independent = !wronskian_exact(ps).is_zero();
  v.numerical = false;
  v.max_relative_wronskian = v.independent ? 1.0 : 0.0;
  return v;
}

IndependenceVerdict independence_check(std::span<const StructuredFunction> fs) {
  constexpr int kPoints = 32;
  constexpr double kThreshold = 1e-10;
  const int n = static_cast<int>(fs.size());
  const StructuredFunction w = wronskian_structured(fs);
  std::vector<std::vector<StructuredFunction>> chains;
  for (const auto& f : fs) chains.push_back(f.derivative_chain(n - 1));

  Rng rng(0x5eed'1234'abcdULL);
  IndependenceVerdict v;
  v.numerical = true;
  for (int i = 0; i < kPoints; ++i) {
    const Complex z = rng.in_disk(0.9);
    double hadamard = 1.0;
    for (int k = 0; k < n; ++k) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += std::norm(chains[j][k](z));
      hadamard *= std::sqrt(row);
    }
    const double wz = std::abs(w(z));
    if (hadamard > 0.0) v.max_relative_wronskian = std::max(v.max_relative_wronskian, wz / hadamard);
  }
  v.independent = v.max_relative_wronskian > kThreshold;
  return v;
}

}  // namespace hardyfactor
