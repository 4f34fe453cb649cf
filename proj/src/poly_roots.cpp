#include "hardyfactor/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace hardyfactor {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double horner_error_bound(const FloatPolynomial& p, Complex z) {
  double sum = 0.0, power = 1.0;
  const double az = std::abs(z);
  for (const auto& a : p.coeffs()) {
    sum += std::abs(a) * power;
    power *= az;
  }
  const double n = p.coeffs().empty() ? 1.0 : static_cast<double>(p.coeffs().size());
  return 4.0 * (2.0 * n + 1.0) * kEps * sum;
}

double residual_bound(const FloatPolynomial& p, Complex z) { return std::abs(p(z)) + horner_error_bound(p, z); }

std::vector<Complex> companion_eigenvalues(const FloatPolynomial& p) {
  const std::size_t n = *p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = p.leading();
  for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
  return roots;
}

// Newton steps are kept only while they decrease |p|.
Complex polish(const FloatPolynomial& p, const FloatPolynomial& dp, Complex z, int steps) {
  Complex value = p(z);
  for (int k = 0; k < steps; ++k) {
    const Complex slope = dp(z);
    if (slope == Complex(0.0)) break;
    const Complex step = value / slope;
    const Complex next = z - step;
    const Complex next_value = p(next);
    if (!(std::abs(next_value) <= std::abs(value))) break;
    z = next;
    value = next_value;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// Radius within which rounding of the coefficients can scatter the roots of
// an m-fold root located at c.
double predicted_cluster_radius(const FloatPolynomial& p, Complex c, int m) {
  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  const double taylor = std::abs(p.derivative(m)(c)) / factorial;
  if (!(taylor > 0.0)) return 0.0;
  return std::pow(horner_error_bound(p, c) / taylor, 1.0 / m);
}

struct Cluster {
  std::vector<Complex> members;
  Complex centroid() const {
    Complex s = 0.0;
    for (const auto& m : members) s += m;
    return s / static_cast<double>(members.size());
  }
};

double spread(const std::vector<Complex>& members, Complex c) {
  double s = 0.0;
  for (const auto& m : members) s = std::max(s, std::abs(m - c));
  return s;
}

std::vector<RootRecord> cluster_roots(const FloatPolynomial& p, const std::vector<Complex>& roots,
                                      const RootOptions& options) {
  std::vector<Cluster> clusters;
  for (const auto& r : roots) clusters.push_back({{r}});

  for (;;) {
    struct Pair {
      double distance;
      std::size_t i, j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j)
        pairs.push_back({std::abs(clusters[i].centroid() - clusters[j].centroid()), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return a.distance < b.distance || (a.distance == b.distance && (a.i < b.i || (a.i == b.i && a.j < b.j)));
    });

    bool merged = false;
    for (const auto& pr : pairs) {
      Cluster candidate = clusters[pr.i];
      candidate.members.insert(candidate.members.end(), clusters[pr.j].members.begin(),
                               clusters[pr.j].members.end());
      const Complex c = candidate.centroid();
      const int m = static_cast<int>(candidate.members.size());
      const double allowed = std::max(options.cluster_radius, 10.0 * predicted_cluster_radius(p, c, m));
      if (spread(candidate.members, c) <= allowed) {
        clusters[pr.i] = std::move(candidate);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(pr.j));
        merged = true;
        break;
      }
    }
    if (!merged) break;
  }

  std::vector<RootRecord> out;
  for (const auto& cl : clusters) {
    const int m = static_cast<int>(cl.members.size());
    Complex loc = cl.centroid();
    if (m > 1) {
      // The m-fold root is a simple root of p^(m-1).
      const FloatPolynomial q = p.derivative(m - 1);
      const Complex refined = polish(q, q.derivative(), loc, options.newton_steps);
      if (std::abs(refined - loc) <= std::max(options.cluster_radius, spread(cl.members, loc))) loc = refined;
    }
    out.push_back({loc, m, residual_bound(p, loc)});
  }
  return out;
}

bool modulus_arg_less(Complex a, Complex b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  return std::arg(a) < std::arg(b);
}

void sort_records(std::vector<RootRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const RootRecord& a, const RootRecord& b) { return modulus_arg_less(a.location, b.location); });
}

}  // namespace

int RootSet::total_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0,
                         [](int acc, const RootRecord& r) { return acc + r.multiplicity; });
}

void sort_by_modulus_then_arg(std::vector<Complex>& zs) { std::sort(zs.begin(), zs.end(), modulus_arg_less); }

RootSet poly_roots(const FloatPolynomial& p, const RootOptions& options) {
  if (p.is_zero())
    throw DomainError("roots of the zero polynomial: W == 0 means the inputs are linearly dependent");
  RootSet result;
  if (*p.degree() == 0) return result;

  // Exact zero roots are split off before the eigenvalue solve.
  std::size_t low = 0;
  while (p[low] == Complex(0.0)) ++low;
  std::vector<Complex> reduced(p.coeffs().begin() + static_cast<std::ptrdiff_t>(low), p.coeffs().end());
  const FloatPolynomial q(std::move(reduced));

  std::vector<Complex> roots(low, Complex(0.0));
  const FloatPolynomial dp = p.derivative();
  for (Complex r : companion_eigenvalues(q)) roots.push_back(polish(p, dp, r, options.newton_steps));

  result.roots = cluster_roots(p, roots, options);
  sort_records(result.roots);
  return result;
}

RootSet poly_roots(const ExactPolynomial& p, const RootOptions& options) {
  if (p.is_zero())
    throw DomainError("roots of the zero polynomial: W == 0 means the inputs are linearly dependent");
  RootSet result;
  const FloatPolynomial pf = to_float(p, &result.conversion_error);
  for (const auto& [factor, multiplicity] : square_free_decomposition(p)) {
    double err = 0.0;
    const FloatPolynomial ff = to_float(factor, &err);
    result.conversion_error = std::max(result.conversion_error, err);
    const FloatPolynomial dff = ff.derivative();
    for (Complex r : companion_eigenvalues(ff)) {
      const Complex z = polish(ff, dff, r, options.newton_steps);
      result.roots.push_back({z, multiplicity, residual_bound(pf, z)});
    }
  }
  sort_records(result.roots);
  return result;
}

}  // namespace hardyfactor
