#include "hardyfactor/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/poly_roots.hpp"

namespace hardyfactor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}

// A line segment or a counterclockwise circular arc, parametrized on [0, 1].
struct Segment {
  bool arc = false;
  Complex a, b;  // line endpoints
  Complex center;
  double radius = 0.0, t0 = 0.0, t1 = 0.0;

  Complex at(double s) const {
    if (arc) return center + std::polar(radius, t0 + s * (t1 - t0));
    return a + s * (b - a);
  }
  double length() const { return arc ? radius * std::abs(t1 - t0) : std::abs(b - a); }
  // dz/ds
  Complex tangent(double s) const {
    if (arc) return Complex(0.0, t1 - t0) * std::polar(radius, t0 + s * (t1 - t0));
    return b - a;
  }
};

using Path = std::vector<Segment>;

Path circle_path(Complex center, double radius) {
  Segment s;
  s.arc = true;
  s.center = center;
  s.radius = radius;
  s.t0 = 0.0;
  s.t1 = kTwoPi;
  return {s};
}

// Boundary of {rho0 <= |z| <= rho1, phi0 <= arg z <= phi1}, counterclockwise.
Path sector_path(double rho0, double rho1, double phi0, double phi1) {
  Path p;
  Segment outer;
  outer.arc = true;
  outer.radius = rho1;
  outer.t0 = phi0;
  outer.t1 = phi1;
  Segment down;
  down.a = std::polar(rho1, phi1);
  down.b = std::polar(rho0, phi1);
  Segment inner;
  inner.arc = true;
  inner.radius = rho0;
  inner.t0 = phi1;
  inner.t1 = phi0;
  Segment up;
  up.a = std::polar(rho0, phi0);
  up.b = std::polar(rho1, phi0);
  p.push_back(outer);
  p.push_back(down);
  if (rho0 > 0.0) p.push_back(inner);
  p.push_back(up);
  return p;
}

class PhaseTracker {
 public:
  PhaseTracker(const AnalyticFunction& f, const ContourOptions& o) : f_(f), o_(o) {}

  // Unwound phase change along the segment, bisecting any step larger than
  // the allowed increment. Where f'/f is available, a step is also split
  // when the phase velocity predicts a change the wrapped difference misses.
  double segment_change(const Segment& seg, int nodes) const {
    double total = 0.0;
    Sample prev = sample(seg, 0.0);
    for (int i = 1; i <= nodes; ++i) {
      const Sample cur = sample(seg, static_cast<double>(i) / nodes);
      total += refine(seg, prev, cur, 0);
      prev = cur;
    }
    return total;
  }

 private:
  struct Sample {
    double s = 0.0;
    double phase = 0.0;
    std::optional<double> velocity;  // d(arg f)/ds
  };

  Sample sample(const Segment& seg, double s) const {
    const Complex z = seg.at(s);
    const ScaledComplex v = f_.scaled(z);
    if (v.is_zero() || !std::isfinite(std::abs(v.mantissa)))
      throw ContourTooCloseError("function vanishes or is undefined on the contour");
    Sample out{s, v.phase(), std::nullopt};
    if (const auto l = f_.log_derivative(z)) out.velocity = std::imag(*l * seg.tangent(s));
    return out;
  }

  double refine(const Segment& seg, const Sample& a, const Sample& b, int depth) const {
    const double d = wrap_phase(b.phase - a.phase);
    bool ok = std::abs(d) <= o_.max_phase_step;
    if (ok && a.velocity && b.velocity) {
      const double predicted = 0.5 * (*a.velocity + *b.velocity) * (b.s - a.s);
      ok = std::abs(predicted) <= 2.0 * o_.max_phase_step && std::abs(predicted - d) <= 0.5 * o_.max_phase_step;
    }
    if (ok) return d;
    if ((b.s - a.s) * seg.length() < o_.min_contour_distance || depth > 200)
      throw ContourTooCloseError("zero too close to the contour");
    const Sample m = sample(seg, 0.5 * (a.s + b.s));
    return refine(seg, a, m, depth + 1) + refine(seg, m, b, depth + 1);
  }

  const AnalyticFunction& f_;
  const ContourOptions& o_;
};

int winding_number(const AnalyticFunction& f, const Path& path, const ContourOptions& o) {
  PhaseTracker tracker(f, o);
  double total_length = 0.0;
  for (const auto& s : path) total_length += s.length();
  bool have_previous = false;
  long previous = 0;
  for (int n = o.initial_nodes; n <= o.max_initial_nodes; n *= 2) {
    double change = 0.0;
    for (const auto& s : path) {
      if (s.length() == 0.0) continue;
      const int nodes = std::max(8, static_cast<int>(std::ceil(n * s.length() / total_length)));
      change += tracker.segment_change(s, nodes);
    }
    const double turns = change / kTwoPi;
    const long k = std::lround(turns);
    if (std::abs(turns - k) <= o.integer_tolerance) {
      if (have_previous && previous == k) {
        if (k < 0) throw ContourTooCloseError("negative winding number; function is not holomorphic inside");
        return static_cast<int>(k);
      }
      previous = k;
      have_previous = true;
    } else {
      have_previous = false;
    }
  }
  throw ContourTooCloseError("winding number did not stabilize");
}

// Polar regions: a central disk (rho0 == 0, full angle) or an annular sector.
struct Region {
  bool disk = false;
  double rho0 = 0.0, rho1 = 0.0, phi0 = 0.0, phi1 = 0.0;
  int count = 0;

  Complex center() const {
    if (disk) return 0.0;
    return std::polar(0.5 * (rho0 + rho1), 0.5 * (phi0 + phi1));
  }
  double diameter() const {
    if (disk) return 2.0 * rho1;
    return std::max(rho1 - rho0, rho1 * (phi1 - phi0));
  }
  bool contains(Complex z) const {
    const double slack = 1e-12 + 1e-9 * diameter();
    const double r = std::abs(z);
    if (disk) return r <= rho1 + slack;
    if (r < rho0 - slack || r > rho1 + slack) return false;
    if (r <= slack) return rho0 <= slack;
    const double rel = normalize_arg(std::arg(z) - phi0);
    const double width = phi1 - phi0;
    return rel <= width + slack / std::max(r, 1e-300) || rel >= kTwoPi - slack / std::max(r, 1e-300);
  }
  Path path() const { return disk ? circle_path(0.0, rho1) : sector_path(rho0, rho1, phi0, phi1); }
};

int region_count(const AnalyticFunction& f, const Region& r, const ContourOptions& o) {
  return winding_number(f, r.path(), o);
}

std::vector<Region> split(const Region& r, double s, double phi_offset) {
  std::vector<Region> out;
  if (r.disk) {
    Region inner;
    inner.disk = true;
    inner.rho1 = s * r.rho1;
    out.push_back(inner);
    for (int k = 0; k < 4; ++k) {
      Region sec;
      sec.rho0 = inner.rho1;
      sec.rho1 = r.rho1;
      sec.phi0 = phi_offset + k * kTwoPi / 4.0;
      sec.phi1 = phi_offset + (k + 1) * kTwoPi / 4.0;
      out.push_back(sec);
    }
    return out;
  }
  const double rm = r.rho0 + s * (r.rho1 - r.rho0);
  const double pm = r.phi0 + s * (r.phi1 - r.phi0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Region sec;
      sec.rho0 = i == 0 ? r.rho0 : rm;
      sec.rho1 = i == 0 ? rm : r.rho1;
      sec.phi0 = j == 0 ? r.phi0 : pm;
      sec.phi1 = j == 0 ? pm : r.phi1;
      out.push_back(sec);
    }
  return out;
}

Complex derivative_or_difference(const AnalyticFunction& f, int order, Complex z, double h) {
  if (f.max_derivative_order() >= order) return f.derivative(order, z);
  // Central difference on the (order - 1)-th derivative.
  return (f.derivative(order - 1, z + h) - f.derivative(order - 1, z - h)) / (2.0 * h);
}

// Newton's method on g = f^(k) started at z0; nullopt when it fails to settle.
std::optional<Complex> newton(const AnalyticFunction& f, int k, Complex z0, double scale) {
  Complex z = z0;
  const double h = std::max(1e-7 * scale, 1e-10);
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 80; ++it) {
    const Complex g = f.derivative(k, z);
    if (g == Complex(0.0)) return z;
    const Complex dg = derivative_or_difference(f, k + 1, z, h);
    if (dg == Complex(0.0) || !std::isfinite(std::abs(dg))) return std::nullopt;
    const Complex step = g / dg;
    if (!std::isfinite(std::abs(step))) return std::nullopt;
    z -= step;
    last = std::abs(step);
    if (last <= 1e-14 * std::max(1.0, std::abs(z))) return z;
  }
  if (last <= 1e-10) return z;
  return std::nullopt;
}

bool zero_order_less(const ZeroRecord& a, const ZeroRecord& b) {
  const double ra = std::abs(a.location), rb = std::abs(b.location);
  if (ra != rb) return ra < rb;
  return normalize_arg(std::arg(a.location)) < normalize_arg(std::arg(b.location));
}

}  // namespace

const char* to_string(ZeroMethod m) {
  switch (m) {
    case ZeroMethod::exact_root: return "exact-root";
    case ZeroMethod::argument_principle: return "argument-principle";
    case ZeroMethod::newton_polish: return "newton-polish";
  }
  return "unknown";
}

CountResult count_zeros(const AnalyticFunction& f, Complex center, double radius, const ContourOptions& options) {
  if (!(radius > 0.0) || std::abs(center) + radius >= 1.0)
    throw ParameterError("contour must be a circle inside the open unit disk");
  const double ceiling = 1.0 - std::abs(center);
  for (int adj = 0; adj <= options.max_radius_adjustments; ++adj) {
    // 0, -1, +1, -2, +2, ... steps
    const int k = (adj + 1) / 2;
    const double sign = adj % 2 == 1 ? -1.0 : 1.0;
    const double r = radius * (1.0 + sign * k * options.radius_step);
    if (r <= 0.0 || r >= ceiling) continue;
    try {
      return {winding_number(f, circle_path(center, r), options), r, adj};
    } catch (const ContourTooCloseError&) {
      if (adj == options.max_radius_adjustments) throw;
    }
  }
  throw ContourTooCloseError("no admissible contour radius");
}

std::vector<ZeroRecord> locate_zeros(const AnalyticFunction& f, double radius, int max_zeros,
                                     const LocateOptions& options) {
  const CountResult total = count_zeros(f, 0.0, radius, options.contour);
  if (total.count > max_zeros)
    throw BudgetExceededError(std::to_string(total.count) + " zeros exceed the budget of " +
                              std::to_string(max_zeros));
  std::vector<ZeroRecord> out;
  if (total.count == 0) return out;

  Region root;
  root.disk = true;
  root.rho1 = total.radius_used;
  root.count = total.count;
  std::vector<Region> stack{root};
  int processed = 0;

  auto residual = [&](Complex z) { return std::abs(f(z)); };

  while (!stack.empty()) {
    Region r = stack.back();
    stack.pop_back();
    if (r.count == 0) continue;
    if (++processed > options.max_regions) throw BudgetExceededError("zero location exceeded its region budget");
    const double diam = r.diameter();
    const Complex c = r.center();

    if (r.count == 1 && diam <= options.newton_start_diameter) {
      if (auto z = newton(f, 0, c, diam); z && r.contains(*z)) {
        out.push_back({*z, 1, residual(*z), ZeroMethod::newton_polish});
        continue;
      }
    }
    if (r.count >= 2 && diam <= options.cluster_polish_diameter && f.max_derivative_order() >= r.count) {
      if (auto z = newton(f, r.count - 1, c, diam); z && r.contains(*z)) {
        // A genuine m-fold zero leaves |f| at rounding level against its Taylor scale.
        double taylor = 0.0, fact = 1.0;
        for (int k = 0; k <= r.count; ++k) {
          if (k > 0) fact *= k;
          taylor += std::abs(f.derivative(k, *z)) / fact;
        }
        const bool ok = std::abs(f.derivative(0, *z)) <= 1e-8 * taylor;
        if (ok) {
          out.push_back({*z, r.count, residual(*z), ZeroMethod::newton_polish});
          continue;
        }
      }
    }
    const double leaf = r.count == 1 ? options.min_leaf_diameter : options.cluster_diameter;
    if (diam <= leaf) {
      out.push_back({c, r.count, residual(c), ZeroMethod::argument_principle});
      continue;
    }

    std::vector<Region> children;
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      const double s = 0.5 + (attempt == 0 ? 0.0 : (attempt % 2 ? 1.0 : -1.0) * 0.0731 * ((attempt + 1) / 2));
      const double off = 0.1237 * attempt;
      try {
        children = split(r, s, off);
        int sum = 0;
        for (auto& ch : children) {
          ch.count = region_count(f, ch, options.contour);
          sum += ch.count;
        }
        done = sum == r.count;
      } catch (const ContourTooCloseError&) {
        done = false;
      }
    }
    if (!done) {
      if (diam <= 1e3 * leaf || diam <= options.cluster_diameter) {
        out.push_back({c, r.count, residual(c), ZeroMethod::argument_principle});
        continue;
      }
      throw ContourTooCloseError("zero counts of subregions are inconsistent");
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  std::sort(out.begin(), out.end(), zero_order_less);
  return out;
}

MultiplicityResult multiplicity_at(const AnalyticFunction& f, Complex z0, int max_order, double tol_deriv) {
  if (max_order < 0) throw ParameterError("max_order must be nonnegative");
  if (f.max_derivative_order() < max_order)
    throw ParameterError("function does not provide derivatives up to order " + std::to_string(max_order));
  MultiplicityResult res;
  double scale = 0.0;
  for (int k = 0; k <= max_order; ++k) {
    res.derivative_moduli.push_back(std::abs(f.derivative(k, z0)));
    scale = std::max(scale, res.derivative_moduli.back());
  }
  if (scale == 0.0) {
    res.multiplicity = max_order + 1;
    res.saturated = true;
    return res;
  }
  for (int k = 0; k <= max_order; ++k)
    if (res.derivative_moduli[k] > tol_deriv * scale) {
      res.multiplicity = k;
      break;
    }
  return res;
}

bool DeepZeroReport::all_verified() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const auto& c) { return c.verified; });
}

namespace {

DeepZeroCertificate certify(std::span<const AnalyticFunction> fs, const ZeroRecord& zero, Complex wronskian_value,
                            const DeepZeroOptions& options,
                            const std::function<AnalyticFunction(const std::vector<Complex>&)>& combine) {
  const int n = static_cast<int>(fs.size()) - 1;
  DeepZeroCertificate cert;
  cert.point = zero.location;
  cert.order = n;
  cert.wronskian_value = wronskian_value;
  const WronskianMatrix m = wronskian_matrix_at(fs, zero.location);
  try {
    cert.witness = nullspace_coefficients(m, options.tol_rank);
  } catch (const NoDeepZeroError& e) {
    cert.matrix_gap = e.gap();
    cert.failure = e.what();
    return cert;
  }
  cert.matrix_gap = cert.witness.gap;
  const AnalyticFunction g = combine(cert.witness.lambdas);
  const MultiplicityResult mult = multiplicity_at(g, zero.location, n + 1, options.tol_deriv);
  cert.verified_multiplicity = mult.multiplicity;
  cert.verified = mult.multiplicity >= n + 1;
  if (!cert.verified)
    cert.failure = "combination vanishes only to order " + std::to_string(mult.multiplicity);
  return cert;
}

double blaschke_sum_of(const std::vector<ZeroRecord>& zs) {
  double s = 0.0;
  for (const auto& z : zs) s += z.multiplicity * (1.0 - std::abs(z.location));
  return s;
}

}  // namespace

DeepZeroReport deep_zero_set(std::span<const ExactPolynomial> ps, const DeepZeroOptions& options) {
  if (ps.size() < 2) throw ParameterError("need at least two functions");
  const ExactPolynomial w = wronskian_exact(ps);
  if (w.is_zero()) throw DependentInputsError("inputs are linearly dependent: the Wronskian vanishes identically");

  std::vector<FloatPolynomial> floats;
  std::vector<AnalyticFunction> fs;
  for (const auto& p : ps) {
    floats.push_back(to_float(p));
    fs.push_back(AnalyticFunction::from(floats.back()));
  }
  const FloatPolynomial wf = to_float(w);
  auto combine = [&](const std::vector<Complex>& lambdas) {
    FloatPolynomial g;
    for (std::size_t j = 0; j < floats.size(); ++j) g = g + floats[j].scaled(lambdas[j]);
    return AnalyticFunction::from(g);
  };

  DeepZeroReport report;
  if (w.degree().value_or(0) > 0) {
    for (const auto& r : poly_roots(w).roots) {
      if (std::abs(r.location) > options.radius) continue;
      report.wronskian_zeros.push_back({r.location, r.multiplicity, r.residual, ZeroMethod::exact_root});
    }
  }
  for (const auto& z : report.wronskian_zeros)
    report.certificates.push_back(certify(fs, z, wf(z.location), options, combine));
  report.blaschke_sum = blaschke_sum_of(report.wronskian_zeros);
  return report;
}

DeepZeroReport deep_zero_set(std::span<const StructuredFunction> fs, const DeepZeroOptions& options) {
  if (fs.size() < 2) throw ParameterError("need at least two functions");
  if (!independence_check(fs).independent)
    throw DependentInputsError("inputs are numerically linearly dependent");
  const int n = static_cast<int>(fs.size()) - 1;
  const StructuredFunction w = wronskian_structured(fs);
  const AnalyticFunction wf = AnalyticFunction::from(w, 1);

  std::vector<AnalyticFunction> afs;
  for (const auto& f : fs) afs.push_back(AnalyticFunction::from(f, n));
  auto combine = [&](const std::vector<Complex>& lambdas) {
    return AnalyticFunction::from(structured_combine(fs, lambdas, CombineMode::allow_trivial), n + 1);
  };

  DeepZeroReport report;
  report.wronskian_zeros = locate_zeros(wf, options.radius, options.max_zeros, options.locate);
  for (const auto& z : report.wronskian_zeros)
    report.certificates.push_back(certify(afs, z, wf(z.location), options, combine));
  report.blaschke_sum = blaschke_sum_of(report.wronskian_zeros);
  return report;
}

}  // namespace hardyfactor
