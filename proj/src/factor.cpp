#include "hardyfactor/factor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/extrapolation.hpp"
#include "hardyfactor/parallel.hpp"
#include "hardyfactor/random.hpp"

namespace hardyfactor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kChunks = 64;

// Mean of g over t_k = phase + (k + 1/2) 2pi/N, summed in fixed chunks so the
// result does not depend on the worker count.
template <class G>
double trapezoid_mean(const G& g, int n, double phase) {
  std::vector<double> partial(kChunks, 0.0);
  const double h = kTwoPi / n;
  parallel_for(kChunks, [&](std::size_t c) {
    const int lo = static_cast<int>(c * n / kChunks);
    const int hi = static_cast<int>((c + 1) * n / kChunks);
    double s = 0.0;
    for (int k = lo; k < hi; ++k) s += g(phase + (k + 0.5) * h);
    partial[c] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total / n;
}

double angular_distance(double a, double b) {
  const double d = std::abs(normalize_arg(a) - normalize_arg(b));
  return std::min(d, kTwoPi - d);
}

std::vector<double> merged_args(std::vector<double> args) {
  for (auto& a : args) a = normalize_arg(a);
  std::sort(args.begin(), args.end());
  std::vector<double> out;
  for (double a : args)
    if (out.empty() || angular_distance(out.back(), a) > kAtomArgTolerance) out.push_back(a);
  if (out.size() > 1 && angular_distance(out.front(), out.back()) <= kAtomArgTolerance) out.pop_back();
  return out;
}

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

// 10-point Gauss-Legendre rule on [-1, 1], by Newton iteration on P_10.
struct GaussLegendre {
  static constexpr int kPoints = 10;
  double x[kPoints], w[kPoints];
  GaussLegendre() {
    for (int i = 0; i < kPoints; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= kPoints; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = kPoints * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// Integrals over a u-panel of the weighted integrand g(u) 2/(1 + u^2) and of
// the moments g, g log u used by the tail model.
struct PanelSums {
  double weighted = 0.0, plain = 0.0, log_moment = 0.0;
  PanelSums& operator+=(const PanelSums& o) {
    weighted += o.weighted;
    plain += o.plain;
    log_moment += o.log_moment;
    return *this;
  }
};

template <class G>
PanelSums gl_panel(const G& g, double a, double b) {
  const auto& rule = gauss_legendre();
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  PanelSums out;
  for (int i = 0; i < GaussLegendre::kPoints; ++i) {
    const double u = mid + half * rule.x[i];
    const double v = g(u) * rule.w[i] * half;
    out.weighted += v * 2.0 / (1.0 + u * u);
    out.plain += v;
    out.log_moment += v * std::log(std::max(u, 1e-300));
  }
  return out;
}

template <class G>
PanelSums adaptive_panel(const G& g, double a, double b, const PanelSums& whole, int depth) {
  const double m = 0.5 * (a + b);
  const PanelSums left = gl_panel(g, a, m), right = gl_panel(g, m, b);
  PanelSums both = left;
  both += right;
  if (depth >= 40 || std::abs(both.weighted - whole.weighted) <= 1e-14 + 1e-12 * (b - a)) return both;
  PanelSums out = adaptive_panel(g, a, m, left, depth + 1);
  out += adaptive_panel(g, m, b, right, depth + 1);
  return out;
}

// Boundary mean of log|f| when f has atoms or boundary singularities. Around
// each excluded point p the arc p + s tau, 0 < tau <= half gap, is mapped to
// u = cot(tau / 2) in [u0, inf), where the inner-function oscillation becomes
// periodic in u and zeros or poles at p become a log u term. [u0, U] is
// integrated by adaptive Gauss-Legendre panels; beyond U the integrand is
// modeled as a + b log u, fitted on [U/2, U]. U doubles until two
// successive totals agree.
CircleMean boundary_mean_with_exclusions(const AnalyticFunction& f, const std::vector<double>& points,
                                         const QuadratureOptions& options) {
  constexpr double kPanelWidth = 0.25;
  constexpr int kInitialPanels = 2048;
  const int max_panels = std::max(kInitialPanels, options.max_nodes / 8);

  struct Side {
    double p = 0.0, dir = 1.0, u0 = 0.0;
    std::vector<PanelSums> panels;
  };
  std::vector<Side> sides;
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double next = i + 1 < m ? points[i + 1] : points[0] + kTwoPi;
    const double gap = next - points[i];
    const double u0 = gap >= kTwoPi ? 0.0 : 1.0 / std::tan(0.25 * gap);
    sides.push_back({points[i], 1.0, u0, {}});
    sides.push_back({normalize_arg(next), -1.0, u0, {}});
  }

  auto integrand = [&f](const Side& side) {
    return [&f, &side](double u) {
      const double tau = 2.0 * std::atan(1.0 / u);
      const double v = f.log_abs(std::polar(1.0, side.p + side.dir * tau));
      if (!std::isfinite(v)) throw DomainError("function vanishes or is singular on the quadrature circle");
      return v;
    };
  };

  auto extend = [&](Side& side, int panels) {
    const int start = static_cast<int>(side.panels.size());
    side.panels.resize(panels);
    const auto g = integrand(side);
    const std::size_t count = panels - start;
    const std::size_t chunks = std::min<std::size_t>(kChunks, count);
    parallel_for(chunks, [&](std::size_t c) {
      const int lo = start + static_cast<int>(c * count / chunks);
      const int hi = start + static_cast<int>((c + 1) * count / chunks);
      for (int k = lo; k < hi; ++k) {
        const double a = side.u0 + k * kPanelWidth, b = a + kPanelWidth;
        side.panels[k] = adaptive_panel(g, a, b, gl_panel(g, a, b), 0);
      }
    });
  };

  // Side integral with the fitted tail beyond the last of `panels` panels.
  auto side_total = [&](const Side& side, int panels) {
    const double u_end = side.u0 + panels * kPanelWidth;
    const double u_mid = side.u0 + (panels / 2) * kPanelWidth;
    double head = 0.0;
    PanelSums window;
    for (int k = 0; k < panels; ++k) {
      head += side.panels[k].weighted;
      if (k >= panels / 2) window += side.panels[k];
    }
    auto int_l = [](double u) { return u * std::log(u) - u; };
    auto int_l2 = [](double u) {
      const double l = std::log(u);
      return u * (l * l - 2.0 * l + 2.0);
    };
    const double m00 = u_end - u_mid, m01 = int_l(u_end) - int_l(u_mid), m11 = int_l2(u_end) - int_l2(u_mid);
    const double det = m00 * m11 - m01 * m01;
    const double a = (window.plain * m11 - window.log_moment * m01) / det;
    const double b = (window.log_moment * m00 - window.plain * m01) / det;
    const double lu = std::log(u_end);
    const double tail_const = 2.0 * std::atan(1.0 / u_end);
    const double tail_log = 2.0 * ((lu + 1.0) / u_end - (3.0 * lu + 1.0) / (9.0 * std::pow(u_end, 3)));
    return head + a * tail_const + b * tail_log;
  };

  int panels = kInitialPanels;
  double prev = 0.0;
  bool have_prev = false;
  for (;;) {
    double total = 0.0;
    for (auto& side : sides) {
      extend(side, panels);
      total += side_total(side, panels);
    }
    const double mean = total / kTwoPi;
    const int nodes = static_cast<int>(sides.size()) * panels * GaussLegendre::kPoints;
    if (have_prev && std::abs(mean - prev) < options.boundary_tolerance) return {mean, std::abs(mean - prev), nodes};
    if (2 * panels > max_panels)
      throw QuadratureFailureError("boundary mean did not converge within the node budget", prev, mean);
    prev = mean;
    have_prev = true;
    panels *= 2;
  }
}

}  // namespace

std::vector<double> radii_ladder(int first, int last) {
  if (first < 1 || last < first || last > 50) throw ParameterError("invalid radii ladder");
  std::vector<double> r;
  for (int k = first; k <= last; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

CircleMean circle_mean_log_modulus(const AnalyticFunction& f, double r, const QuadratureOptions& options) {
  if (!(r > 0.0 && r <= 1.0)) throw ParameterError("circle radius must lie in (0, 1]");
  const bool boundary = r == 1.0;
  if (boundary) {
    std::vector<double> excluded = f.boundary_singular_args();
    excluded.insert(excluded.end(), f.atom_args().begin(), f.atom_args().end());
    if (!excluded.empty()) return boundary_mean_with_exclusions(f, merged_args(std::move(excluded)), options);
  }
  auto g = [&](double t) {
    const double v = f.log_abs(std::polar(r, t));
    if (!std::isfinite(v)) throw DomainError("function vanishes or is singular on the quadrature circle");
    return v;
  };

  const double tol = boundary ? options.boundary_tolerance : options.interior_tolerance;
  int n = options.min_nodes;
  double older = 0.0;
  double prev = trapezoid_mean(g, n, 0.0);
  while (2 * n <= options.max_nodes) {
    n *= 2;
    const double cur = trapezoid_mean(g, n, 0.0);
    if (std::abs(cur - prev) < tol) return {cur, std::abs(cur - prev), n};
    older = prev;
    prev = cur;
  }
  throw QuadratureFailureError("circle mean did not converge within the node budget", older, prev);
}

AtomMass atom_mass_at(const AnalyticFunction& f, double arg, const AtomMassOptions& options) {
  if (options.radii.empty()) throw ParameterError("atom mass needs at least one radius");
  AtomMass out;
  out.arg = normalize_arg(arg);
  out.point = std::polar(1.0, out.arg);
  std::vector<double> h;
  for (double r : options.radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("radii must lie in (0, 1)");
    const double la = f.log_abs(r * out.point);
    if (la == -std::numeric_limits<double>::infinity())
      throw RadialZeroError("function vanishes on the ray at r = " + std::to_string(r));
    out.per_radius.push_back(-(1.0 - r) * la / (1.0 + r));
    h.push_back(1.0 - r);
  }
  const Extrapolated e = extrapolate_to_zero(h, out.per_radius, options.extrapolation_depth);
  out.mass = e.value;
  out.uncertainty = e.uncertainty;
  if (out.mass < 0.0) {
    out.mass = 0.0;
    out.clamped = true;
  }
  return out;
}

SingularMassEstimate total_singular_mass(const AnalyticFunction& f, std::span<const ZeroRecord> zeros_inside,
                                         const MassOptions& options) {
  if (options.radii.empty()) throw ParameterError("mass estimate needs at least one radius");
  SingularMassEstimate est;
  est.radii = options.radii;

  // Divide out a zero at the origin.
  if (f.scaled(0.0).is_zero()) {
    const int max_order = std::min(f.max_derivative_order(), 64);
    if (max_order == 0) throw ParameterError("f(0) = 0 and no derivatives are available to divide it out");
    const MultiplicityResult m = multiplicity_at(f, 0.0, max_order);
    if (m.saturated) throw ParameterError("function vanishes to every available order at the origin");
    est.zero_order_at_origin = m.multiplicity;
    est.log_abs_f0 = std::log(std::abs(f.derivative(m.multiplicity, 0.0)) / factorial(m.multiplicity));
  } else {
    est.log_abs_f0 = f.log_abs(0.0);
  }

  // Inventory check against the argument principle.
  const CountResult count = count_zeros(f, 0.0, options.inventory_radius);
  int listed = 0;
  for (const auto& z : zeros_inside)
    if (std::abs(z.location) < count.radius_used) listed += z.multiplicity;
  if (listed != count.count)
    throw InconsistentZeroInventoryError("zero inventory lists " + std::to_string(listed) + " zeros but " +
                                         std::to_string(count.count) + " lie within radius " +
                                         std::to_string(count.radius_used));

  const CircleMean boundary = circle_mean_log_modulus(f, 1.0, options.quadrature);
  est.boundary_mean = boundary.value;

  std::vector<double> h;
  for (double r : options.radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("radii must lie in (0, 1)");
    double correction = 0.0;
    for (const auto& z : zeros_inside) {
      const double a = std::abs(z.location);
      if (a <= 1e-10 || a >= r) continue;
      correction += z.multiplicity * std::log(r / a);
    }
    est.deficits.push_back(boundary.value - est.log_abs_f0 - correction);
    h.push_back(1.0 - r);
  }
  const Extrapolated e = extrapolate_to_zero(h, est.deficits, options.extrapolation_depth);
  est.total_mass = e.value;
  est.uncertainty = e.uncertainty + boundary.uncertainty;
  est.extrapolated = est.radii.size() > 1;

  const std::vector<double> candidates = merged_args(options.atom_args ? *options.atom_args : f.atom_args());
  AtomMassOptions ao{options.radii, options.extrapolation_depth};
  for (double a : candidates) est.atoms.push_back(atom_mass_at(f, a, ao));
  return est;
}

const char* to_string(OuterVerdict v) {
  switch (v) {
    case OuterVerdict::outer: return "outer";
    case OuterVerdict::not_outer: return "not-outer";
    case OuterVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

FactorizationDiagnostic outerness_test(const AnalyticFunction& f, std::span<const ZeroRecord> zeros_inside,
                                       const OuterOptions& options) {
  FactorizationDiagnostic d;
  const SingularMassEstimate est = total_singular_mass(f, zeros_inside, options.mass);
  d.log_abs_f0 = est.log_abs_f0;
  d.inner_deficit = est.total_mass;
  d.uncertainty = est.uncertainty;
  for (const auto& z : zeros_inside) {
    d.located_zeros += z.multiplicity;
    d.blaschke_sum_located += z.multiplicity * (1.0 - std::abs(z.location));
  }
  // A zero on a report circle spoils its quadrature; the radius is nudged
  // alternately inward and outward, and the radius actually used is reported.
  for (double r0 : options.report_radii) {
    for (int k = 0;; ++k) {
      const double r = std::min(r0 * (1.0 + (k % 2 ? 1.0 : -1.0) * 1e-3 * ((k + 1) / 2)), 1.0 - 1e-6);
      try {
        const double mean = circle_mean_log_modulus(f, r, options.mass.quadrature).value;
        d.radii.push_back(r);
        d.log_mod_mean_at_radii.push_back(mean);
        break;
      } catch (const Error&) {
        if (k >= 5) throw;
      }
    }
  }
  if (d.located_zeros > 0 || est.zero_order_at_origin > 0 || d.inner_deficit >= 10.0 * options.tol_outer)
    d.outer_verdict = OuterVerdict::not_outer;
  else if (d.inner_deficit <= options.tol_outer)
    d.outer_verdict = OuterVerdict::outer;
  else
    d.outer_verdict = OuterVerdict::inconclusive;
  return d;
}

MeasureComparison measure_leq(const SingularMassEstimate& nu, const SingularMassEstimate& mu, double tol) {
  MeasureComparison out;
  out.margin = mu.total_mass + tol - nu.total_mass;
  if (out.margin < 0.0) {
    out.leq = false;
    out.reason = "total mass exceeds the dominating total";
  }
  for (const auto& a : nu.atoms) {
    if (a.mass <= tol) continue;
    const AtomMass* match = nullptr;
    for (const auto& b : mu.atoms)
      if (angular_distance(a.arg, b.arg) <= kAtomMatchTolerance) {
        match = &b;
        break;
      }
    if (!match) {
      out.leq = false;
      out.margin = std::min(out.margin, tol - a.mass);
      if (out.reason.empty()) out.reason = "atom outside the dominating support";
      continue;
    }
    const double slack = match->mass + tol - a.mass;
    out.margin = std::min(out.margin, slack);
    if (slack < 0.0) {
      out.leq = false;
      if (out.reason.empty()) out.reason = "atom mass exceeds the dominating atom";
    }
  }
  return out;
}

DivisibilityReport singular_divisibility_check(std::span<const StructuredFunction> fs,
                                               const DivisibilityOptions& options) {
  if (fs.size() < 2) throw ParameterError("need at least two functions");
  if (options.lambda_samples < 0) throw ParameterError("lambda_samples must be nonnegative");
  if (!independence_check(fs).independent) throw DependentInputsError("inputs are numerically linearly dependent");

  std::vector<double> candidates;
  for (const auto& f : fs) {
    const auto a = f.atom_args();
    candidates.insert(candidates.end(), a.begin(), a.end());
  }
  candidates = merged_args(candidates);
  MassOptions mass = options.mass;
  mass.atom_args = candidates;

  DivisibilityReport report;
  const StructuredFunction w = wronskian_structured(fs);
  const AnalyticFunction wf = AnalyticFunction::from(w, 1);
  const auto w_zeros = locate_zeros(wf, mass.inventory_radius, options.max_zeros, options.locate);
  report.wronskian_mass = total_singular_mass(wf, w_zeros, mass);
  report.tolerance = std::max(options.relative_tolerance * report.wronskian_mass.total_mass, options.tolerance_floor);

  Rng rng(options.seed);
  report.samples.resize(options.lambda_samples);
  for (auto& s : report.samples) {
    double norm = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      s.lambdas.emplace_back(rng.normal(), rng.normal());
      norm += std::norm(s.lambdas.back());
    }
    for (auto& l : s.lambdas) l /= std::sqrt(norm);
  }

  parallel_for(report.samples.size(), [&](std::size_t i) {
    DivisibilitySample& s = report.samples[i];
    try {
      const StructuredFunction g = structured_combine(fs, s.lambdas);
      const AnalyticFunction gf = AnalyticFunction::from(g, 1);
      const auto zeros = locate_zeros(gf, mass.inventory_radius, options.max_zeros, options.locate);
      const SingularMassEstimate est = total_singular_mass(gf, zeros, mass);
      const MeasureComparison cmp = measure_leq(est, report.wronskian_mass, report.tolerance);
      s.ok = true;
      s.leq = cmp.leq;
      s.margin = cmp.margin;
      s.total_mass = est.total_mass;
      s.atoms = est.atoms;
      if (!cmp.leq) s.error = cmp.reason;
    } catch (const Error& e) {
      s.ok = false;
      s.error = e.what();
    }
  });

  report.all_pass = true;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : report.samples) {
    if (!s.ok || !s.leq) report.all_pass = false;
    if (s.ok) report.worst_margin = std::min(report.worst_margin, s.margin);
  }
  if (!std::isfinite(report.worst_margin)) report.worst_margin = 0.0;
  return report;
}

const char* to_string(SobolevVerdict v) {
  switch (v) {
    case SobolevVerdict::plausibly_in: return "plausibly-in";
    case SobolevVerdict::likely_not: return "likely-not";
    case SobolevVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

SobolevReport hardy_sobolev_diagnostic(const StructuredFunction& f, int n, std::span<const double> radii,
                                       const QuadratureOptions& options) {
  if (n < 0) throw ParameterError("derivative order must be nonnegative");
  SobolevReport rep;
  rep.order = n;
  const StructuredFunction fn = f.derivative_chain(n).back();
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("radii must lie in (0, 1)");
    auto g = [&](double t) { return std::abs(fn(std::polar(r, t))); };
    int nodes = options.min_nodes;
    double prev = trapezoid_mean(g, nodes, 0.0);
    double cur = prev;
    while (2 * nodes <= options.max_nodes) {
      nodes *= 2;
      cur = trapezoid_mean(g, nodes, 0.0);
      if (std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur))) break;
      prev = cur;
    }
    rep.radii.push_back(r);
    rep.integrals.push_back(cur);
  }
  const auto& v = rep.integrals;
  const std::size_t m = v.size();
  if (m < 2) return rep;
  auto ratio = [&](std::size_t i) { return v[i - 1] > 0.0 ? v[i] / v[i - 1] : (v[i] > 0.0 ? 1e300 : 1.0); };
  const double last = ratio(m - 1);
  bool steady_growth = m >= 4;
  for (std::size_t i = m - 3; steady_growth && i < m; ++i) steady_growth = ratio(i) >= 1.2;
  if (std::abs(last - 1.0) <= 0.10)
    rep.verdict = SobolevVerdict::plausibly_in;
  else if (last >= 2.0 || steady_growth)
    rep.verdict = SobolevVerdict::likely_not;
  return rep;
}

std::vector<double> boundary_mass_scan(const AnalyticFunction& f, double r, int points, double threshold) {
  std::vector<double> hits;
  for (int k = 0; k < points; ++k) {
    const double t = kTwoPi * k / points;
    const double v = -(1.0 - r) * f.log_abs(std::polar(r, t));
    if (v > threshold) hits.push_back(t);
  }
  return hits;
}

std::string mass_trace_csv(const SingularMassEstimate& e) {
  std::ostringstream out;
  out << "r,deficit";
  char buf[64];
  for (const auto& a : e.atoms) {
    std::snprintf(buf, sizeof buf, ",mass_at_%.12g", a.arg);
    out << buf;
  }
  out << '\n';
  for (std::size_t i = 0; i < e.radii.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", e.radii[i], e.deficits[i]);
    out << buf;
    for (const auto& a : e.atoms) {
      std::snprintf(buf, sizeof buf, ",%.17g", a.per_radius[i]);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hardyfactor
