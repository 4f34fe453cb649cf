#include "hardyfactor/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/factor.hpp"
#include "hardyfactor/fixtures.hpp"
#include "hardyfactor/parallel.hpp"
#include "hardyfactor/poly_roots.hpp"
#include "hardyfactor/report.hpp"
#include "hardyfactor/wronskian.hpp"
#include "hardyfactor/zeros.hpp"

namespace hardyfactor {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& pointer, const std::string& message) { throw ConfigError(pointer, message); }

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

void only_keys(const Json& j, const std::string& pointer, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(pointer, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) fail(child(pointer, key), "unknown field");
}

double number(const Json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(pointer, "expected a finite number");
  return v;
}

double number_in(const Json& j, const std::string& pointer, double lo, double hi, bool open_lo, bool open_hi) {
  const double v = number(j, pointer);
  if (v < lo || v > hi || (open_lo && v == lo) || (open_hi && v == hi)) {
    std::ostringstream os;
    os << "must lie in " << (open_lo ? "(" : "[") << lo << ", " << hi << (open_hi ? ")" : "]");
    fail(pointer, os.str());
  }
  return v;
}

long integer_in(const Json& j, const std::string& pointer, long lo, long hi) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
    fail(pointer, "must be at most " + std::to_string(hi));
  const long v = j.get<long>();
  if (v < lo || v > hi) fail(pointer, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

bool boolean(const Json& j, const std::string& pointer) {
  if (!j.is_boolean()) fail(pointer, "expected true or false");
  return j.get<bool>();
}

const Json& array(const Json& j, const std::string& pointer, std::size_t min_size = 0) {
  if (!j.is_array()) fail(pointer, "expected an array");
  if (j.size() < min_size) fail(pointer, "needs at least " + std::to_string(min_size) + " entries");
  return j;
}

ScenarioKind scenario_from(const Json& j, const std::string& pointer) {
  if (!j.is_string()) fail(pointer, "expected a string");
  const std::string s = j.get<std::string>();
  for (auto k : {ScenarioKind::theorem_a, ScenarioKind::theorem_1, ScenarioKind::derivative_lemma, ScenarioKind::frostman})
    if (s == to_string(k)) return k;
  fail(pointer, "unknown scenario '" + s + "'");
}

std::vector<double> radii_from(const Json& j, const std::string& pointer) {
  if (j.is_object()) {
    only_keys(j, pointer, {"first", "last"});
    if (!j.contains("first") || !j.contains("last")) fail(pointer, "needs 'first' and 'last'");
    const long first = integer_in(j["first"], child(pointer, "first"), 1, 40);
    const long last = integer_in(j["last"], child(pointer, "last"), 1, 40);
    if (last < first + 2) fail(pointer, "needs at least three radii");
    return radii_ladder(static_cast<int>(first), static_cast<int>(last));
  }
  const Json& a = array(j, pointer, 3);
  std::vector<double> radii;
  for (std::size_t i = 0; i < a.size(); ++i) {
    radii.push_back(number_in(a[i], child(pointer, i), 0.0, 1.0, true, true));
    if (i > 0 && radii[i] <= radii[i - 1]) fail(child(pointer, i), "radii must increase");
  }
  return radii;
}

Tolerances tolerances_from(const Json& j, const std::string& pointer) {
  Tolerances t;
  const std::map<std::string, double*> fields = {
      {"rank", &t.rank},           {"deriv", &t.deriv},
      {"soundness", &t.soundness}, {"agreement", &t.agreement},
      {"identity", &t.identity},   {"outer", &t.outer},
      {"divisibility_relative", &t.divisibility_relative},
      {"divisibility_floor", &t.divisibility_floor},
      {"lemma", &t.lemma}};
  if (!j.is_object()) fail(pointer, "expected an object");
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end()) fail(child(pointer, key), "unknown field");
    *it->second = number_in(value, child(pointer, key), 0.0, 1.0, true, true);
  }
  return t;
}

Json tolerances_json(const Tolerances& t) {
  return {{"rank", t.rank},
          {"deriv", t.deriv},
          {"soundness", t.soundness},
          {"agreement", t.agreement},
          {"identity", t.identity},
          {"outer", t.outer},
          {"divisibility_relative", t.divisibility_relative},
          {"divisibility_floor", t.divisibility_floor},
          {"lemma", t.lemma}};
}

// Decoded inputs; parse_config runs these once so that schema errors surface
// before any work starts.
std::vector<ExactPolynomial> theorem_a_functions(const Json& j) {
  const std::string pointer = "/functions";
  if (j.is_null()) return {ExactPolynomial{1}, ExactPolynomial{0, 0, 1}};
  const Json& a = array(j, pointer, 2);
  if (a.size() > 6) fail(pointer, "at most 6 functions");
  std::vector<ExactPolynomial> ps;
  for (std::size_t i = 0; i < a.size(); ++i) ps.push_back(exact_polynomial_from_json(a[i], child(pointer, i)));
  return ps;
}

struct NamedTuple {
  std::string name;
  std::vector<StructuredFunction> fs;
};

std::vector<NamedTuple> theorem_1_fixtures(const Json& j, double mass) {
  if (j.is_null()) {
    const auto s = atom_function(0.0, mass);
    const auto h = power_times_atom(4, 0.0, mass);
    return {{"s-zs", {s, times_z_power(s, 1)}},
            {"smooth-4", {h, times_z_power(h, 1)}},
            {"s-zs-z2s", {s, times_z_power(s, 1), times_z_power(s, 2)}}};
  }
  const std::string pointer = "/fixtures";
  const Json& a = array(j, pointer, 1);
  std::vector<NamedTuple> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = child(pointer, i);
    only_keys(a[i], p, {"name", "functions"});
    if (!a[i].contains("name") || !a[i]["name"].is_string()) fail(child(p, "name"), "expected a string");
    NamedTuple t{a[i]["name"].get<std::string>(), {}};
    if (t.name.empty() || t.name.find_first_of("/\\ ") != std::string::npos)
      fail(child(p, "name"), "must be non-empty without slashes or spaces");
    if (!names.insert(t.name).second) fail(child(p, "name"), "duplicate fixture name");
    if (!a[i].contains("functions")) fail(child(p, "functions"), "missing");
    const Json& fs = array(a[i]["functions"], child(p, "functions"), 2);
    if (fs.size() > 5) fail(child(p, "functions"), "at most 5 functions");
    for (std::size_t k = 0; k < fs.size(); ++k)
      t.fs.push_back(structured_from_json(fs[k], child(child(p, "functions"), k)));
    out.push_back(std::move(t));
  }
  return out;
}

struct LemmaFixture {
  int power = 4;
  double arg = 0.0;
  double mass = 1.0;
};

std::vector<LemmaFixture> lemma_fixtures(const Json& j, double mass) {
  if (j.is_null()) return {{4, 0.0, mass}, {6, 0.0, mass}};
  const std::string pointer = "/fixtures";
  const Json& a = array(j, pointer, 1);
  std::vector<LemmaFixture> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = child(pointer, i);
    only_keys(a[i], p, {"power", "arg", "mass"});
    LemmaFixture f;
    if (!a[i].contains("power")) fail(child(p, "power"), "missing");
    f.power = static_cast<int>(integer_in(a[i]["power"], child(p, "power"), 0, 16));
    if (a[i].contains("arg")) f.arg = number(a[i]["arg"], child(p, "arg"));
    f.mass = a[i].contains("mass") ? number_in(a[i]["mass"], child(p, "mass"), 0.0, 50.0, true, false) : mass;
    out.push_back(f);
  }
  return out;
}

AtomicSingularMeasure theta_measure(const Json& j) {
  if (j.is_null()) return AtomicSingularMeasure::single(0.0, 1.0);
  return measure_from_json(j, "/theta");
}

// ---------------------------------------------------------------------------

using Clock = std::chrono::steady_clock;

struct CheckTask {
  std::string name;
  std::function<CheckResult()> run;
};

std::vector<CheckResult> run_checks(std::vector<CheckTask> tasks) {
  std::vector<CheckResult> out(tasks.size());
  // Checks run one after another; each parallelizes internally.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto start = Clock::now();
    try {
      out[i] = tasks[i].run();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      out[i].passed = false;
      out[i].details = {{"error", e.what()}};
    }
    out[i].name = tasks[i].name;
    out[i].seconds = std::chrono::duration<double>(Clock::now() - start).count();
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

MassOptions mass_options(const ScenarioConfig& c) {
  MassOptions m;
  if (!c.radii.empty()) m.radii = c.radii;
  m.inventory_radius = c.radius;
  return m;
}

AtomMassOptions atom_options(const ScenarioConfig& c) {
  AtomMassOptions o;
  if (!c.radii.empty()) o.radii = c.radii;
  return o;
}

// ---------------------------------------------------------------------------
// theorem-a

// Product of the column norms of the Wronskian matrix: the natural size of
// the determinant's rounding error.
double hadamard_bound(std::span<const AnalyticFunction> fs, Complex z) {
  const auto m = wronskian_matrix_at(fs, z);
  double h = 1.0;
  for (Eigen::Index col = 0; col < m.entries.cols(); ++col) h *= m.entries.col(col).norm();
  return h;
}

struct TupleOutcome {
  int n = 0;
  int combinations = 0;
  int deep_roots = 0;
  int violations = 0;
  double worst_distance = 0.0;
  int certificates = 0;
  int verified = 0;
  int min_multiplicity_excess = 1 << 20;
  std::string certificate_failure;
  double agreement = 0.0;
  bool identity_checked = false;
  int identity_mismatches = 0;
};

ScenarioReport run_theorem_a(const ScenarioConfig& c) {
  ScenarioReport report;
  const int samples = c.sample_count > 0 ? c.sample_count : 200;
  const auto configured = theorem_a_functions(c.functions);

  DeepZeroOptions dz;
  dz.radius = c.radius;
  dz.tol_rank = c.tolerances.rank;
  dz.tol_deriv = c.tolerances.deriv;

  // All draws happen up front on one stream; workers only read them.
  Rng rng(c.seed);
  std::vector<PolynomialTuple> tuples;
  std::vector<std::vector<std::vector<ExactComplex>>> lambdas;
  std::vector<Complex> probe_points;
  for (int i = 0; i < samples; ++i) {
    tuples.push_back(random_polynomial_tuple(rng));
    lambdas.push_back(lambda_draws(rng, tuples.back().n, c.lambda_count));
    probe_points.push_back(rng.in_disk(0.9));
  }
  constexpr int kStructuredTuples = 20, kStructuredPoints = 20;
  std::vector<std::vector<StructuredFunction>> structured;
  std::vector<std::vector<Complex>> structured_lambdas;
  std::vector<std::vector<Complex>> structured_points;
  for (int i = 0; i < kStructuredTuples; ++i) {
    structured.push_back(random_structured_tuple(rng));
    std::vector<Complex> l;
    for (std::size_t j = 0; j < structured.back().size(); ++j) l.emplace_back(rng.normal(), rng.normal());
    structured_lambdas.push_back(std::move(l));
    std::vector<Complex> pts;
    for (int k = 0; k < kStructuredPoints; ++k) pts.push_back(rng.in_disk(0.9));
    structured_points.push_back(std::move(pts));
  }

  std::vector<TupleOutcome> outcomes(tuples.size());
  std::vector<DeepZeroReport> deep_reports(tuples.size());
  const auto sweep_start = Clock::now();
  parallel_for(tuples.size(), [&](std::size_t i) {
    const auto& t = tuples[i];
    TupleOutcome& o = outcomes[i];
    o.n = t.n;
    const ExactPolynomial w = wronskian_exact(t.ps);
    const RootSet wroots = poly_roots(w);
    for (const auto& l : lambdas[i]) {
      ExactPolynomial g;
      for (std::size_t j = 0; j < t.ps.size(); ++j)
        if (!l[j].is_zero()) g = g + t.ps[j].scaled(l[j]);
      if (g.is_zero() || *g.degree() == 0) continue;
      ++o.combinations;
      for (const auto& r : poly_roots(g).roots) {
        if (r.multiplicity < t.n + 1) continue;
        ++o.deep_roots;
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& wr : wroots.roots) nearest = std::min(nearest, std::abs(wr.location - r.location));
        o.worst_distance = std::max(o.worst_distance, nearest);
        if (!(nearest <= c.tolerances.soundness)) ++o.violations;
      }
    }

    deep_reports[i] = deep_zero_set(t.ps, dz);
    for (const auto& cert : deep_reports[i].certificates) {
      ++o.certificates;
      if (cert.verified && cert.verified_multiplicity >= t.n + 1) {
        ++o.verified;
      } else if (o.certificate_failure.empty()) {
        o.certificate_failure = cert.failure.empty() ? "multiplicity below n + 1" : cert.failure;
      }
      o.min_multiplicity_excess = std::min(o.min_multiplicity_excess, cert.verified_multiplicity - (t.n + 1));
    }

    std::vector<AnalyticFunction> fs;
    for (const auto& p : t.ps) fs.push_back(AnalyticFunction::from(p));
    const Complex det = wronskian_matrix_at(fs, probe_points[i]).entries.determinant();
    const Complex exact = to_float(w)(probe_points[i]);
    o.agreement = std::abs(det - exact) / std::max(std::abs(exact), 1e-6 * hadamard_bound(fs, probe_points[i]));

    if (i < 100) {
      o.identity_checked = true;
      // The last draw is a random combination, not a unit vector.
      const auto& l = lambdas[i].back();
      for (std::size_t k = 0; k < t.ps.size(); ++k) {
        if (l[k].is_zero()) continue;
        std::vector<ExactPolynomial> replaced = t.ps;
        ExactPolynomial g;
        for (std::size_t j = 0; j < t.ps.size(); ++j)
          if (!l[j].is_zero()) g = g + t.ps[j].scaled(l[j]);
        replaced[k] = g;
        if (!(wronskian_exact(replaced) == w.scaled(l[k]))) ++o.identity_mismatches;
      }
    }
  });
  const double sweep_seconds = std::chrono::duration<double>(Clock::now() - sweep_start).count();

  std::vector<double> structured_errors(structured.size());
  parallel_for(structured.size(), [&](std::size_t i) {
    const auto& fs = structured[i];
    const auto& l = structured_lambdas[i];
    const StructuredFunction w = wronskian_structured(fs);
    const StructuredFunction g = structured_combine(fs, l);
    double worst = 0.0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      std::vector<StructuredFunction> replaced = fs;
      replaced[k] = g;
      const StructuredFunction wk = wronskian_structured(replaced);
      std::vector<AnalyticFunction> af;
      for (const auto& f : replaced) af.push_back(AnalyticFunction::from(f, static_cast<int>(fs.size())));
      for (Complex z : structured_points[i]) {
        const Complex lhs = wk(z), rhs = l[k] * w(z);
        // Relative to |rhs|, floored at 1e-6 of the Hadamard bound so that
        // points next to a zero of W are judged on the determinant's scale.
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-6 * hadamard_bound(af, z)));
      }
    }
    structured_errors[i] = worst;
  });

  std::vector<CheckTask> tasks;
  tasks.push_back({"theorem-a/configured-tuple", [&] {
                     CheckResult r;
                     const auto rep = deep_zero_set(std::span<const ExactPolynomial>(configured), dz);
                     r.passed = rep.all_verified();
                     r.margin = r.passed ? 1.0 : -1.0;
                     Json fs = Json::array();
                     for (const auto& p : configured) fs.push_back(to_json(p));
                     r.details = {{"functions", fs}, {"wronskian", to_json(wronskian_exact(configured))},
                                  {"deep_zeros", to_json(rep)}};
                     std::vector<Complex> certs, others;
                     for (const auto& cert : rep.certificates) certs.push_back(cert.point);
                     if (c.emit_svg) report.artifacts.push_back({"zeros.svg", zero_map_svg(certs, others)});
                     return r;
                   }});
  tasks.push_back({"theorem-a/soundness", [&] {
                     CheckResult r;
                     int combos = 0, deep = 0, violations = 0;
                     double worst = 0.0;
                     for (const auto& o : outcomes) {
                       combos += o.combinations;
                       deep += o.deep_roots;
                       violations += o.violations;
                       worst = std::max(worst, o.worst_distance);
                     }
                     r.passed = violations == 0 && deep > 0;
                     r.margin = c.tolerances.soundness - worst;
                     r.details = {{"tuples", outcomes.size()},
                                  {"lambda_per_tuple", c.lambda_count},
                                  {"combinations", combos},
                                  {"deep_roots", deep},
                                  {"violations", violations},
                                  {"worst_distance", worst},
                                  {"tolerance", c.tolerances.soundness}};
                     return r;
                   }});
  tasks.push_back({"theorem-a/completeness", [&] {
                     CheckResult r;
                     int certs = 0, verified = 0, excess = 1 << 20;
                     std::string first_failure;
                     for (const auto& o : outcomes) {
                       certs += o.certificates;
                       verified += o.verified;
                       if (o.certificates > 0) excess = std::min(excess, o.min_multiplicity_excess);
                       if (first_failure.empty()) first_failure = o.certificate_failure;
                     }
                     r.passed = certs > 0 && certs == verified;
                     r.margin = certs > 0 ? excess : -1;
                     r.details = {{"certificates", certs}, {"verified", verified},
                                  {"min_multiplicity_excess", certs > 0 ? excess : 0}};
                     if (!first_failure.empty()) r.details["first_failure"] = first_failure;
                     return r;
                   }});
  tasks.push_back({"theorem-a/cross-engine", [&] {
                     CheckResult r;
                     double worst = 0.0;
                     for (const auto& o : outcomes) worst = std::max(worst, o.agreement);
                     r.passed = worst <= c.tolerances.agreement;
                     r.margin = c.tolerances.agreement - worst;
                     r.details = {{"points", outcomes.size()}, {"worst_relative_difference", worst},
                                  {"tolerance", c.tolerances.agreement}};
                     return r;
                   }});
  tasks.push_back({"theorem-a/wk-identity", [&] {
                     CheckResult r;
                     int checked = 0, mismatches = 0;
                     for (const auto& o : outcomes)
                       if (o.identity_checked) {
                         ++checked;
                         mismatches += o.identity_mismatches;
                       }
                     double worst = 0.0;
                     for (double e : structured_errors) worst = std::max(worst, e);
                     r.passed = mismatches == 0 && worst <= c.tolerances.agreement;
                     r.margin = mismatches == 0 ? c.tolerances.agreement - worst : -1.0;
                     r.details = {{"exact_tuples", checked},
                                  {"exact_mismatches", mismatches},
                                  {"structured_tuples", structured_errors.size()},
                                  {"structured_points", kStructuredPoints},
                                  {"structured_worst_relative", worst},
                                  {"tolerance", c.tolerances.agreement}};
                     return r;
                   }});
  report.checks = run_checks(std::move(tasks));
  for (auto& check : report.checks)
    if (check.name == "theorem-a/soundness") check.seconds += sweep_seconds;
  return report;
}

// ---------------------------------------------------------------------------
// theorem-1

// Scan hits this close to a candidate atom belong to it.
constexpr double kScanMatchRadius = 0.05;

ScenarioReport run_theorem_1(const ScenarioConfig& c) {
  ScenarioReport report;
  const auto fixtures = theorem_1_fixtures(c.fixtures, c.mass);
  const int samples = c.sample_count > 0 ? c.sample_count : 50;
  const std::vector<double> sobolev_radii = radii_ladder(2, 10);
  std::vector<Series> decay;
  std::vector<CheckTask> tasks;
  for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
    tasks.push_back({"theorem-1/divisibility/" + fixtures[fi].name, [&, fi] {
                       const auto& fx = fixtures[fi];
                       CheckResult r;
                       const auto independence = independence_check(std::span<const StructuredFunction>(fx.fs));
                       const int n = static_cast<int>(fx.fs.size()) - 1;
                       Json sobolev = Json::array();
                       bool smooth = true;
                       for (const auto& f : fx.fs) {
                         const auto s = hardy_sobolev_diagnostic(f, n, sobolev_radii);
                         smooth = smooth && s.verdict == SobolevVerdict::plausibly_in;
                         sobolev.push_back(to_json(s));
                       }
                       Json inputs = Json::array();
                       for (const auto& f : fx.fs) inputs.push_back(to_json(f));
                       r.details = {{"functions", inputs},
                                    {"independent", independence.independent},
                                    {"sobolev", sobolev},
                                    {"inputs_plausibly_smooth", smooth}};
                       if (!independence.independent) {
                         r.passed = false;
                         r.margin = -1.0;
                         r.details["error"] = "inputs are linearly dependent";
                         return r;
                       }
                       DivisibilityOptions o;
                       o.lambda_samples = samples;
                       o.seed = c.seed + fi;
                       o.relative_tolerance = c.tolerances.divisibility_relative;
                       o.tolerance_floor = c.tolerances.divisibility_floor;
                       o.mass = mass_options(c);
                       const auto d = singular_divisibility_check(std::span<const StructuredFunction>(fx.fs), o);
                       int failures = 0;
                       double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                       for (const auto& s : d.samples) {
                         failures += !(s.ok && s.leq);
                         lo = std::min(lo, s.total_mass);
                         hi = std::max(hi, s.total_mass);
                       }
                       // Without smooth inputs the divisibility claim is not asserted.
                       r.passed = d.all_pass || !smooth;
                       r.margin = d.worst_margin;
                       r.details["excluded"] = !d.all_pass && !smooth;
                       const StructuredFunction wf = wronskian_structured(std::span<const StructuredFunction>(fx.fs));
                       r.details["wronskian"] = to_json(wf);
                       r.details["wronskian_mass"] = to_json(d.wronskian_mass);
                       r.details["tolerance"] = d.tolerance;
                       r.details["samples"] = d.samples.size();
                       r.details["sample_failures"] = failures;
                       r.details["sample_mass_range"] = {lo, hi};
                       r.details["all_pass"] = d.all_pass;
                       // Coarse scan of W for mass away from the input atoms.
                       std::vector<double> candidates;
                       for (const auto& f : fx.fs)
                         for (double a : f.atom_args()) candidates.push_back(a);
                       Json surprises = Json::array();
                       for (double t : boundary_mass_scan(AnalyticFunction::from(wf))) {
                         bool known = false;
                         for (double a : candidates) {
                           const double d = std::abs(std::remainder(t - a, 2.0 * kPi));
                           known = known || d <= kScanMatchRadius;
                         }
                         if (!known) surprises.push_back(t);
                       }
                       r.details["boundary_scan_unexpected_args"] = surprises;
                       r.details["worst_margin"] = d.worst_margin;
                       if (c.emit_csv)
                         r.details["trace"] = "traces/" + fx.name + "-wronskian.csv";
                       return r;
                     }});
  }
  report.checks = run_checks(std::move(tasks));
  for (const auto& check : report.checks) {
    if (!check.details.contains("wronskian_mass")) continue;
    const std::string name = check.name.substr(check.name.rfind('/') + 1);
    const auto& wm = check.details["wronskian_mass"];
    if (c.emit_csv) {
      // Rebuild the trace from the reported estimate.
      SingularMassEstimate e;
      e.radii = wm["radii_used"].get<std::vector<double>>();
      e.deficits = wm["deficits"].get<std::vector<double>>();
      for (const auto& a : wm["atom_masses"]) {
        AtomMass m;
        m.arg = a["arg"].get<double>();
        m.per_radius = a["per_radius"].get<std::vector<double>>();
        e.atoms.push_back(m);
      }
      report.artifacts.push_back({"traces/" + name + "-wronskian.csv", mass_trace_csv(e)});
    }
    if (!wm["atom_masses"].empty()) {
      const auto& a = wm["atom_masses"][0];
      decay.push_back({name, wm["radii_used"].get<std::vector<double>>(), a["per_radius"].get<std::vector<double>>()});
    }
  }
  if (c.emit_svg && !decay.empty()) report.artifacts.push_back({"radial-decay.svg", radial_decay_svg(decay)});
  return report;
}

// ---------------------------------------------------------------------------
// derivative-lemma

ScenarioReport run_derivative_lemma(const ScenarioConfig& c) {
  ScenarioReport report;
  const auto fixtures = lemma_fixtures(c.fixtures, c.mass);
  const auto options = atom_options(c);
  std::vector<CheckTask> tasks;
  std::vector<AtomMass> h_masses(fixtures.size()), dh_masses(fixtures.size());
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    std::ostringstream name;
    name << "derivative-lemma/N" << fixtures[i].power << "-arg" << fixtures[i].arg << "-c" << fixtures[i].mass;
    tasks.push_back({name.str(), [&, i] {
                       const auto& fx = fixtures[i];
                       const auto h = power_times_atom(fx.power, fx.arg, fx.mass);
                       const auto dh = h.derivative();
                       h_masses[i] = atom_mass_at(AnalyticFunction::from(h), fx.arg, options);
                       dh_masses[i] = atom_mass_at(AnalyticFunction::from(dh), fx.arg, options);
                       CheckResult r;
                       const double floor = h_masses[i].mass * (1.0 - c.tolerances.lemma);
                       r.passed = dh_masses[i].mass >= floor;
                       r.margin = dh_masses[i].mass - floor;
                       r.details = {{"power", fx.power},
                                    {"arg", fx.arg},
                                    {"mass", fx.mass},
                                    {"h", to_json(h)},
                                    {"h_prime", to_json(dh)},
                                    {"atom_mass_h", to_json(h_masses[i])},
                                    {"atom_mass_h_prime", to_json(dh_masses[i])},
                                    {"tolerance", c.tolerances.lemma}};
                       return r;
                     }});
  }
  report.checks = run_checks(std::move(tasks));
  std::vector<Series> decay;
  std::ostringstream csv;
  csv.precision(17);
  csv << "power,arg,mass,r,h,h_prime\n";
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const std::string label = "N=" + std::to_string(fixtures[i].power);
    decay.push_back({label + " h", options.radii, h_masses[i].per_radius});
    decay.push_back({label + " h'", options.radii, dh_masses[i].per_radius});
    for (std::size_t k = 0; k < h_masses[i].per_radius.size() && k < dh_masses[i].per_radius.size(); ++k)
      csv << fixtures[i].power << ',' << fixtures[i].arg << ',' << fixtures[i].mass << ',' << options.radii[k] << ','
          << h_masses[i].per_radius[k] << ',' << dh_masses[i].per_radius[k] << '\n';
  }
  if (c.emit_csv) report.artifacts.push_back({"traces/atom-mass.csv", csv.str()});
  if (c.emit_svg) report.artifacts.push_back({"radial-decay.svg", radial_decay_svg(decay)});
  return report;
}

// ---------------------------------------------------------------------------
// frostman

// Solutions of S(z) = alpha in |z| < radius for S a single atom at zeta of
// mass c: (zeta + z)/(zeta - z) = w_k with w_k = -(ln|alpha| + i(arg alpha +
// 2 pi k))/c. |z| grows with |Im w_k|, so k is scanned outward from the
// middle until both sides leave the disk.
int closed_form_count(Complex alpha, double c, double radius) {
  if (alpha == Complex(0.0)) return 0;
  const double a = -std::log(std::abs(alpha)) / c;
  auto inside = [&](long k) {
    const double b = -(std::arg(alpha) + 2.0 * kPi * static_cast<double>(k)) / c;
    const Complex w(a, b);
    return std::abs((w - 1.0) / (w + 1.0)) < radius;
  };
  const long mid = std::lround(-std::arg(alpha) / (2.0 * kPi));
  int count = 0;
  for (long k = mid; inside(k); ++k) ++count;
  for (long k = mid - 1; inside(k); --k) ++count;
  return count;
}

ScenarioReport run_frostman(const ScenarioConfig& c) {
  ScenarioReport report;
  const AtomicSingularMeasure mu = theta_measure(c.theta);
  const StructuredFunction theta = StructuredFunction::singular_inner(mu);
  const bool single_atom = mu.atoms().size() == 1;

  Rng rng(c.seed);
  std::vector<Complex> points;
  for (int i = 0; i < c.identity_points; ++i) points.push_back(rng.in_disk(0.999));

  std::vector<Complex> alphas = {Complex(0.0)};
  for (auto a : c.alphas)
    if (a != Complex(0.0)) alphas.push_back(a);

  std::vector<Complex> grid;
  for (double m : c.alpha_moduli)
    for (double t : c.alpha_args) grid.push_back(std::polar(m, t));
  for (auto a : c.alphas) grid.push_back(a);

  std::vector<CheckTask> tasks;
  tasks.push_back({"frostman/identity", [&] {
                     CheckResult r;
                     double worst = 0.0;
                     bool alpha_zero_exact = true;
                     Json per_alpha = Json::array();
                     for (auto a : alphas) {
                       const FrostmanShift shift(theta, a);
                       double w = 0.0;
                       for (auto z : points) {
                         const Complex t = theta(z), s = shift.eval(z);
                         w = std::max(w, std::abs((t - a) - s * (1.0 - std::conj(a) * t)));
                         if (a == Complex(0.0)) alpha_zero_exact = alpha_zero_exact && s == t;
                       }
                       worst = std::max(worst, w);
                       per_alpha.push_back({{"alpha", to_json(a)}, {"max_residual", w}});
                     }
                     r.passed = worst <= c.tolerances.identity && alpha_zero_exact;
                     r.margin = c.tolerances.identity - worst;
                     r.details = {{"points", points.size()},
                                  {"per_alpha", per_alpha},
                                  {"alpha_zero_identical", alpha_zero_exact},
                                  {"tolerance", c.tolerances.identity}};
                     return r;
                   }});
  tasks.push_back({"frostman/outer-factor", [&] {
                     CheckResult r;
                     OuterOptions o;
                     o.tol_outer = c.tolerances.outer;
                     o.mass = mass_options(c);
                     Json per_alpha = Json::array();
                     bool all = true;
                     double margin = std::numeric_limits<double>::infinity();
                     for (auto a : c.alphas) {
                       const auto f = AnalyticFunction::from(StructuredFunction::constant(1.0) -
                                                             theta.scaled(std::conj(a)));
                       const auto zs = locate_zeros(f, c.radius, 64);
                       const auto d = outerness_test(f, zs, o);
                       all = all && d.outer_verdict == OuterVerdict::outer;
                       margin = std::min(margin, c.tolerances.outer - std::abs(d.inner_deficit));
                       per_alpha.push_back({{"alpha", to_json(a)}, {"diagnostic", to_json(d)}});
                     }
                     r.passed = all;
                     r.margin = std::isfinite(margin) ? margin : 0.0;
                     r.details = {{"per_alpha", per_alpha}, {"tolerance", c.tolerances.outer}};
                     return r;
                   }});
  std::vector<int> counts(grid.size()), oracle(grid.size());
  tasks.push_back({"frostman/zero-counts", [&] {
                     CheckResult r;
                     parallel_for(grid.size(), [&](std::size_t i) {
                       const auto f = AnalyticFunction::from(theta - StructuredFunction::constant(grid[i]));
                       counts[i] = count_zeros(f, 0.0, c.count_radius).count;
                       oracle[i] = single_atom ? closed_form_count(grid[i], mu.atoms()[0].mass, c.count_radius) : -1;
                     });
                     int mismatches = 0, with_zeros = 0;
                     Json rows = Json::array();
                     for (std::size_t i = 0; i < grid.size(); ++i) {
                       mismatches += single_atom && counts[i] != oracle[i];
                       with_zeros += counts[i] > 0;
                       Json row = {{"alpha", to_json(grid[i])}, {"count", counts[i]}};
                       if (single_atom) row["closed_form"] = oracle[i];
                       rows.push_back(row);
                     }
                     r.mandatory = single_atom;
                     r.passed = single_atom && mismatches == 0;
                     r.margin = single_atom ? -mismatches : 0;
                     r.details = {{"radius", c.count_radius},
                                  {"counts", rows},
                                  {"mismatches", mismatches},
                                  {"shifts_with_zeros", with_zeros},
                                  {"oracle_available", single_atom}};
                     return r;
                   }});
  tasks.push_back({"frostman/disjoint-support", [&] {
                     CheckResult r;
                     const int K = c.disjoint_support_k;
                     std::vector<AtomicSingularMeasure> measures;
                     for (int j = 0; j < K; ++j) measures.push_back(AtomicSingularMeasure::single(2.0 * kPi * j / K, 1.0));
                     // Pairwise disjoint supports: atoms at distinct points.
                     bool disjoint = true;
                     for (int i = 0; i < K; ++i)
                       for (int j = i + 1; j < K; ++j) {
                         const double d = std::abs(measures[i].atoms()[0].arg - measures[j].atoms()[0].arg);
                         disjoint = disjoint && std::min(d, 2.0 * kPi - d) > kAtomMatchTolerance;
                       }
                     const auto options = atom_options(c);
                     std::vector<AtomMass> single(K);
                     parallel_for(static_cast<std::size_t>(K), [&](std::size_t j) {
                       single[j] = atom_mass_at(AnalyticFunction::from(StructuredFunction::singular_inner(measures[j])),
                                                measures[j].atoms()[0].arg, options);
                     });
                     // Least common dominating measure of mu_1..mu_k: the
                     // pointwise maximum, here the sum over distinct points.
                     std::vector<double> dominating(K), product_mass(K);
                     double running = 0.0;
                     for (int k = 0; k < K; ++k) {
                       running += single[k].mass;
                       dominating[k] = running;
                     }
                     const MassOptions mo = mass_options(c);
                     parallel_for(static_cast<std::size_t>(K), [&](std::size_t k) {
                       StructuredFunction p = StructuredFunction::singular_inner(measures[0]);
                       for (std::size_t j = 1; j <= k; ++j) p = p * StructuredFunction::singular_inner(measures[j]);
                       product_mass[k] = total_singular_mass(AnalyticFunction::from(p), {}, mo).total_mass;
                     });
                     double worst = 0.0;
                     Json rows = Json::array();
                     for (int k = 0; k < K; ++k) {
                       const double expect = k + 1;
                       worst = std::max(worst, std::abs(dominating[k] - expect) / expect);
                       worst = std::max(worst, std::abs(product_mass[k] - expect) / expect);
                       rows.push_back({{"k", k + 1},
                                       {"least_dominating_mass", dominating[k]},
                                       {"product_total_mass", product_mass[k]}});
                     }
                     r.passed = disjoint && worst <= c.tolerances.lemma;
                     r.margin = c.tolerances.lemma - worst;
                     r.details = {{"K", K},
                                  {"pairwise_disjoint", disjoint},
                                  {"per_k", rows},
                                  {"least_dominating_mass_K", dominating.back()},
                                  {"worst_relative_error", worst},
                                  {"tolerance", c.tolerances.lemma}};
                     return r;
                   }});
  report.checks = run_checks(std::move(tasks));
  if (c.emit_csv) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "alpha_re,alpha_im,count,closed_form\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      csv << grid[i].real() << ',' << grid[i].imag() << ',' << counts[i] << ',' << oracle[i] << '\n';
    report.artifacts.push_back({"traces/zero-counts.csv", csv.str()});
  }
  return report;
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::theorem_a: return "theorem-a";
    case ScenarioKind::theorem_1: return "theorem-1";
    case ScenarioKind::derivative_lemma: return "derivative-lemma";
    case ScenarioKind::frostman: return "frostman";
  }
  return "?";
}

ScenarioConfig parse_config(const Json& j) {
  only_keys(j, "", {"scenario", "seed", "sample_count", "lambda_count", "radius", "radii", "tolerances", "functions",
                    "fixtures", "mass", "theta", "alphas", "alpha_grid", "count_radius", "identity_points",
                    "disjoint_support_k", "output"});
  ScenarioConfig c;
  if (!j.contains("scenario")) fail("/scenario", "missing");
  c.scenario = scenario_from(j["scenario"], "/scenario");
  if (j.contains("seed")) {
    const Json& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      fail("/seed", "expected a non-negative 64-bit integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("sample_count")) c.sample_count = static_cast<int>(integer_in(j["sample_count"], "/sample_count", 1, 100000));
  if (j.contains("lambda_count")) c.lambda_count = static_cast<int>(integer_in(j["lambda_count"], "/lambda_count", 1, 10000));
  if (j.contains("radius")) c.radius = number_in(j["radius"], "/radius", 0.0, 1.0, true, true);
  if (j.contains("radii")) c.radii = radii_from(j["radii"], "/radii");
  if (j.contains("tolerances")) c.tolerances = tolerances_from(j["tolerances"], "/tolerances");
  if (j.contains("functions")) c.functions = j["functions"];
  if (j.contains("fixtures")) c.fixtures = j["fixtures"];
  if (j.contains("mass")) c.mass = number_in(j["mass"], "/mass", 0.0, 50.0, true, false);
  if (j.contains("theta")) c.theta = j["theta"];
  if (j.contains("alphas")) {
    const Json& a = array(j["alphas"], "/alphas", 1);
    c.alphas.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Complex z = complex_from_json(a[i], child("/alphas", i));
      if (!(std::abs(z) < 1.0)) fail(child("/alphas", i), "|alpha| must be < 1");
      c.alphas.push_back(z);
    }
  }
  if (j.contains("alpha_grid")) {
    const Json& g = j["alpha_grid"];
    only_keys(g, "/alpha_grid", {"moduli", "args"});
    if (g.contains("moduli")) {
      const Json& m = array(g["moduli"], "/alpha_grid/moduli");
      c.alpha_moduli.clear();
      for (std::size_t i = 0; i < m.size(); ++i)
        c.alpha_moduli.push_back(number_in(m[i], child("/alpha_grid/moduli", i), 0.0, 1.0, false, true));
    }
    if (g.contains("args")) {
      const Json& a = array(g["args"], "/alpha_grid/args");
      c.alpha_args.clear();
      for (std::size_t i = 0; i < a.size(); ++i) c.alpha_args.push_back(number(a[i], child("/alpha_grid/args", i)));
    }
  }
  if (j.contains("count_radius")) c.count_radius = number_in(j["count_radius"], "/count_radius", 0.0, 1.0, true, true);
  if (j.contains("identity_points"))
    c.identity_points = static_cast<int>(integer_in(j["identity_points"], "/identity_points", 1, 100000));
  if (j.contains("disjoint_support_k"))
    c.disjoint_support_k = static_cast<int>(integer_in(j["disjoint_support_k"], "/disjoint_support_k", 1, 64));
  if (j.contains("output")) {
    const Json& o = j["output"];
    only_keys(o, "/output", {"csv", "svg"});
    if (o.contains("csv")) c.emit_csv = boolean(o["csv"], "/output/csv");
    if (o.contains("svg")) c.emit_svg = boolean(o["svg"], "/output/svg");
  }

  // Scenario-specific inputs are decoded now so errors point into the file.
  switch (c.scenario) {
    case ScenarioKind::theorem_a: {
      const auto ps = theorem_a_functions(c.functions);
      if (!independence_check(std::span<const ExactPolynomial>(ps)).independent)
        fail("/functions", "functions are linearly dependent");
      if (!c.fixtures.is_null()) fail("/fixtures", "not used by theorem-a");
      break;
    }
    case ScenarioKind::theorem_1:
      if (!c.functions.is_null()) fail("/functions", "theorem-1 takes named tuples under 'fixtures'");
      theorem_1_fixtures(c.fixtures, c.mass);
      break;
    case ScenarioKind::derivative_lemma:
      if (!c.functions.is_null()) fail("/functions", "not used by derivative-lemma");
      lemma_fixtures(c.fixtures, c.mass);
      break;
    case ScenarioKind::frostman:
      if (!c.functions.is_null()) fail("/functions", "not used by frostman");
      if (!c.fixtures.is_null()) fail("/fixtures", "not used by frostman");
      theta_measure(c.theta);
      break;
  }
  return c;
}

void apply_overrides(ScenarioConfig& c, std::optional<std::uint64_t> seed, std::optional<double> radius,
                     std::optional<int> samples) {
  if (seed) c.seed = *seed;
  if (radius) {
    if (!(*radius > 0.0 && *radius < 1.0)) fail("/radius", "must lie in (0, 1)");
    c.radius = *radius;
  }
  if (samples) {
    if (*samples < 1 || *samples > 100000) fail("/sample_count", "must lie in [1, 100000]");
    c.sample_count = *samples;
  }
}

namespace {

Json echo(const ScenarioConfig& c) {
  Json alphas = Json::array();
  for (auto a : c.alphas) alphas.push_back(to_json(a));
  Json j = {{"scenario", to_string(c.scenario)},
            {"seed", c.seed},
            {"sample_count", c.sample_count},
            {"lambda_count", c.lambda_count},
            {"radius", c.radius},
            {"radii", c.radii.empty() ? radii_ladder() : c.radii},
            {"tolerances", tolerances_json(c.tolerances)},
            {"mass", c.mass},
            {"output", {{"csv", c.emit_csv}, {"svg", c.emit_svg}}}};
  if (!c.functions.is_null()) j["functions"] = c.functions;
  if (!c.fixtures.is_null()) j["fixtures"] = c.fixtures;
  if (c.scenario == ScenarioKind::frostman) {
    j["theta"] = to_json(theta_measure(c.theta));
    j["alphas"] = alphas;
    j["alpha_grid"] = {{"moduli", c.alpha_moduli}, {"args", c.alpha_args}};
    j["count_radius"] = c.count_radius;
    j["identity_points"] = c.identity_points;
    j["disjoint_support_k"] = c.disjoint_support_k;
  }
  return j;
}

}  // namespace

bool ScenarioReport::overall_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return !c.mandatory || c.passed; });
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  ScenarioReport report;
  switch (config.scenario) {
    case ScenarioKind::theorem_a: report = run_theorem_a(config); break;
    case ScenarioKind::theorem_1: report = run_theorem_1(config); break;
    case ScenarioKind::derivative_lemma: report = run_derivative_lemma(config); break;
    case ScenarioKind::frostman: report = run_frostman(config); break;
  }
  report.scenario = config.scenario;
  report.config = echo(config);
  std::sort(report.artifacts.begin(), report.artifacts.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  return report;
}

}  // namespace hardyfactor
