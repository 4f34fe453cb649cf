#include "hardyfactor/serialization.hpp"

#include <cmath>

#include "hardyfactor/errors.hpp"

namespace hardyfactor {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& message) { throw ConfigError(pointer, message); }

const Json& field(const Json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(pointer, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(pointer, "expected a finite number");
  return v;
}

mpq_class exact_part(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>()), 10));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
  }
  fail(pointer, "exact coefficients must be integers or \"p/q\" strings");
}

double float_part(const Json& j, const std::string& pointer) {
  if (j.is_string()) return exact_part(j, pointer).get_d();
  return number(j, pointer);
}

template <class Part>
auto complex_parts(const Json& j, const std::string& pointer, Part part) {
  using T = decltype(part(j, pointer));
  if (j.is_array()) {
    if (j.size() != 2) fail(pointer, "complex values are [re, im]");
    return std::pair<T, T>{part(j[0], pointer + "/0"), part(j[1], pointer + "/1")};
  }
  return std::pair<T, T>{part(j, pointer), T(0)};
}

std::string kind_of_json(const Json& j, const std::string& pointer) {
  const Json& k = field(j, "kind", pointer);
  if (!k.is_string() || (k != "exact" && k != "float")) fail(pointer + "/kind", "kind must be \"exact\" or \"float\"");
  return k.get<std::string>();
}

const Json& coeff_array(const Json& j, const std::string& pointer) {
  const Json& c = field(j, "coeffs", pointer);
  if (!c.is_array()) fail(pointer + "/coeffs", "expected an array of coefficients");
  return c;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ExactComplex& z) {
  return Json::array({rational_to_string(z.real()), rational_to_string(z.imag())});
}

Json to_json(const ExactPolynomial& p) {
  Json c = Json::array();
  for (const auto& a : p.coeffs()) c.push_back(to_json(a));
  return {{"kind", "exact"}, {"coeffs", c}};
}

Json to_json(const FloatPolynomial& p) {
  Json c = Json::array();
  for (const auto& a : p.coeffs()) c.push_back(to_json(a));
  return {{"kind", "float"}, {"coeffs", c}};
}

Json to_json(const AnyPolynomial& p) {
  return std::visit([](const auto& q) { return to_json(q); }, p);
}

Json to_json(const AtomicSingularMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"arg", a.arg}, {"mass", a.mass}});
  return {{"atoms", atoms}};
}

Json to_json(const StructuredTerm& t) {
  Json poles = Json::array();
  for (const auto& p : t.poles()) poles.push_back({{"arg", p.arg}, {"order", p.order}});
  return {{"numerator", to_json(t.numerator())},
          {"denominator", to_json(t.denominator_base())},
          {"measure", to_json(t.measure())},
          {"poles", poles}};
}

Json to_json(const StructuredFunction& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(to_json(t));
  return {{"terms", terms}};
}

Json to_json(const ZeroRecord& z) {
  return {{"location", to_json(z.location)},
          {"multiplicity", z.multiplicity},
          {"residual", z.residual},
          {"method", to_string(z.method)}};
}

Json to_json(const CoefficientVector& v) {
  Json l = Json::array();
  for (auto c : v.lambdas) l.push_back(to_json(c));
  return {{"lambdas", l},
          {"sigma_min", v.sigma_min},
          {"sigma_max", v.sigma_max},
          {"gap", v.gap},
          {"residual", v.residual}};
}

Json to_json(const DeepZeroCertificate& c) {
  Json j = {{"point", to_json(c.point)},
            {"order", c.order},
            {"witness", to_json(c.witness)},
            {"wronskian_value", to_json(c.wronskian_value)},
            {"matrix_gap", c.matrix_gap},
            {"verified_multiplicity", c.verified_multiplicity},
            {"verified", c.verified}};
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

Json to_json(const DeepZeroReport& r) {
  Json zeros = Json::array(), certs = Json::array();
  for (const auto& z : r.wronskian_zeros) zeros.push_back(to_json(z));
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return {{"wronskian_zeros", zeros},
          {"certificates", certs},
          {"blaschke_sum", r.blaschke_sum},
          {"all_verified", r.all_verified()}};
}

Json to_json(const AtomMass& a) {
  return {{"arg", a.arg},     {"point", to_json(a.point)}, {"mass", a.mass},
          {"uncertainty", a.uncertainty}, {"clamped", a.clamped}, {"per_radius", a.per_radius}};
}

Json to_json(const SingularMassEstimate& e) {
  Json atoms = Json::array();
  for (const auto& a : e.atoms) atoms.push_back(to_json(a));
  return {{"total_mass", e.total_mass},
          {"uncertainty", e.uncertainty},
          {"atom_masses", atoms},
          {"radii_used", e.radii},
          {"deficits", e.deficits},
          {"extrapolated", e.extrapolated},
          {"boundary_mean", e.boundary_mean},
          {"log_abs_f0", e.log_abs_f0},
          {"zero_order_at_origin", e.zero_order_at_origin}};
}

Json to_json(const FactorizationDiagnostic& d) {
  return {{"radii", d.radii},
          {"log_mod_mean_at_radii", d.log_mod_mean_at_radii},
          {"log_abs_f0", d.log_abs_f0},
          {"blaschke_sum_located", d.blaschke_sum_located},
          {"inner_deficit", d.inner_deficit},
          {"uncertainty", d.uncertainty},
          {"located_zeros", d.located_zeros},
          {"outer_verdict", to_string(d.outer_verdict)}};
}

Json to_json(const DivisibilityReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json l = Json::array();
    for (auto c : s.lambdas) l.push_back(to_json(c));
    Json atoms = Json::array();
    for (const auto& a : s.atoms) atoms.push_back({{"arg", a.arg}, {"mass", a.mass}});
    Json j = {{"lambdas", l}, {"ok", s.ok},          {"leq", s.leq},
              {"margin", s.margin}, {"total_mass", s.total_mass}, {"atoms", atoms}};
    if (!s.error.empty()) j["error"] = s.error;
    samples.push_back(j);
  }
  return {{"wronskian_mass", to_json(r.wronskian_mass)},
          {"tolerance", r.tolerance},
          {"samples", samples},
          {"worst_margin", r.worst_margin},
          {"all_pass", r.all_pass}};
}

Json to_json(const SobolevReport& r) {
  return {{"order", r.order}, {"radii", r.radii}, {"integrals", r.integrals}, {"verdict", to_string(r.verdict)}};
}

Complex complex_from_json(const Json& j, const std::string& pointer) {
  auto [re, im] = complex_parts(j, pointer, float_part);
  return {re, im};
}

ExactPolynomial exact_polynomial_from_json(const Json& j, const std::string& pointer) {
  if (kind_of_json(j, pointer) != "exact") fail(pointer + "/kind", "expected an exact polynomial");
  const Json& c = coeff_array(j, pointer);
  std::vector<ExactComplex> coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) {
    auto [re, im] = complex_parts(c[k], pointer + "/coeffs/" + std::to_string(k), exact_part);
    coeffs.emplace_back(re, im);
  }
  return ExactPolynomial(std::move(coeffs));
}

FloatPolynomial float_polynomial_from_json(const Json& j, const std::string& pointer) {
  kind_of_json(j, pointer);
  const Json& c = coeff_array(j, pointer);
  std::vector<Complex> coeffs;
  for (std::size_t k = 0; k < c.size(); ++k)
    coeffs.push_back(complex_from_json(c[k], pointer + "/coeffs/" + std::to_string(k)));
  return FloatPolynomial(std::move(coeffs));
}

AnyPolynomial polynomial_from_json(const Json& j, const std::string& pointer) {
  if (kind_of_json(j, pointer) == "exact") return exact_polynomial_from_json(j, pointer);
  return float_polynomial_from_json(j, pointer);
}

AtomicSingularMeasure measure_from_json(const Json& j, const std::string& pointer) {
  const Json& atoms = field(j, "atoms", pointer);
  if (!atoms.is_array()) fail(pointer + "/atoms", "expected an array");
  std::vector<std::pair<double, double>> am;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string p = pointer + "/atoms/" + std::to_string(k);
    am.emplace_back(number(field(atoms[k], "arg", p), p + "/arg"), number(field(atoms[k], "mass", p), p + "/mass"));
  }
  try {
    return AtomicSingularMeasure(std::move(am));
  } catch (const Error& e) {
    fail(pointer, e.what());
  }
}

namespace {

StructuredTerm term_from_json(const Json& j, const std::string& pointer) {
  FloatPolynomial num = float_polynomial_from_json(field(j, "numerator", pointer), pointer + "/numerator");
  FloatPolynomial den = FloatPolynomial::constant(1.0);
  if (j.contains("denominator")) den = float_polynomial_from_json(j["denominator"], pointer + "/denominator");
  AtomicSingularMeasure mu;
  if (j.contains("measure")) mu = measure_from_json(j["measure"], pointer + "/measure");
  std::vector<BoundaryPole> poles;
  if (j.contains("poles")) {
    const Json& ps = j["poles"];
    if (!ps.is_array()) fail(pointer + "/poles", "expected an array");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const std::string p = pointer + "/poles/" + std::to_string(k);
      const Json& o = field(ps[k], "order", p);
      if (!o.is_number_integer() || o.get<long long>() == 0) fail(p + "/order", "order must be a nonzero integer");
      BoundaryPole bp;
      bp.arg = normalize_arg(number(field(ps[k], "arg", p), p + "/arg"));
      bp.point = std::polar(1.0, bp.arg);
      bp.order = static_cast<int>(o.get<long long>());
      poles.push_back(bp);
    }
  }
  try {
    return StructuredTerm(std::move(num), std::move(den), std::move(mu), std::move(poles));
  } catch (const Error& e) {
    fail(pointer, e.what());
  }
}

}  // namespace

StructuredFunction structured_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected an object");
  if (j.contains("terms")) {
    const Json& ts = j["terms"];
    if (!ts.is_array()) fail(pointer + "/terms", "expected an array");
    std::vector<StructuredTerm> terms;
    for (std::size_t k = 0; k < ts.size(); ++k) terms.push_back(term_from_json(ts[k], pointer + "/terms/" + std::to_string(k)));
    return StructuredFunction(std::move(terms));
  }
  // Shorthand: polynomial times a singular inner factor.
  FloatPolynomial p = FloatPolynomial::constant(1.0);
  if (j.contains("polynomial")) p = float_polynomial_from_json(j["polynomial"], pointer + "/polynomial");
  AtomicSingularMeasure mu;
  if (j.contains("measure")) mu = measure_from_json(j["measure"], pointer + "/measure");
  if (!j.contains("polynomial") && !j.contains("measure"))
    fail(pointer, "structured functions need \"terms\", or \"polynomial\" and/or \"measure\"");
  return StructuredFunction::product(p, mu);
}

}  // namespace hardyfactor
