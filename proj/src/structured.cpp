#include "hardyfactor/structured.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardyfactor/errors.hpp"
#include "hardyfactor/poly_roots.hpp"

namespace hardyfactor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDiskSlack = 1e-12;
constexpr double kSingularDistance = 4.0 * std::numeric_limits<double>::epsilon();

bool same_arg(double a, double b) {
  double d = std::abs(a - b);
  d = std::min(d, kTwoPi - d);
  return d <= kAtomArgTolerance;
}

void check_in_closed_disk(Complex z) {
  if (!(std::abs(z) <= 1.0 + kDiskSlack))
    throw EvaluationSingularityError("evaluation point outside the closed unit disk");
}

std::vector<BoundaryPole> merge_poles(std::vector<BoundaryPole> poles) {
  for (auto& p : poles) {
    p.arg = normalize_arg(p.arg);
    p.point = std::polar(1.0, p.arg);
  }
  std::sort(poles.begin(), poles.end(), [](const BoundaryPole& a, const BoundaryPole& b) { return a.arg < b.arg; });
  std::vector<BoundaryPole> out;
  for (const auto& p : poles) {
    if (p.order == 0) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const BoundaryPole& q) { return same_arg(q.arg, p.arg); });
    if (it != out.end())
      it->order += p.order;
    else
      out.push_back(p);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const BoundaryPole& p) { return p.order == 0; }), out.end());
  return out;
}

std::vector<double> merge_args(std::vector<double> args) {
  for (auto& a : args) a = normalize_arg(a);
  std::sort(args.begin(), args.end());
  std::vector<double> out;
  for (double a : args)
    if (std::none_of(out.begin(), out.end(), [&](double b) { return same_arg(a, b); })) out.push_back(a);
  return out;
}

// (z - zeta)^k as a polynomial.
FloatPolynomial boundary_factor(Complex zeta, int k) {
  return FloatPolynomial::linear_factor(zeta).pow(static_cast<unsigned>(k));
}

// Roots this close to a boundary point, relative to the coefficient scale,
// are taken to sit on it.
constexpr double kBoundaryRootTolerance = 1e-13;

// A merged numerator this small against both summands is rounding residue
// of an exact cancellation and is dropped.
constexpr double kCancellationTolerance = 1e-11;

double max_abs_coeff(const FloatPolynomial& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// Synthetic division by (z - zeta), remainder dropped.
FloatPolynomial deflate(const FloatPolynomial& p, Complex zeta) {
  const auto& c = p.coeffs();
  std::vector<Complex> q(c.size() - 1);
  Complex acc = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    acc = acc * zeta + c[k];
    q[k - 1] = acc;
  }
  return FloatPolynomial(std::move(q));
}

bool same_measure(const AtomicSingularMeasure& a, const AtomicSingularMeasure& b) {
  if (a.atoms().size() != b.atoms().size()) return false;
  for (std::size_t i = 0; i < a.atoms().size(); ++i) {
    const auto &x = a.atoms()[i], &y = b.atoms()[i];
    if (!same_arg(x.arg, y.arg) || std::abs(x.mass - y.mass) > 1e-12 * std::max(1.0, x.mass)) return false;
  }
  return true;
}

}  // namespace

double normalize_arg(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// AtomicSingularMeasure

AtomicSingularMeasure::AtomicSingularMeasure(std::vector<std::pair<double, double>> arg_mass) {
  for (auto& [arg, mass] : arg_mass) {
    if (!std::isfinite(arg) || !std::isfinite(mass)) throw ParameterError("non-finite atom");
    if (!(mass > 0.0)) throw ParameterError("atom masses must be strictly positive");
    arg = normalize_arg(arg);
  }
  std::sort(arg_mass.begin(), arg_mass.end());
  for (const auto& [arg, mass] : arg_mass) {
    if (!atoms_.empty() && same_arg(atoms_.back().arg, arg)) {
      atoms_.back().mass += mass;
      continue;
    }
    atoms_.push_back({arg, std::polar(1.0, arg), mass});
  }
  // Wrap-around: an atom just below 2*pi is the atom at 0.
  if (atoms_.size() > 1 && same_arg(atoms_.front().arg, atoms_.back().arg)) {
    atoms_.front().mass += atoms_.back().mass;
    atoms_.pop_back();
  }
}

double AtomicSingularMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

Complex AtomicSingularMeasure::exponent(Complex z) const {
  check_in_closed_disk(z);
  Complex e = 0.0;
  for (const auto& a : atoms_) {
    const Complex d = a.point - z;
    if (std::abs(d) <= kSingularDistance) throw EvaluationSingularityError("evaluation at an atom of the measure");
    e -= a.mass * (a.point + z) / d;
  }
  return e;
}

AtomicSingularMeasure operator+(const AtomicSingularMeasure& a, const AtomicSingularMeasure& b) {
  std::vector<std::pair<double, double>> all;
  for (const auto& x : a.atoms_) all.emplace_back(x.arg, x.mass);
  for (const auto& x : b.atoms_) all.emplace_back(x.arg, x.mass);
  return AtomicSingularMeasure(std::move(all));
}

Complex singular_inner_eval(const AtomicSingularMeasure& mu, Complex z) { return std::exp(mu.exponent(z)); }

// ---------------------------------------------------------------------------
// StructuredTerm

StructuredTerm::StructuredTerm(FloatPolynomial numerator, FloatPolynomial denominator, AtomicSingularMeasure measure,
                               std::vector<BoundaryPole> poles)
    : measure_(std::move(measure)), poles_(merge_poles(std::move(poles))) {
  if (denominator.is_zero()) throw DomainError("structured term with zero denominator");
  const Complex lead = denominator.leading();
  numerator_ = numerator.scaled(1.0 / lead);
  base_ = denominator.scaled(1.0 / lead);
  if (*base_.degree() > 0) {
    for (const auto& r : poly_roots(base_).roots) {
      const double m = std::abs(r.location);
      if (m < 1.0 - 1e-12) throw ParameterError("denominator has a root inside the open unit disk");
      if (m <= 1.0 + 1e-9) boundary_root_args_.push_back(std::arg(r.location));
    }
    boundary_root_args_ = merge_args(std::move(boundary_root_args_));
  }
  extract_boundary_zeros();
}

StructuredTerm::StructuredTerm(Unchecked, FloatPolynomial numerator, FloatPolynomial base,
                               AtomicSingularMeasure measure, std::vector<BoundaryPole> poles)
    : numerator_(std::move(numerator)),
      base_(std::move(base)),
      measure_(std::move(measure)),
      poles_(merge_poles(std::move(poles))) {}

FloatPolynomial StructuredTerm::denominator() const {
  FloatPolynomial d = base_;
  for (const auto& p : poles_)
    if (p.order > 0) d = d * boundary_factor(p.point, p.order);
  return d;
}

FloatPolynomial StructuredTerm::full_numerator() const {
  FloatPolynomial n = numerator_;
  for (const auto& p : poles_)
    if (p.order < 0) n = n * boundary_factor(p.point, -p.order);
  return n;
}

void StructuredTerm::extract_boundary_zeros() {
  if (numerator_.is_zero()) return;
  std::vector<BoundaryPole> points = poles_;
  for (const auto& a : measure_.atoms()) points.push_back({a.arg, a.point, 0});
  for (const auto& pt : points) {
    int removed = 0;
    while (*numerator_.degree() > 0) {
      double scale = 0.0;
      for (const auto& c : numerator_.coeffs()) scale += std::abs(c);
      if (std::abs(numerator_(pt.point)) > kBoundaryRootTolerance * scale) break;
      numerator_ = deflate(numerator_, pt.point);
      ++removed;
    }
    if (removed > 0) poles_.push_back({pt.arg, pt.point, -removed});
  }
  poles_ = merge_poles(std::move(poles_));
}

bool StructuredTerm::mergeable_with(const StructuredTerm& o) const {
  return base_ == o.base_ && same_measure(measure_, o.measure_) && boundary_root_args_ == o.boundary_root_args_;
}

ScaledComplex StructuredTerm::eval_scaled(Complex z) const {
  const Complex n = numerator_(z);
  const Complex e = measure_.exponent(z);
  if (n == Complex(0.0)) return {};
  const Complex b = base_(z);
  if (b == Complex(0.0)) throw EvaluationSingularityError("evaluation at a root of a denominator");
  double log_mod = std::log(std::abs(n)) - std::log(std::abs(b)) + e.real();
  double phase = std::arg(n) - std::arg(b) + e.imag();
  for (const auto& p : poles_) {
    const Complex d = z - p.point;
    if (std::abs(d) <= kSingularDistance) throw EvaluationSingularityError("evaluation at a boundary pole");
    log_mod -= p.order * std::log(std::abs(d));
    phase -= p.order * std::arg(d);
  }
  return {std::polar(1.0, phase), log_mod};
}

StructuredTerm StructuredTerm::derivative() const {
  if (is_zero()) return *this;

  // Extra boundary powers: two at every atom (S' / S has double poles), one at
  // pole points that carry no mass.
  struct Extra {
    Complex point;
    double arg;
    int power;
    int pole_order;
    double mass;
  };
  std::vector<Extra> extras;
  for (const auto& a : measure_.atoms()) extras.push_back({a.point, a.arg, 2, 0, a.mass});
  for (const auto& p : poles_) {
    auto it = std::find_if(extras.begin(), extras.end(), [&](const Extra& e) { return same_arg(e.arg, p.arg); });
    if (it != extras.end())
      it->pole_order = p.order;
    else
      extras.push_back({p.point, p.arg, 1, p.order, 0.0});
  }

  auto q_without = [&](std::size_t skip, int drop) {
    FloatPolynomial q = FloatPolynomial::constant(1.0);
    for (std::size_t i = 0; i < extras.size(); ++i)
      q = q * boundary_factor(extras[i].point, extras[i].power - (i == skip ? drop : 0));
    return q;
  };
  const FloatPolynomial q = q_without(extras.size(), 0);

  const FloatPolynomial& n = numerator_;
  const FloatPolynomial& b = base_;
  FloatPolynomial inner;  // sum e_j Q/(z - zeta_j) + sum 2 m_j zeta_j Q/(z - zeta_j)^2
  for (std::size_t i = 0; i < extras.size(); ++i) {
    if (extras[i].pole_order != 0)
      inner = inner + q_without(i, 1).scaled(static_cast<double>(extras[i].pole_order));
    if (extras[i].mass > 0.0) inner = inner + q_without(i, 2).scaled(2.0 * extras[i].mass * extras[i].point);
  }
  FloatPolynomial numerator = (n.derivative() * b - n * b.derivative()) * q - n * b * inner;

  std::vector<BoundaryPole> poles;
  for (const auto& e : extras) poles.push_back({e.arg, e.point, e.pole_order + e.power});

  StructuredTerm out(Unchecked{}, std::move(numerator), b * b, measure_, std::move(poles));
  out.boundary_root_args_ = boundary_root_args_;
  out.extract_boundary_zeros();
  return out;
}

StructuredTerm StructuredTerm::scaled(Complex c) const {
  StructuredTerm out = *this;
  out.numerator_ = numerator_.scaled(c);
  return out;
}

StructuredTerm operator*(const StructuredTerm& a, const StructuredTerm& b) {
  std::vector<BoundaryPole> poles = a.poles_;
  poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
  StructuredTerm out(StructuredTerm::Unchecked{}, a.numerator_ * b.numerator_, a.base_ * b.base_,
                     a.measure_ + b.measure_, std::move(poles));
  std::vector<double> roots = a.boundary_root_args_;
  roots.insert(roots.end(), b.boundary_root_args_.begin(), b.boundary_root_args_.end());
  out.boundary_root_args_ = merge_args(std::move(roots));
  return out;
}

// ---------------------------------------------------------------------------
// StructuredFunction

StructuredFunction::StructuredFunction(std::vector<StructuredTerm> terms) {
  for (auto& t : terms) {
    if (t.is_zero()) continue;
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const StructuredTerm& u) { return u.mergeable_with(t); });
    if (it == terms_.end()) {
      terms_.push_back(std::move(t));
      continue;
    }
    // Common boundary factor: the larger exponent at every point.
    std::vector<BoundaryPole> common = it->poles_;
    for (const auto& p : t.poles_) {
      auto c = std::find_if(common.begin(), common.end(), [&](const BoundaryPole& q) { return same_arg(q.arg, p.arg); });
      if (c == common.end())
        common.push_back(p.order > 0 ? p : BoundaryPole{p.arg, p.point, 0});
      else
        c->order = std::max(c->order, p.order);
    }
    for (auto& c : common)
      if (std::none_of(t.poles_.begin(), t.poles_.end(), [&](const BoundaryPole& q) { return same_arg(q.arg, c.arg); }))
        c.order = std::max(c.order, 0);
    auto lift = [&](const StructuredTerm& u) {
      FloatPolynomial n = u.numerator_;
      for (const auto& c : common) {
        int own = 0;
        for (const auto& q : u.poles_)
          if (same_arg(q.arg, c.arg)) own = q.order;
        if (c.order > own) n = n * boundary_factor(c.point, c.order - own);
      }
      return n;
    };
    const FloatPolynomial a = lift(*it), b = lift(t);
    FloatPolynomial sum = a + b;
    if (sum.is_zero() || max_abs_coeff(sum) <= kCancellationTolerance * std::max(max_abs_coeff(a), max_abs_coeff(b))) {
      terms_.erase(it);
      continue;
    }
    it->numerator_ = std::move(sum);
    it->poles_ = merge_poles(std::move(common));
    it->extract_boundary_zeros();
  }
}

StructuredFunction StructuredFunction::constant(Complex c) {
  return StructuredFunction({StructuredTerm(FloatPolynomial::constant(c))});
}

StructuredFunction StructuredFunction::polynomial(const FloatPolynomial& p) {
  return StructuredFunction({StructuredTerm(p)});
}

StructuredFunction StructuredFunction::singular_inner(const AtomicSingularMeasure& mu) {
  return StructuredFunction({StructuredTerm(FloatPolynomial::constant(1.0), FloatPolynomial::constant(1.0), mu)});
}

StructuredFunction StructuredFunction::product(const FloatPolynomial& p, const AtomicSingularMeasure& mu) {
  return StructuredFunction({StructuredTerm(p, FloatPolynomial::constant(1.0), mu)});
}

ScaledComplex StructuredFunction::eval_scaled(Complex z) const {
  check_in_closed_disk(z);
  std::vector<ScaledComplex> parts;
  parts.reserve(terms_.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) {
    ScaledComplex v = t.eval_scaled(z);
    if (v.is_zero()) continue;
    if (!std::isfinite(v.log_scale))
      throw EvaluationSingularityError("non-finite structured term value");
    top = std::max(top, v.log_scale);
    parts.push_back(v);
  }
  if (parts.empty()) return {};
  Complex sum = 0.0;
  for (const auto& v : parts) sum += v.mantissa * std::exp(v.log_scale - top);
  return {sum, top};
}

StructuredFunction StructuredFunction::derivative() const {
  std::vector<StructuredTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.derivative());
  return StructuredFunction(std::move(out));
}

std::vector<StructuredFunction> StructuredFunction::derivative_chain(int order) const {
  std::vector<StructuredFunction> chain{*this};
  for (int k = 0; k < order; ++k) chain.push_back(chain.back().derivative());
  return chain;
}

StructuredFunction StructuredFunction::scaled(Complex c) const {
  std::vector<StructuredTerm> out;
  if (c == Complex(0.0)) return {};
  for (const auto& t : terms_) out.push_back(t.scaled(c));
  return StructuredFunction(std::move(out));
}

std::vector<double> StructuredFunction::atom_args() const {
  std::vector<double> args;
  for (const auto& t : terms_)
    for (const auto& a : t.measure().atoms()) args.push_back(a.arg);
  return merge_args(std::move(args));
}

std::vector<double> StructuredFunction::boundary_singular_args() const {
  std::vector<double> args = atom_args();
  for (const auto& t : terms_) {
    for (const auto& p : t.poles()) args.push_back(p.arg);
    args.insert(args.end(), t.boundary_root_args_.begin(), t.boundary_root_args_.end());
  }
  return merge_args(std::move(args));
}

StructuredFunction operator+(const StructuredFunction& a, const StructuredFunction& b) {
  std::vector<StructuredTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return StructuredFunction(std::move(terms));
}

StructuredFunction operator-(const StructuredFunction& a, const StructuredFunction& b) { return a + b.scaled(-1.0); }

StructuredFunction operator*(const StructuredFunction& a, const StructuredFunction& b) {
  std::vector<StructuredTerm> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) terms.push_back(s * t);
  return StructuredFunction(std::move(terms));
}

Complex structured_eval(const StructuredFunction& f, Complex z) { return f(z); }

StructuredFunction structured_derivative(const StructuredFunction& f) { return f.derivative(); }

StructuredFunction structured_multiply(const StructuredFunction& f, const StructuredFunction& g) { return f * g; }

StructuredFunction structured_combine(std::span<const StructuredFunction> fs, std::span<const Complex> lambdas,
                                      CombineMode mode) {
  if (fs.size() != lambdas.size()) throw ParameterError("combination needs one coefficient per function");
  if (mode == CombineMode::nontrivial &&
      std::all_of(lambdas.begin(), lambdas.end(), [](Complex l) { return l == Complex(0.0); }))
    throw TrivialCombinationError("all combination coefficients are zero");
  StructuredFunction g;
  for (std::size_t j = 0; j < fs.size(); ++j)
    if (lambdas[j] != Complex(0.0)) g = g + fs[j].scaled(lambdas[j]);
  return g;
}

// ---------------------------------------------------------------------------
// FrostmanShift

FrostmanShift::FrostmanShift(StructuredFunction base, Complex alpha)
    : base_(std::move(base)), base_derivative_(base_.derivative()), alpha_(alpha) {
  if (!(std::abs(alpha) < 1.0)) throw ParameterError("Frostman shift needs |alpha| < 1");
}

Complex FrostmanShift::eval(Complex z) const {
  const Complex theta = base_(z);
  const Complex den = 1.0 - std::conj(alpha_) * theta;
  if (den == Complex(0.0)) throw EvaluationSingularityError("1 - conj(alpha) theta vanishes");
  return (theta - alpha_) / den;
}

Complex FrostmanShift::derivative_eval(Complex z) const {
  const Complex theta = base_(z);
  const Complex den = 1.0 - std::conj(alpha_) * theta;
  if (den == Complex(0.0)) throw EvaluationSingularityError("1 - conj(alpha) theta vanishes");
  return base_derivative_(z) * (1.0 - std::norm(alpha_)) / (den * den);
}

Complex frostman_eval(const FrostmanShift& shift, Complex z) { return shift.eval(z); }

Complex frostman_derivative_eval(const FrostmanShift& shift, Complex z) { return shift.derivative_eval(z); }

// ---------------------------------------------------------------------------
// BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(std::vector<std::pair<Complex, int>> zeros, Complex unimodular_constant)
    : zeros_(std::move(zeros)), constant_(unimodular_constant) {
  for (const auto& [a, m] : zeros_) {
    if (!(std::abs(a) < 1.0)) throw ParameterError("Blaschke zeros must lie in the open unit disk");
    if (m < 1) throw ParameterError("Blaschke zero multiplicity must be positive");
  }
  if (std::abs(std::abs(constant_) - 1.0) > 1e-12) throw ParameterError("Blaschke constant must be unimodular");
  constant_ /= std::abs(constant_);
}

double BlaschkeProduct::blaschke_sum() const {
  double s = 0.0;
  for (const auto& [a, m] : zeros_) s += m * (1.0 - std::abs(a));
  return s;
}

Complex BlaschkeProduct::eval(Complex z) const {
  check_in_closed_disk(z);
  Complex v = constant_;
  for (const auto& [a, m] : zeros_) {
    Complex factor = z;
    if (a != Complex(0.0)) factor = (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
    for (int k = 0; k < m; ++k) v *= factor;
  }
  return v;
}

}  // namespace hardyfactor
