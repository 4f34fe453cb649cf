#pragma once

#include <string>

#include <json.hpp>

#include "hardyfactor/factor.hpp"
#include "hardyfactor/polynomial.hpp"
#include "hardyfactor/structured.hpp"
#include "hardyfactor/zeros.hpp"

namespace hardyfactor {

using Json = nlohmann::json;

// Complex numbers are [re, im]. Exact coefficients are "num/den" strings,
// floating ones are JSON numbers.
Json to_json(Complex z);
Json to_json(const ExactComplex& z);
Json to_json(const ExactPolynomial& p);
Json to_json(const FloatPolynomial& p);
Json to_json(const AnyPolynomial& p);
Json to_json(const AtomicSingularMeasure& mu);
Json to_json(const StructuredTerm& t);
Json to_json(const StructuredFunction& f);
Json to_json(const ZeroRecord& z);
Json to_json(const CoefficientVector& v);
Json to_json(const DeepZeroCertificate& c);
Json to_json(const DeepZeroReport& r);
Json to_json(const AtomMass& a);
Json to_json(const SingularMassEstimate& e);
Json to_json(const FactorizationDiagnostic& d);
Json to_json(const DivisibilityReport& r);
Json to_json(const SobolevReport& r);

// Readers report problems as ConfigError at the given JSON pointer.
Complex complex_from_json(const Json& j, const std::string& pointer);
AnyPolynomial polynomial_from_json(const Json& j, const std::string& pointer);
ExactPolynomial exact_polynomial_from_json(const Json& j, const std::string& pointer);
// Accepts either kind; exact coefficients are rounded.
FloatPolynomial float_polynomial_from_json(const Json& j, const std::string& pointer);
AtomicSingularMeasure measure_from_json(const Json& j, const std::string& pointer);
StructuredFunction structured_from_json(const Json& j, const std::string& pointer);

}  // namespace hardyfactor
