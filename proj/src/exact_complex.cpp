#include "hardyfactor/exact_complex.hpp"

#include <cctype>

#include "hardyfactor/errors.hpp"

namespace hardyfactor {

ExactComplex::ExactComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactComplex ExactComplex::parse(const std::string& re, const std::string& im) {
  return {parse_rational(re), parse_rational(im)};
}

ExactComplex ExactComplex::inverse() const {
  mpq_class n = norm();
  if (sgn(n) == 0) throw DomainError("inverse of exact zero");
  return {re_ / n, -im_ / n};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) { return *this *= o.inverse(); }

std::string rational_to_string(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational '" + text + "'");
    mpz_class d(den, 10);
    if (d == 0) throw DomainError("zero denominator in '" + text + "'");
    q = mpq_class(mpz_class(num, 10), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw DomainError("malformed decimal '" + text + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = mpq_class(mpz_class(whole + frac, 10), scale);
  } else {
    if (!all_digits(s)) throw DomainError("malformed rational '" + text + "'");
    q = mpq_class(mpz_class(s, 10));
  }
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace hardyfactor
