#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace hardyfactor {

using Complex = std::complex<double>;

// Gaussian rational re + i*im. Components are GMP rationals, which stay
// canonical (positive denominator, lowest terms) after every operation.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long re) : re_(re) {}
  ExactComplex(mpq_class re, mpq_class im = 0);

  // Parses "p/q", "p" or a plain decimal such as "-0.25" for each part.
  static ExactComplex parse(const std::string& re, const std::string& im);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  ExactComplex conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  ExactComplex inverse() const;

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

// Canonical "num/den" text (den is always written, even when 1).
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

}  // namespace hardyfactor
