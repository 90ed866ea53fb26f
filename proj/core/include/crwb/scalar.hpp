#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace crwb {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational real and imaginary parts.
/// All arithmetic is exact; reciprocal of zero throws.
class Scalar {
public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}
  Scalar(Rational re) : re_(std::move(re)), im_(0) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_integer() const { return im_ == 0 && boost::multiprecision::denominator(re_) == 1; }

  Scalar operator+(const Scalar& o) const { return {re_ + o.re_, im_ + o.im_}; }
  Scalar operator-(const Scalar& o) const { return {re_ - o.re_, im_ - o.im_}; }
  Scalar operator-() const { return {-re_, -im_}; }
  Scalar operator*(const Scalar& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  Scalar conj() const { return {re_, -im_}; }

  Scalar recip() const {
    Rational n = re_ * re_ + im_ * im_;
    if (n == 0) throw std::domain_error("Scalar: reciprocal of zero");
    return {re_ / n, -im_ / n};
  }
  Scalar operator/(const Scalar& o) const { return *this * o.recip(); }

  /// Integer power, exact. Negative exponents go through recip().
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  std::string str() const;

private:
  Rational re_, im_;
};

/// Parses an exact rational from decimal or fraction text ("3", "-1/2", "0.25", "1e-3").
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Nearest rational with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den = 1000000);

}  // namespace crwb
