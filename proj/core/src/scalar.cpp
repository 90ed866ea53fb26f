#include "crwb/scalar.hpp"

#include <cmath>
#include <sstream>

namespace crwb {

Scalar Scalar::pow(long e) const {
  if (e < 0) return recip().pow(-e);
  Scalar acc(1), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string Scalar::str() const {
  std::ostringstream os;
  auto rat = [](const Rational& r) {
    std::ostringstream s;
    s << r;
    return s.str();
  };
  if (im_ == 0) return rat(re_);
  if (re_ == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    return rat(im_) + "*i";
  }
  os << "(" << rat(re_);
  if (im_ > 0) os << "+";
  if (im_ == 1)
    os << "i";
  else if (im_ == -1)
    os << "-i";
  else
    os << rat(im_) << "*i";
  os << ")";
  return os.str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return num / den;
  }
  std::string t = text;
  bool neg = false;
  size_t pos = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    pos = 1;
  }
  long exp10 = 0;
  auto e = t.find_first_of("eE", pos);
  if (e != std::string::npos) {
    exp10 = std::stol(t.substr(e + 1));
    t = t.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (size_t k = pos; k < t.size(); ++k) {
    char c = t[k];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed rational: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed rational: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed rational: " + text);
  Rational r{boost::multiprecision::cpp_int(digits)};
  long net = exp10 - frac_digits;
  boost::multiprecision::cpp_int ten(10), p(1);
  for (long k = 0; k < std::labs(net); ++k) p *= ten;
  if (net >= 0)
    r *= Rational(p);
  else
    r /= Rational(p);
  return neg ? -r : r;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite");
  bool neg = x < 0;
  x = std::fabs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 1e18) break;
    long a = static_cast<long>(fl);
    if (q0 + (double)a * q1 > (double)max_den) break;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  Rational r(p1, q1 == 0 ? 1 : q1);
  return neg ? -r : r;
}

}  // namespace crwb
