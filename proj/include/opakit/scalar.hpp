#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "opakit/rational.hpp"

namespace opakit {

// Element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
// Zero iff a = 0 and b = 0; the representation is unique.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a) : a_(std::move(a)) {}
  QuadExt(long a) : a_(a) {}
  QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QuadExt sqrt2() { return QuadExt(Rational(0), Rational(1)); }

  const Rational& rat() const { return a_; }
  const Rational& rad() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  QuadExt operator-() const { return QuadExt(-a_, -b_); }
  QuadExt operator+(const QuadExt& o) const { return QuadExt(a_ + o.a_, b_ + o.b_); }
  QuadExt operator-(const QuadExt& o) const { return QuadExt(a_ - o.a_, b_ - o.b_); }
  QuadExt operator*(const QuadExt& o) const {
    return QuadExt(a_ * o.a_ + Rational(2) * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  QuadExt inverse() const {
    if (is_zero()) throw std::domain_error("QuadExt: division by zero");
    // (a + b s)^-1 = (a - b s) / (a^2 - 2 b^2); the norm is nonzero since s is irrational.
    Rational n = a_ * a_ - Rational(2) * b_ * b_;
    return QuadExt(a_ / n, -b_ / n);
  }
  QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }

  QuadExt& operator+=(const QuadExt& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadExt& operator-=(const QuadExt& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadExt& operator*=(const QuadExt& o) { *this = *this * o; return *this; }

  bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  // Sign of a + b*sqrt(2) as a real number.
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against 2 b^2.
    Rational a2 = a_ * a_, b2 = Rational(2) * b_ * b_;
    if (a2 == b2) return 0;  // cannot happen for nonzero b, kept for safety
    return (a2 > b2) ? sa : sb;
  }
  bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadExt& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadExt& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QuadExt& o) const { return (*this - o).sign() >= 0; }

  double to_double() const {
    static const double kSqrt2 = 1.41421356237309504880168872420969808;
    return a_.to_double() + b_.to_double() * kSqrt2;
  }

  // "p/q+r/s*s2" with the literal token s2 for sqrt(2); pure parts abbreviated.
  std::string str() const {
    if (b_.is_zero()) return a_.str();
    std::string rad = b_.str() + "*s2";
    if (a_.is_zero()) return rad;
    return a_.str() + (b_.sign() > 0 ? "+" : "") + rad;
  }

 private:
  Rational a_, b_;
};

// Complex coefficient field: real and imaginary parts in Q(sqrt 2).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long x) : re_(Rational(x)) {}
  ExactScalar(Rational x) : re_(std::move(x)) {}
  ExactScalar(QuadExt re) : re_(std::move(re)) {}
  ExactScalar(QuadExt re, QuadExt im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactScalar sqrt2() { return ExactScalar(QuadExt::sqrt2()); }
  static ExactScalar i() { return ExactScalar(QuadExt(), QuadExt(Rational(1))); }

  const QuadExt& re() const { return re_; }
  const QuadExt& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }
  ExactScalar operator+(const ExactScalar& o) const { return {re_ + o.re_, im_ + o.im_}; }
  ExactScalar operator-(const ExactScalar& o) const { return {re_ - o.re_, im_ - o.im_}; }
  ExactScalar operator*(const ExactScalar& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  ExactScalar inverse() const {
    if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
    QuadExt n = (re_ * re_ + im_ * im_).inverse();
    return {re_ * n, -im_ * n};
  }
  ExactScalar operator/(const ExactScalar& o) const { return *this * o.inverse(); }

  ExactScalar& operator+=(const ExactScalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
  ExactScalar& operator-=(const ExactScalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  ExactScalar& operator*=(const ExactScalar& o) { *this = *this * o; return *this; }

  bool operator==(const ExactScalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  // Real scalars print in QuadExt form; complex ones as "(re,im)".
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    return "(" + re_.str() + "," + im_.str() + ")";
  }

 private:
  QuadExt re_, im_;
};

namespace detail {

// Parses a QuadExt literal: terms "p/q" and "r/s*s2" joined by +/-.
inline QuadExt parse_quadext(const std::string& s) {
  Rational a, b;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("scalar: empty term in '" + s + "'");
    auto star = term.find("*s2");
    bool radical = false;
    if (star != std::string::npos) {
      radical = true;
      term = term.substr(0, star);
    } else if (term == "s2") {
      radical = true;
      term = "1";
    }
    Rational r = Rational::parse(term);
    if (sign < 0) r = -r;
    if (radical) b += r; else a += r;
    i = j;
  }
  return QuadExt(a, b);
}

}  // namespace detail

// Parses "(re,im)" or a bare QuadExt literal.
inline ExactScalar parse_scalar(const std::string& s) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw std::invalid_argument("scalar: unterminated '(' in '" + s + "'");
    std::string body = s.substr(1, s.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string::npos) return ExactScalar(detail::parse_quadext(body));
    return ExactScalar(detail::parse_quadext(body.substr(0, comma)),
                       detail::parse_quadext(body.substr(comma + 1)));
  }
  return ExactScalar(detail::parse_quadext(s));
}

}  // namespace opakit
