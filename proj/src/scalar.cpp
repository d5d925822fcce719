#include "fusionlab/scalar.hpp"

#include <cstdio>

#include "fusionlab/error.hpp"

namespace fusionlab {

std::string_view to_string(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? "exact" : "complex";
}

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) {
    throw ComputationError("mixed exact and complex coefficients");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Scalar Scalar::zero(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? Scalar() : Scalar(std::complex<double>{});
}

Scalar Scalar::one(ArithmeticMode mode) {
  return mode == ArithmeticMode::exact ? Scalar(1) : Scalar(std::complex<double>{1.0, 0.0});
}

Scalar Scalar::in_mode(ArithmeticMode mode) const {
  if (mode == mode_) return *this;
  if (mode == ArithmeticMode::complex) return Scalar(to_complex());
  throw ComputationError("cannot convert a complex double coefficient to exact arithmetic");
}

bool Scalar::is_zero() const {
  if (is_exact()) return re_ == 0 && im_ == 0;
  return z_ == std::complex<double>{};
}

bool Scalar::is_real() const {
  if (is_exact()) return im_ == 0;
  return z_.imag() == 0.0;
}

bool Scalar::is_integer() const {
  return is_exact() && im_ == 0 && boost::multiprecision::denominator(re_) == 1;
}

std::complex<double> Scalar::to_complex() const {
  if (is_exact()) return {to_double(re_), to_double(im_)};
  return z_;
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(re_, Rational(-im_));
  return Scalar(std::conj(z_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-re_), Rational(-im_));
  return Scalar(-z_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return Scalar(Rational(a.re_ + b.re_), Rational(a.im_ + b.im_));
  return Scalar(a.z_ + b.z_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_exact()) return Scalar(Rational(a.re_ - b.re_), Rational(a.im_ - b.im_));
  return Scalar(a.z_ - b.z_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.is_exact()) {
    if (a.im_ == 0 && b.im_ == 0) return Scalar(Rational(a.re_ * b.re_));
    return Scalar(Rational(a.re_ * b.re_ - a.im_ * b.im_), Rational(a.re_ * b.im_ + a.im_ * b.re_));
  }
  return Scalar(a.z_ * b.z_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode_ != b.mode_) return false;
  if (a.is_exact()) return a.re_ == b.re_ && a.im_ == b.im_;
  return a.z_ == b.z_;
}

std::string Scalar::str() const {
  if (is_exact()) {
    if (im_ == 0) return re_.str();
    if (re_ == 0) return (im_ == 1 ? std::string() : im_ == -1 ? std::string("-") : im_.str()) + "i";
    const Rational mag = im_ < 0 ? Rational(-im_) : im_;
    return "(" + re_.str() + (im_ < 0 ? "-" : "+") + (mag == 1 ? std::string() : mag.str()) + "i)";
  }
  if (z_.imag() == 0.0) return format_double(z_.real());
  return "(" + format_double(z_.real()) + (z_.imag() < 0 ? "-" : "+") +
         format_double(std::abs(z_.imag())) + "i)";
}

}  // namespace fusionlab
