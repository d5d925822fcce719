#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "fusionlab/number.hpp"

namespace fusionlab {

/// Coefficient arithmetic of a ring, fixed at load time.
enum class ArithmeticMode { exact, complex };

std::string_view to_string(ArithmeticMode mode);

/// Element coefficient: an exact Gaussian rational (re + i·im) in exact
/// mode, a complex double otherwise. Mixing modes throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long v) : re_(v) {}  // NOLINT
  Scalar(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Scalar(std::complex<double> z) : mode_(ArithmeticMode::complex), z_(z) {}

  static Scalar zero(ArithmeticMode mode);
  static Scalar one(ArithmeticMode mode);
  /// Converts into the requested mode (exact -> complex is allowed,
  /// complex -> exact throws).
  Scalar in_mode(ArithmeticMode mode) const;

  ArithmeticMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ArithmeticMode::exact; }
  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const;
  bool is_real() const;
  /// True for exact values with zero imaginary part and integer real part.
  bool is_integer() const;
  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }

  Scalar conj() const;
  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string str() const;

 private:
  ArithmeticMode mode_ = ArithmeticMode::exact;
  Rational re_ = 0;
  Rational im_ = 0;
  std::complex<double> z_{};
};

}  // namespace fusionlab
