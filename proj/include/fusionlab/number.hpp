#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>
#include <variant>

namespace fusionlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Decimal = boost::multiprecision::cpp_dec_float_50;

/// Documented precision of decimal (irrational) quantities.
inline constexpr double kDecimalPrecision = 1e-40;

/// A positive real quantity that is either an exact rational or a
/// 50-digit decimal. Arithmetic between two exact values stays exact;
/// anything touching a decimal becomes a decimal.
class Number {
 public:
  Number() : value_(Rational(0)) {}
  Number(long long v) : value_(Rational(v)) {}  // NOLINT
  Number(Rational v) : value_(std::move(v)) {}  // NOLINT
  Number(Decimal v) : value_(std::move(v)) {}   // NOLINT

  /// "3", "-2/7" are exact; anything with '.' or an exponent is decimal.
  static Number parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  Decimal decimal() const;
  double to_double() const;
  std::string str() const;

  bool is_zero() const;
  int sign() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number operator-() const;
  Number& operator+=(const Number& o) { return *this = *this + o; }
  Number& operator*=(const Number& o) { return *this = *this * o; }

  /// Exact equality for two rationals; for decimals equality of the
  /// stored 50-digit values.
  friend bool operator==(const Number& a, const Number& b);
  friend bool operator<(const Number& a, const Number& b);

 private:
  std::variant<Rational, Decimal> value_;
};

Number abs(const Number& x);

/// |a - b| <= tol * max(1, |b|) for decimals, exact equality otherwise.
bool approx_equal(const Number& a, const Number& b, double tol);

/// Parses a plain decimal literal ("3", "2.5", "-0.125", "1e3") into an
/// exact rational. Throws InputError on malformed text.
Rational parse_exact_decimal(std::string_view text);

double to_double(const Rational& r);

}  // namespace fusionlab
