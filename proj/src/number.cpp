#include "fusionlab/number.hpp"

#include <cctype>
#include <cmath>

#include "fusionlab/error.hpp"

namespace fusionlab {

namespace {

Decimal as_decimal(const Rational& r) {
  return Decimal(boost::multiprecision::numerator(r)) /
         Decimal(boost::multiprecision::denominator(r));
}

}  // namespace

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  return as_decimal(r).convert_to<double>();
}

Rational parse_exact_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  Integer mantissa = 0;
  long long scale = 0;
  bool digits = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      digits = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!digits) throw InputError("malformed decimal literal '" + std::string(text) + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    long long exponent = 0;
    bool exp_digits = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      exp_digits = true;
      if (exponent > 100000) throw InputError("decimal exponent out of range");
    }
    if (!exp_digits) throw InputError("malformed decimal literal '" + std::string(text) + "'");
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) throw InputError("malformed decimal literal '" + std::string(text) + "'");
  Rational value(mantissa);
  if (scale > 0) value *= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(scale)));
  if (scale < 0) value /= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-scale)));
  return negative ? Rational(-value) : value;
}

Number Number::parse(std::string_view text) {
  if (text.empty()) throw InputError("empty number literal");
  if (text.find_first_of(".eE") != std::string_view::npos) {
    return Number(as_decimal(parse_exact_decimal(text)));
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Number(parse_exact_decimal(text));
  const Rational num = parse_exact_decimal(text.substr(0, slash));
  const Rational den = parse_exact_decimal(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Number(Rational(num / den));
}

Decimal Number::decimal() const {
  if (is_exact()) return as_decimal(rational());
  return std::get<Decimal>(value_);
}

double Number::to_double() const {
  if (is_exact()) return fusionlab::to_double(rational());
  return std::get<Decimal>(value_).convert_to<double>();
}

std::string Number::str() const {
  if (is_exact()) return rational().str();
  return std::get<Decimal>(value_).str(std::numeric_limits<Decimal>::digits10);
}

bool Number::is_zero() const { return sign() == 0; }

int Number::sign() const {
  if (is_exact()) return rational().sign();
  return std::get<Decimal>(value_).sign();
}

Number operator+(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.rational() + b.rational()));
  return Number(Decimal(a.decimal() + b.decimal()));
}

Number operator-(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.rational() - b.rational()));
  return Number(Decimal(a.decimal() - b.decimal()));
}

Number operator*(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.rational() * b.rational()));
  return Number(Decimal(a.decimal() * b.decimal()));
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) throw ComputationError("division by zero");
  if (a.is_exact() && b.is_exact()) return Number(Rational(a.rational() / b.rational()));
  return Number(Decimal(a.decimal() / b.decimal()));
}

Number Number::operator-() const {
  if (is_exact()) return Number(Rational(-rational()));
  return Number(Decimal(-std::get<Decimal>(value_)));
}

bool operator==(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.decimal() == b.decimal();
}

bool operator<(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.decimal() < b.decimal();
}

Number abs(const Number& x) { return x.sign() < 0 ? -x : x; }

bool approx_equal(const Number& a, const Number& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const Decimal diff = boost::multiprecision::abs(a.decimal() - b.decimal());
  const Decimal scale = boost::multiprecision::max(Decimal(1), Decimal(boost::multiprecision::abs(b.decimal())));
  return diff <= Decimal(tol) * scale;
}

}  // namespace fusionlab
