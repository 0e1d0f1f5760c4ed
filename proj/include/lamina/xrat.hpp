#pragma once

/**
 * @file xrat.hpp
 * @brief Exact nonnegative rationals extended by a single infinity.
 *
 * Every real part in the library is an XRat: a reduced nonnegative rational
 * p/q, or the symbol "inf". Arithmetic follows the measure-theory conventions
 *   inf + a = inf,   a * inf = inf for a > 0,   0 * inf = 0.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lamina {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Builds num/den; den may be negative, but not zero.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "p/q" or "-p/q" (decimal integers only).
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw std::invalid_argument("empty integer in rational");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'");
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

class XRat {
 public:
  XRat() = default;
  XRat(Rational v) : value_(std::move(v)) {  // NOLINT(google-explicit-constructor)
    if (value_ < 0) throw std::invalid_argument("XRat must be nonnegative");
  }
  XRat(std::int64_t v) : XRat(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  XRat(std::int64_t num, std::int64_t den) : XRat(make_rational(BigInt(num), BigInt(den))) {}

  static XRat infinity() {
    XRat x;
    x.inf_ = true;
    return x;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && value_ == 0; }
  bool is_finite() const { return !inf_; }
  bool is_positive() const { return inf_ || value_ > 0; }

  const Rational& value() const {
    if (inf_) throw std::domain_error("value() of infinite XRat");
    return value_;
  }

  friend XRat operator+(const XRat& a, const XRat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return XRat(a.value_ + b.value_);
  }
  XRat& operator+=(const XRat& o) { return *this = *this + o; }

  friend XRat operator*(const XRat& a, const XRat& b) {
    if (a.is_zero() || b.is_zero()) return XRat();
    if (a.inf_ || b.inf_) return infinity();
    return XRat(a.value_ * b.value_);
  }

  /// Division by a finite positive rational; infinity stays infinite.
  friend XRat operator/(const XRat& a, const Rational& d) {
    if (d <= 0) throw std::invalid_argument("XRat division by nonpositive value");
    if (a.inf_) return infinity();
    return XRat(a.value_ / d);
  }

  friend bool operator==(const XRat& a, const XRat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const XRat& a, const XRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q" (always with a denominator) or "inf".
  std::string to_string() const { return inf_ ? "inf" : rational_to_string(value_); }

  static XRat parse(std::string_view text) {
    if (text == "inf") return infinity();
    return XRat(parse_rational(text));
  }

 private:
  Rational value_{0};
  bool inf_ = false;
};

}  // namespace lamina
