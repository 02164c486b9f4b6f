#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mtrans {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in canonical form: reduced, positive denominator.
///
/// Backed by Boost.Multiprecision; this wrapper fixes the textual format
/// ("p/q" or "p", never decimal) and adds the floor / fractional-part helpers
/// the constructions rely on.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Parses "p/q", "-p/q" or an integer string. Throws ParseError.
  static Rational parse(std::string_view text);

  [[nodiscard]] BigInt numerator() const;
  [[nodiscard]] BigInt denominator() const;
  [[nodiscard]] bool is_integer() const;

  [[nodiscard]] BigInt floor() const;
  [[nodiscard]] BigInt ceil() const;
  /// x - floor(x), always in [0, 1).
  [[nodiscard]] Rational frac() const;

  /// Integer value; throws RangeError if not an integer or outside int64.
  [[nodiscard]] std::int64_t to_int64() const;

  [[nodiscard]] std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}

  Value value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact binomial coefficient; zero when k < 0 or k > n.
BigInt binomial(int n, int k);

}  // namespace mtrans
