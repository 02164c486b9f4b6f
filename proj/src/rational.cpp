#include "mtrans/rational.hpp"

#include "mtrans/error.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace mtrans {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw ParseError("empty integer in rational '" + std::string(whole) + "'");
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) {
    throw ParseError("missing digits in rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw ParseError("invalid character in rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw RangeError("rational with zero denominator");
  }
  value_ = Value(numerator, denominator);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) {
    throw ParseError("zero denominator in rational '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }

BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }

bool Rational::is_integer() const { return denominator() == 1; }

BigInt Rational::floor() const {
  const BigInt num = numerator();
  const BigInt den = denominator();
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) {
    --q;
  }
  return q;
}

BigInt Rational::ceil() const {
  const BigInt f = floor();
  return (f * denominator() == numerator()) ? f : BigInt(f + 1);
}

Rational Rational::frac() const { return *this - Rational(floor()); }

std::int64_t Rational::to_int64() const {
  if (!is_integer()) {
    throw RangeError("rational " + to_string() + " is not an integer");
  }
  const BigInt n = numerator();
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw RangeError("integer " + n.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(n);
}

std::string Rational::to_string() const {
  if (is_integer()) {
    return numerator().str();
  }
  return numerator().str() + "/" + denominator().str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.value_ == 0) {
    throw RangeError("division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(Value(-value_)); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace mtrans
