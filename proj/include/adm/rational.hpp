#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>

namespace adm {

using BigInt = boost::multiprecision::cpp_int;

/// Exact signed rational, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over boost::multiprecision::cpp_rational so the rest of
/// the library never touches the backend directly. Text form is canonical:
/// "p/q" when q != 1, otherwise just "p".
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit on purpose
  Rational(const BigInt& num, const BigInt& den) : value_(make(num, den)) {}
  Rational(std::int64_t num, std::int64_t den) : value_(make(BigInt(num), BigInt(den))) {}

  static Rational from_backend(Backend v) {
    Rational r;
    r.value_ = std::move(v);
    return r;
  }

  /// Parses "p", "-p", "p/q" (q != 0). Returns nullopt on malformed text.
  static std::optional<Rational> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    auto num = parse_int(text.substr(0, slash));
    if (!num) return std::nullopt;
    if (slash == std::string_view::npos) return Rational(*num, BigInt(1));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '-') return std::nullopt;
    auto den = parse_int(den_text);
    if (!den || den->is_zero()) return std::nullopt;
    return Rational(*num, *den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  double to_double() const { return value_.convert_to<double>(); }

  std::string str() const {
    auto den = denominator();
    if (den == 1) return numerator().str();
    return numerator().str() + "/" + den.str();
  }

  const Backend& backend() const { return value_; }

  Rational operator-() const { return from_backend(-value_); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Backend make(const BigInt& num, const BigInt& den) {
    if (den.is_zero()) throw std::domain_error("rational with zero denominator");
    // The backend rejects negative denominators outright.
    return den.sign() < 0 ? Backend(BigInt(-num), BigInt(-den)) : Backend(num, den);
  }

  static std::optional<BigInt> parse_int(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && text[i] == '-') {
      negative = true;
      ++i;
    }
    if (i == text.size()) return std::nullopt;
    BigInt out = 0;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '9') return std::nullopt;
      out = out * 10 + (c - '0');
    }
    return negative ? BigInt(-out) : out;
  }

  Backend value_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Rational factorial(unsigned n) {
  Rational out(1);
  for (unsigned k = 2; k <= n; ++k) out *= Rational(static_cast<std::int64_t>(k));
  return out;
}

}  // namespace adm
