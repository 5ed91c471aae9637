#pragma once

#include "adm/rational.hpp"

#include <string>
#include <vector>

namespace adm {

/// Dense univariate polynomial over Q; coefficient i multiplies x^i.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Polynomial monomial(unsigned degree, Rational coefficient = Rational(1)) {
    std::vector<Rational> c(degree + 1);
    c[degree] = std::move(coefficient);
    return Polynomial(std::move(c));
  }

  /// x − root
  static Polynomial linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + *it;
    return out;
  }

  Polynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<std::int64_t>(i)));
    return Polynomial(std::move(d));
  }

  /// Antiderivative vanishing at 0.
  Polynomial integral() const {
    std::vector<Rational> out(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / Rational(static_cast<std::int64_t>(i + 1));
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Rational& s, Polynomial p) {
    for (auto& c : p.c_) c *= s;
    p.trim();
    return p;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::vector<std::string> coefficient_strings() const {
    std::vector<std::string> out;
    for (const auto& c : c_) out.push_back(c.str());
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace adm
