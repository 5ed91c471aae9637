#pragma once

// Divisor classes x λ + Σ y_i δ_i on the moduli space of stable genus-g
// curves, and the cone cut out by
//
//     x ≥ 0,   g x + (8g + 4) y_0 ≥ 0,   i(g − i) x + (2g + 1) y_i ≥ 0.
//
// The same inequalities describe both the classes that are nef on curves
// meeting the smooth locus and the classes weakly positive over it, so a
// single check serves both.

#include "adm/errors.hpp"
#include "adm/polynomial.hpp"
#include "adm/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace adm {

struct ModuliDivisorClass {
  std::int64_t g = 2;
  Rational x;                 // λ coefficient
  std::vector<Rational> y;    // δ_0 .. δ_{⌊g/2⌋} coefficients

  static ModuliDivisorClass make(std::int64_t g, Rational x, std::vector<Rational> y) {
    if (g < 2) fail(ErrorKind::InvalidGenus, "genus must be at least 2, got " + std::to_string(g));
    if (y.size() != static_cast<std::size_t>(g / 2 + 1))
      fail(ErrorKind::ParameterOutOfRange, "genus " + std::to_string(g) + " needs " + std::to_string(g / 2 + 1) +
                                               " boundary coefficients, got " + std::to_string(y.size()));
    return {g, std::move(x), std::move(y)};
  }

  friend bool operator==(const ModuliDivisorClass&, const ModuliDivisorClass&) = default;
};

/// (8g + 4) λ − g δ_0 − Σ 4 i (g − i) δ_i
inline ModuliDivisorClass distinguished_divisor(std::int64_t g) {
  if (g < 2) fail(ErrorKind::InvalidGenus, "genus must be at least 2, got " + std::to_string(g));
  std::vector<Rational> y{Rational(-g)};
  for (std::int64_t i = 1; i <= g / 2; ++i) y.emplace_back(-4 * i * (g - i));
  return ModuliDivisorClass::make(g, Rational(8 * g + 4), std::move(y));
}

struct ConeSlack {
  Rational s_lambda;              // x
  std::vector<Rational> s;        // s_0 = g x + (8g+4) y_0; s_i = i(g−i) x + (2g+1) y_i
  bool member = false;
};

inline ConeSlack cone_check(const ModuliDivisorClass& d) {
  auto checked = ModuliDivisorClass::make(d.g, d.x, d.y);
  const auto g = checked.g;
  ConeSlack out;
  out.s_lambda = d.x;
  out.s.push_back(Rational(g) * d.x + Rational(8 * g + 4) * d.y[0]);
  for (std::int64_t i = 1; i <= g / 2; ++i)
    out.s.push_back(Rational(i * (g - i)) * d.x + Rational(2 * g + 1) * d.y[static_cast<std::size_t>(i)]);
  out.member = out.s_lambda.sign() >= 0;
  for (const auto& s : out.s) out.member = out.member && s.sign() >= 0;
  return out;
}

/// D = c_dist · (distinguished divisor) + Σ c_i δ_i.
struct WpDecomposition {
  std::int64_t g = 2;
  Rational c_dist;
  std::vector<Rational> c;

  bool nonnegative() const {
    if (c_dist.sign() < 0) return false;
    for (const auto& v : c)
      if (v.sign() < 0) return false;
    return true;
  }

  ModuliDivisorClass recompose() const {
    auto out = distinguished_divisor(g);
    out.x *= c_dist;
    for (std::size_t i = 0; i < out.y.size(); ++i) out.y[i] = out.y[i] * c_dist + c[i];
    return out;
  }
};

inline WpDecomposition wp_decomposition(const ModuliDivisorClass& d) {
  auto checked = ModuliDivisorClass::make(d.g, d.x, d.y);
  const auto g = checked.g;
  WpDecomposition out{g, d.x / Rational(8 * g + 4), {}};
  out.c.push_back(d.y[0] + Rational(g) * d.x / Rational(8 * g + 4));
  for (std::int64_t i = 1; i <= g / 2; ++i)
    out.c.push_back(d.y[static_cast<std::size_t>(i)] + Rational(i * (g - i)) * d.x / Rational(2 * g + 1));
  return out;
}

/// Coefficients of D restricted to the closure of the hyperelliptic locus,
/// in the basis σ_0..σ_{⌊(g−1)/2⌋}, δ_1..δ_{⌊g/2⌋}.
struct HyperellipticRestriction {
  std::vector<Rational> sigma;
  std::vector<Rational> delta;  // delta[0] is the δ_1 coefficient

  bool is_zero() const {
    for (const auto& v : sigma)
      if (!v.is_zero()) return false;
    for (const auto& v : delta)
      if (!v.is_zero()) return false;
    return true;
  }
};

inline HyperellipticRestriction hyperelliptic_restriction(const ModuliDivisorClass& d) {
  auto checked = ModuliDivisorClass::make(d.g, d.x, d.y);
  const auto g = checked.g;
  const Rational lambda_scale = d.x / Rational(8 * g + 4);
  HyperellipticRestriction out;
  out.sigma.push_back(Rational(g) * lambda_scale + d.y[0]);
  for (std::int64_t j = 1; j <= (g - 1) / 2; ++j)
    out.sigma.push_back(Rational(2) * (Rational((j + 1) * (g - j)) * lambda_scale + d.y[0]));
  for (std::int64_t i = 1; i <= g / 2; ++i)
    out.delta.push_back(Rational(i * (g - i)) * d.x / Rational(2 * g + 1) + d.y[static_cast<std::size_t>(i)]);
  return out;
}

/// θ(x) = (a1 + a2 + 1) ∫_0^x t^a1 (t − 1)^a2 dt, with the identities it must satisfy.
struct ThetaWitness {
  unsigned a1 = 0;
  unsigned a2 = 0;
  Polynomial theta;
  bool monic = false;
  bool degree_ok = false;
  bool vanishes_at_zero = false;
  bool derivative_ok = false;   // θ' = (a1 + a2 + 1) x^a1 (x − 1)^a2 coefficientwise
  Rational at_one;              // θ(1) evaluated from the polynomial
  Rational beta_at_one;         // (−1)^a2 a1! a2! / (a1 + a2)!
  Rational printed_at_one;      // (−1)^a2 (a1 + a2 + 1) a1! a2! / (a1 + a2)!, as displayed in the source
  bool printed_matches = false;

  bool all_checks() const { return monic && degree_ok && vanishes_at_zero && derivative_ok && at_one == beta_at_one; }
};

inline ThetaWitness theta_witness(unsigned a1, unsigned a2) {
  const Rational scale(static_cast<std::int64_t>(a1 + a2 + 1));

  // Binomial expansion of t^a1 (t − 1)^a2, integrated term by term.
  std::vector<Rational> integrand(a1 + a2 + 1);
  Rational binom(1);
  for (unsigned k = 0; k <= a2; ++k) {
    Rational sign((a2 - k) % 2 == 0 ? 1 : -1);
    integrand[a1 + k] = sign * binom;
    binom = binom * Rational(static_cast<std::int64_t>(a2 - k)) / Rational(static_cast<std::int64_t>(k + 1));
  }
  ThetaWitness w;
  w.a1 = a1;
  w.a2 = a2;
  w.theta = scale * Polynomial(integrand).integral();

  // Independent route for θ': repeated multiplication of linear factors.
  Polynomial product = Polynomial::monomial(0);
  for (unsigned i = 0; i < a1; ++i) product = product * Polynomial::linear(Rational(0));
  for (unsigned i = 0; i < a2; ++i) product = product * Polynomial::linear(Rational(1));

  w.monic = w.theta.leading() == Rational(1);
  w.degree_ok = w.theta.degree() == static_cast<int>(a1 + a2 + 1);
  w.vanishes_at_zero = w.theta(Rational(0)).is_zero();
  w.derivative_ok = w.theta.derivative() == scale * product;
  w.at_one = w.theta(Rational(1));

  Rational sign(a2 % 2 == 0 ? 1 : -1);
  w.beta_at_one = sign * factorial(a1) * factorial(a2) / factorial(a1 + a2);
  w.printed_at_one = sign * scale * factorial(a1) * factorial(a2) / factorial(a1 + a2);
  w.printed_matches = w.printed_at_one == w.at_one;
  return w;
}

}  // namespace adm
