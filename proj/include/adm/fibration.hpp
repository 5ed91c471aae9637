#pragma once

// Slope inequality, Noether arithmetic and the effective Bogomolov radius
// for a semistable genus-g fibration described by its singular fibers.

#include "adm/green_exact.hpp"
#include "adm/graph.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adm {

struct Fiber {
  std::string name;
  MetrizedGraph graph;
  friend bool operator==(const Fiber&, const Fiber&) = default;
};

struct FibrationData {
  std::int64_t g = 2;
  std::vector<Fiber> fibers;
  std::optional<Rational> deg_f_omega;  // deg f_* ω_{X/Y}
  std::optional<Rational> omega_sq;     // ω_{X/Y}²

  friend bool operator==(const FibrationData&, const FibrationData&) = default;
};

inline void check_genus(std::int64_t g) {
  if (g < 2) fail(ErrorKind::InvalidGenus, "genus must be at least 2, got " + std::to_string(g));
}

inline std::vector<std::int64_t> aggregate_deltas(const FibrationData& data) {
  check_genus(data.g);
  std::vector<std::int64_t> total(static_cast<std::size_t>(data.g / 2 + 1), 0);
  for (const auto& fiber : data.fibers) {
    auto g = total_genus(fiber.graph);
    if (g != data.g)
      fail(ErrorKind::GenusMismatch, "fiber '" + fiber.name + "' has genus " + std::to_string(g) +
                                         ", expected " + std::to_string(data.g));
    auto counts = node_type_counts(fiber.graph);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += counts[i];
  }
  return total;
}

inline std::int64_t delta_total(const std::vector<std::int64_t>& deltas) {
  std::int64_t sum = 0;
  for (auto d : deltas) sum += d;
  return sum;
}

struct SlopeCheck {
  bool holds = false;
  Rational lhs;  // (8g + 4) deg f_* ω
  Rational rhs;  // g δ_0 + Σ 4 i (g − i) δ_i
};

inline Rational slope_rhs(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  check_deltas(g, deltas);
  Rational rhs = Rational(g * deltas[0]);
  for (std::int64_t i = 1; i <= g / 2; ++i) rhs += Rational(4 * i * (g - i) * deltas[static_cast<std::size_t>(i)]);
  return rhs;
}

inline SlopeCheck slope_check(std::int64_t g, const Rational& deg_f_omega, const std::vector<std::int64_t>& deltas) {
  SlopeCheck out;
  out.rhs = slope_rhs(g, deltas);
  out.lhs = Rational(8 * g + 4) * deg_f_omega;
  out.holds = out.lhs >= out.rhs;
  return out;
}

/// ω² = 12 deg f_* ω − δ.
inline Rational noether_omega_sq(const Rational& deg_f_omega, const Rational& delta_total) {
  return Rational(12) * deg_f_omega - delta_total;
}

/// Lower bound for ω² implied by the slope inequality and Noether's formula.
inline Rational omega_sq_lower(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  check_deltas(g, deltas);
  Rational out = Rational(g - 1, 2 * g + 1) * Rational(deltas[0]);
  for (std::int64_t i = 1; i <= g / 2; ++i)
    out += (Rational(12 * i * (g - i), 2 * g + 1) - Rational(1)) * Rational(deltas[static_cast<std::size_t>(i)]);
  return out;
}

/// Σ_y ε(G_y, ω_y) over the singular fibers; every fiber must be a tree of
/// stable components.
inline Rational eps_total(const FibrationData& data) {
  Rational sum;
  for (const auto& fiber : data.fibers) {
    try {
      sum += eps_polarized(fiber.graph).eps;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutsideExactClass) throw;
      fail(ErrorKind::OutsideExactClass, "fiber '" + fiber.name + "' is not a tree of stable components");
    }
  }
  return sum;
}

inline Rational admissible_omega_sq_lower(const Rational& omega_sq_lower, const Rational& eps_total) {
  return omega_sq_lower - eps_total;
}

struct Radius {
  Rational radius_sq;
  double radius = 0;  // display value, 15 significant digits
};

namespace detail {

inline double display_sqrt(const Rational& value) {
  double r = std::sqrt(value.to_double());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", r);
  return std::strtod(buf, nullptr);
}

}  // namespace detail

/// Closed-form lower bound for the radius of small points on the generic fiber.
inline Radius bogomolov_radius(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  check_deltas(g, deltas);
  if (delta_total(deltas) == 0) fail(ErrorKind::SmoothFamily, "no singular fibers: the family is smooth");
  Rational inner = Rational(g - 1, 3) * Rational(deltas[0]);
  for (std::int64_t i = 1; i <= g / 2; ++i) inner += Rational(4 * i * (g - i) * deltas[static_cast<std::size_t>(i)]);
  Rational r2 = Rational((g - 1) * (g - 1), g * (2 * g + 1)) * inner;
  return {r2, detail::display_sqrt(r2)};
}

/// radius² = (g − 1) (ω^a · ω^a)_a, valid when the admissible self-intersection is positive.
inline Radius radius_from_admissible(std::int64_t g, const Rational& adm) {
  check_genus(g);
  if (adm.sign() <= 0)
    fail(ErrorKind::NonpositiveAdmissible, "admissible self-intersection " + adm.str() + " is not positive");
  Rational r2 = Rational(g - 1) * adm;
  return {r2, detail::display_sqrt(r2)};
}

struct BoundReport {
  std::vector<std::int64_t> deltas;
  std::optional<SlopeCheck> slope;       // when deg f_* ω is known
  std::optional<Rational> omega_sq_noether;
  Rational omega_sq_lower;
  Rational eps_total;
  Rational adm_lower;                    // uses ω² itself when supplied
  bool unit_lengths = true;
  Radius radius;                         // from the admissible bound
  std::optional<Radius> closed_form;     // closed form; equal to `radius` for unit lengths without ω²
};

inline bool has_unit_lengths(const FibrationData& data) {
  for (const auto& fiber : data.fibers)
    for (const auto& e : fiber.graph.edges())
      if (e.length != Rational(1)) return false;
  return true;
}

/// Full chain: node counts → ω² bound → ε sum → admissible bound → radius.
inline BoundReport bound_report(const FibrationData& data) {
  BoundReport out;
  out.deltas = aggregate_deltas(data);
  if (delta_total(out.deltas) == 0) fail(ErrorKind::SmoothFamily, "no singular fibers: the family is smooth");
  if (data.deg_f_omega) {
    out.slope = slope_check(data.g, *data.deg_f_omega, out.deltas);
    out.omega_sq_noether = noether_omega_sq(*data.deg_f_omega, Rational(delta_total(out.deltas)));
  }
  out.omega_sq_lower = omega_sq_lower(data.g, out.deltas);
  out.eps_total = eps_total(data);
  out.adm_lower = admissible_omega_sq_lower(data.omega_sq ? *data.omega_sq : out.omega_sq_lower, out.eps_total);
  out.unit_lengths = has_unit_lengths(data);
  out.radius = radius_from_admissible(data.g, out.adm_lower);
  out.closed_form = bogomolov_radius(data.g, out.deltas);
  if (out.unit_lengths && !data.omega_sq && out.closed_form->radius_sq != out.radius.radius_sq)
    throw std::logic_error("admissible pipeline disagrees with the closed-form radius");
  return out;
}

}  // namespace adm
