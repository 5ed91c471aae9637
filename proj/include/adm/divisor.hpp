#pragma once

#include "adm/graph.hpp"

#include <stdexcept>
#include <vector>

namespace adm {

/// Rational divisor supported on the vertices of a graph.
class GraphDivisor {
 public:
  GraphDivisor() = default;
  explicit GraphDivisor(std::size_t vertex_count) : coefficients_(vertex_count) {}
  explicit GraphDivisor(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {}

  std::size_t size() const { return coefficients_.size(); }
  const Rational& operator[](VertexId v) const { return coefficients_.at(v.index); }
  Rational& operator[](VertexId v) { return coefficients_.at(v.index); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }

  Rational degree() const {
    Rational sum;
    for (const auto& c : coefficients_) sum += c;
    return sum;
  }

  friend bool operator==(const GraphDivisor&, const GraphDivisor&) = default;

 private:
  std::vector<Rational> coefficients_;
};

/// Nonnegative rational weight per vertex; α in D(α).
class GenusWeighting {
 public:
  GenusWeighting() = default;
  explicit GenusWeighting(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
    for (const auto& a : alpha_)
      if (a.sign() < 0) fail(ErrorKind::DegenerateWeighting, "weight " + a.str() + " is negative");
  }

  std::size_t size() const { return alpha_.size(); }
  const Rational& operator[](VertexId v) const { return alpha_.at(v.index); }
  const std::vector<Rational>& values() const { return alpha_; }

  Rational total() const {
    Rational sum;
    for (const auto& a : alpha_) sum += a;
    return sum;
  }

 private:
  std::vector<Rational> alpha_;
};

inline void check_weighting(const MetrizedGraph& graph, const GenusWeighting& alpha) {
  if (alpha.size() != graph.vertex_count())
    fail(ErrorKind::DegenerateWeighting, "weighting has " + std::to_string(alpha.size()) +
                                             " entries for " + std::to_string(graph.vertex_count()) +
                                             " vertices");
}

/// D(α) = Σ (2α(x) − 2 + v(x)) x.
inline GraphDivisor divisor_from_weighting(const MetrizedGraph& graph, const GenusWeighting& alpha) {
  check_weighting(graph, alpha);
  GraphDivisor d(graph.vertex_count());
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    VertexId v{i};
    d[v] = Rational(2) * alpha[v] - Rational(2) + Rational(valence(graph, v));
  }
  // deg D(α) + 2 = 2(Σα + b1); on a tree this is 2Σα.
  if (d.degree() + Rational(2) != Rational(2) * (alpha.total() + Rational(first_betti(graph))))
    throw std::logic_error("degree identity for D(alpha) violated");
  return d;
}

inline GenusWeighting genus_weighting(const MetrizedGraph& graph) {
  std::vector<Rational> alpha;
  for (const auto& v : graph.vertices()) alpha.emplace_back(v.genus);
  return GenusWeighting(std::move(alpha));
}

/// Weighting of the loop-free part of a tree of stable components: each
/// vertex carries its genus plus one per self-loop, i.e. the arithmetic genus
/// of the component before normalizing its self-nodes.
inline GenusWeighting loop_absorbed_weighting(const MetrizedGraph& graph) {
  std::vector<Rational> alpha;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i)
    alpha.emplace_back(graph.vertices()[i].genus + loop_count(graph, VertexId{i}));
  return GenusWeighting(std::move(alpha));
}

/// ω_y: coefficient 2g(v) − 2 + valence(v) at each vertex; degree 2g − 2.
inline GraphDivisor canonical_polarization(const MetrizedGraph& graph) {
  auto omega = divisor_from_weighting(graph, genus_weighting(graph));
  if (omega.degree() != Rational(2 * total_genus(graph) - 2))
    throw std::logic_error("canonical polarization degree is not 2g-2");
  return omega;
}

/// A graph together with a polarization D, deg D ≠ −2.
struct PolarizedGraph {
  MetrizedGraph graph;
  GraphDivisor divisor;

  static PolarizedGraph make(MetrizedGraph graph, GraphDivisor divisor) {
    if (divisor.size() != graph.vertex_count())
      fail(ErrorKind::UnknownVertex, "divisor size does not match the vertex count");
    if (divisor.degree() == Rational(-2))
      fail(ErrorKind::DegenerateDivisor, "polarization has degree -2");
    return {std::move(graph), std::move(divisor)};
  }
};

}  // namespace adm
