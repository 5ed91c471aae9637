#pragma once

// Exact admissible Green's function values and ε-invariants for graphs whose
// blocks are bridges or self-loops (trees of stable components). Everything
// here is rational arithmetic; graphs outside that class belong to the
// numerical oracle in green_oracle.hpp.

#include "adm/divisor.hpp"
#include "adm/graph.hpp"

#include <cstdint>
#include <queue>
#include <vector>

namespace adm {

struct SegmentGreen {
  Rational eps;
  Rational g_pp;
  Rational g_qq;
};

struct CircleGreen {
  Rational g_oo;
  Rational eps;
};

/// One side of a one-point sum G1 ∨ G2 at the joining point O.
struct JoinPiece {
  Rational degree;  // deg D_i
  Rational eps;     // ε(G_i, D_i)
  Rational g_oo;    // g_(G_i, D_i)(O, O)
};

/// Inputs for g_(G,D)(P, P) with P on the second piece.
struct JoinGreenInput {
  Rational d1;
  Rational d2;
  Rational resistance;  // r_G2(O, P)
  Rational g2_pp;
  Rational g2_oo;
  Rational g1_oo;
};

struct EpsReport {
  Rational eps;
  std::vector<Rational> per_edge_terms;  // indexed by edge id of the input graph
  Rational degree;                       // deg D
};

/// Segment of length l with D = (2a − 1)P + (2b − 1)Q.
inline SegmentGreen eps_segment(const Rational& a, const Rational& b, const Rational& l) {
  Rational s = a + b;
  if (s.is_zero()) fail(ErrorKind::DegenerateDivisor, "segment weights satisfy a + b = 0");
  if (l.sign() <= 0) fail(ErrorKind::NonpositiveLength, "segment length must be positive");
  return {(Rational(4) * a * b / s - Rational(1)) * l, b * b * l / (s * s), a * a * l / (s * s)};
}

/// Circle of length l with the zero polarization.
inline CircleGreen circle_green(const Rational& l) {
  if (l.sign() <= 0) fail(ErrorKind::NonpositiveLength, "circle length must be positive");
  return {l / Rational(12), Rational(0)};
}

namespace detail {

inline void check_join_degrees(const Rational& d1, const Rational& d2) {
  const Rational minus_two(-2);
  if (d1 == minus_two || d2 == minus_two || d1 + d2 == minus_two)
    fail(ErrorKind::DegenerateDivisor, "one-point sum needs deg D1, deg D2, deg(D1 + D2) != -2");
}

}  // namespace detail

inline Rational join_eps(const JoinPiece& first, const JoinPiece& second) {
  const auto& d1 = first.degree;
  const auto& d2 = second.degree;
  detail::check_join_degrees(d1, d2);
  Rational correction = Rational(2) * d2 * (d1 + Rational(2)) * first.g_oo +
                        Rational(2) * d1 * (d2 + Rational(2)) * second.g_oo;
  return first.eps + second.eps + correction / (d1 + d2 + Rational(2));
}

inline Rational join_green(const JoinGreenInput& in) {
  detail::check_join_degrees(in.d1, in.d2);
  Rational s = in.d1 + in.d2 + Rational(2);
  Rational d2p = in.d2 + Rational(2);
  Rational d1p = in.d1 + Rational(2);
  return in.d1 / s * in.resistance + d2p / s * in.g2_pp - in.d1 * d2p / (s * s) * in.g2_oo +
         d1p * d1p / (s * s) * in.g1_oo;
}

/// ε after gluing a circle of length l (carrying no divisor) onto (G, D).
inline Rational attach_circle_eps(const Rational& eps, const Rational& degree, const Rational& l) {
  if (degree == Rational(-2)) fail(ErrorKind::DegenerateDivisor, "deg D = -2");
  if (l.sign() <= 0) fail(ErrorKind::NonpositiveLength, "circle length must be positive");
  return eps + degree * l / (Rational(3) * (degree + Rational(2)));
}

namespace detail {

/// For every edge of a tree, the α-sum over the component of G ∖ e° that
/// contains the edge's first endpoint.
inline std::vector<Rational> first_side_sums(const MetrizedGraph& tree, const GenusWeighting& alpha) {
  std::vector<Rational> sums;
  sums.reserve(tree.edge_count());
  for (std::size_t i = 0; i < tree.edge_count(); ++i) {
    auto labels = component_labels(tree.vertex_count(), tree.edges(),
                                   [i](EdgeId e) { return e.index == i; });
    auto side = labels[tree.edges()[i].a.index];
    Rational sum;
    for (std::size_t v = 0; v < tree.vertex_count(); ++v)
      if (labels[v] == side) sum += alpha.values()[v];
    sums.push_back(sum);
  }
  return sums;
}

inline void require_tree(const MetrizedGraph& graph) {
  if (!is_tree(graph)) fail(ErrorKind::NotATree, "graph is not a tree");
}

/// Same vertices, self-loops dropped. Returns the original id of each kept edge.
inline MetrizedGraph strip_loops(const MetrizedGraph& graph, std::vector<EdgeId>& kept) {
  GraphSpec spec = graph.to_spec();
  spec.edges.clear();
  kept.clear();
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const auto& e = graph.edges()[i];
    if (e.is_loop()) continue;
    spec.edges.push_back({graph.vertices()[e.a.index].name, graph.vertices()[e.b.index].name, e.length});
    kept.push_back(EdgeId{i});
  }
  return MetrizedGraph::build(spec);
}

inline void require_exact_class(const MetrizedGraph& graph) {
  if (!is_tree_of_stable_components(graph))
    fail(ErrorKind::OutsideExactClass,
         "graph has a cycle that is not a self-loop; use the numerical oracle");
}

}  // namespace detail

/// g_(G, D(α))(P, P) on a tree: Σ_e (α-sum of the side of e away from P)² / (Σα)² · l(e).
inline Rational tree_green(const MetrizedGraph& tree, const GenusWeighting& alpha, VertexId p) {
  detail::require_tree(tree);
  check_weighting(tree, alpha);
  tree.check(p);
  Rational total = alpha.total();
  if (total.sign() <= 0) fail(ErrorKind::DegenerateWeighting, "weighting sums to zero");

  Rational out;
  for (std::size_t i = 0; i < tree.edge_count(); ++i) {
    auto labels = component_labels(tree.vertex_count(), tree.edges(),
                                   [i](EdgeId e) { return e.index == i; });
    Rational far_side;
    for (std::size_t v = 0; v < tree.vertex_count(); ++v)
      if (labels[v] != labels[p.index]) far_side += alpha.values()[v];
    out += far_side * far_side / (total * total) * tree.edges()[i].length;
  }
  return out;
}

/// ε(G, D(α)) on a tree: Σ_e (4 A'_e A''_e / A − 1) l(e).
inline EpsReport tree_eps(const MetrizedGraph& tree, const GenusWeighting& alpha) {
  detail::require_tree(tree);
  check_weighting(tree, alpha);
  Rational total = alpha.total();
  if (total.is_zero()) fail(ErrorKind::DegenerateWeighting, "weighting sums to zero");

  EpsReport report;
  report.degree = Rational(2) * total - Rational(2);
  auto sides = detail::first_side_sums(tree, alpha);
  for (std::size_t i = 0; i < tree.edge_count(); ++i) {
    Rational term = (Rational(4) * sides[i] * (total - sides[i]) / total - Rational(1)) * tree.edges()[i].length;
    report.eps += term;
    report.per_edge_terms.push_back(term);
  }
  return report;
}

/// ε(G, D(α)) on a tree of stable components: tree formula on the loop-free
/// part (each loop absorbed into its vertex weight), then one circle gluing
/// per self-loop.
inline EpsReport eps_polarized(const MetrizedGraph& graph, const GenusWeighting& alpha) {
  detail::require_exact_class(graph);
  check_weighting(graph, alpha);

  std::vector<EdgeId> kept;
  MetrizedGraph tree = detail::strip_loops(graph, kept);
  std::vector<Rational> absorbed = alpha.values();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    absorbed[v] += Rational(loop_count(graph, VertexId{v}));
  EpsReport tree_part = tree_eps(tree, GenusWeighting(absorbed));

  EpsReport report;
  report.degree = divisor_from_weighting(graph, alpha).degree();
  if (report.degree != tree_part.degree) throw std::logic_error("loop absorption changed deg D");
  report.per_edge_terms.assign(graph.edge_count(), Rational(0));
  report.eps = tree_part.eps;
  for (std::size_t k = 0; k < kept.size(); ++k) report.per_edge_terms[kept[k].index] = tree_part.per_edge_terms[k];
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const auto& e = graph.edges()[i];
    if (!e.is_loop()) continue;
    Rational next = attach_circle_eps(report.eps, report.degree, e.length);
    report.per_edge_terms[i] = next - report.eps;
    report.eps = next;
  }
  return report;
}

/// ε(G_y, ω_y) for a fiber graph: the polarization induced by the genus labels.
inline EpsReport eps_polarized(const MetrizedGraph& graph) {
  if (total_genus(graph) < 2) fail(ErrorKind::InvalidGenus, "fiber genus must be at least 2");
  return eps_polarized(graph, genus_weighting(graph));
}

/// Sum of bridge lengths between p and q; self-loops never lie on a p–q path.
inline Rational resistance_exact(const MetrizedGraph& graph, VertexId p, VertexId q) {
  detail::require_exact_class(graph);
  graph.check(p);
  graph.check(q);
  std::vector<std::optional<Rational>> dist(graph.vertex_count());
  std::queue<VertexId> frontier;
  dist[p.index] = Rational(0);
  frontier.push(p);
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop();
    for (const auto& e : graph.edges()) {
      if (e.is_loop() || (e.a != v && e.b != v)) continue;
      VertexId w = e.other(v);
      if (dist[w.index]) continue;
      dist[w.index] = *dist[v.index] + e.length;
      frontier.push(w);
    }
  }
  return *dist[q.index];
}

/// g_(G, D(α))(P, P) on a tree of stable components: tree Claim value on the
/// loop-free part, then the one-point-sum formula once per glued circle.
inline Rational green_polarized(const MetrizedGraph& graph, const GenusWeighting& alpha, VertexId p) {
  detail::require_exact_class(graph);
  check_weighting(graph, alpha);
  graph.check(p);

  std::vector<EdgeId> kept;
  MetrizedGraph tree = detail::strip_loops(graph, kept);
  std::vector<Rational> absorbed = alpha.values();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    absorbed[v] += Rational(loop_count(graph, VertexId{v}));
  GenusWeighting tree_alpha(absorbed);
  Rational degree = divisor_from_weighting(graph, alpha).degree();

  Rational g_pp = tree_green(tree, tree_alpha, p);
  std::vector<Rational> g_vv;  // g(v, v) on the current glued graph, for each vertex
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) g_vv.push_back(tree_green(tree, tree_alpha, VertexId{v}));

  for (const auto& e : graph.edges()) {
    if (!e.is_loop()) continue;
    auto circle = circle_green(e.length);
    // The circle is G1 with D1 = 0; the graph built so far is G2 and carries all of D.
    auto glue = [&](VertexId at, const Rational& g_at) {
      return join_green({Rational(0), degree, resistance_exact(graph, e.a, at), g_at, g_vv[e.a.index], circle.g_oo});
    };
    g_pp = glue(p, g_pp);
    std::vector<Rational> next;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) next.push_back(glue(VertexId{v}, g_vv[v]));
    g_vv = std::move(next);
  }
  return g_pp;
}

inline Rational green_polarized(const MetrizedGraph& graph, VertexId p) {
  return green_polarized(graph, genus_weighting(graph), p);
}

inline void check_deltas(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  if (g < 2) fail(ErrorKind::InvalidGenus, "genus must be at least 2, got " + std::to_string(g));
  if (deltas.size() != static_cast<std::size_t>(g / 2 + 1))
    fail(ErrorKind::ParameterOutOfRange, "expected " + std::to_string(g / 2 + 1) + " node counts for genus " +
                                             std::to_string(g));
  for (auto d : deltas)
    if (d < 0) fail(ErrorKind::ParameterOutOfRange, "node counts must be nonnegative");
}

/// Closed form of ε(G_y, ω_y) for unit-length trees of stable components.
inline Rational eps_chain(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  check_deltas(g, deltas);
  Rational gg(g);
  Rational out = (gg - Rational(1)) / (Rational(3) * gg) * Rational(deltas[0]);
  for (std::int64_t i = 1; i <= g / 2; ++i)
    out += (Rational(4 * i * (g - i)) / gg - Rational(1)) * Rational(deltas[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace adm
