#pragma once

#include "adm/errors.hpp"
#include "adm/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace adm {

struct VertexId {
  std::size_t index = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::size_t index = 0;
  auto operator<=>(const EdgeId&) const = default;
};

// Unvalidated description of a graph, as produced by the document parser or
// by hand in tests.
struct VertexSpec {
  std::string name;
  std::int64_t genus = 0;
};

struct EdgeSpec {
  std::string a;
  std::string b;
  Rational length{1};
};

struct GraphSpec {
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
};

struct Vertex {
  std::string name;
  int genus = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  VertexId a;
  VertexId b;
  Rational length;

  bool is_loop() const { return a == b; }
  VertexId other(VertexId v) const { return v == a ? b : a; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Dual graph of a semistable fiber: genus-labelled vertices joined by edges
/// of positive rational length. Self-loops are allowed. Always connected.
/// Immutable once built; ids are positions in input order.
class MetrizedGraph {
 public:
  static MetrizedGraph build(const GraphSpec& spec);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Vertex& vertex(VertexId v) const { return vertices_.at(check(v).index); }
  const Edge& edge(EdgeId e) const { return edges_.at(check(e).index); }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i].name == name) return VertexId{i};
    return std::nullopt;
  }

  VertexId vertex_id(const std::string& name) const {
    if (auto v = find_vertex(name)) return *v;
    fail(ErrorKind::UnknownVertex, "unknown vertex '" + name + "'");
  }

  VertexId check(VertexId v) const {
    if (v.index >= vertices_.size())
      fail(ErrorKind::UnknownVertex, "vertex index " + std::to_string(v.index) + " out of range");
    return v;
  }

  EdgeId check(EdgeId e) const {
    if (e.index >= edges_.size())
      fail(ErrorKind::UnknownEdge, "edge index " + std::to_string(e.index) + " out of range");
    return e;
  }

  GraphSpec to_spec() const {
    GraphSpec spec;
    for (const auto& v : vertices_) spec.vertices.push_back({v.name, v.genus});
    for (const auto& e : edges_)
      spec.edges.push_back({vertices_[e.a.index].name, vertices_[e.b.index].name, e.length});
    return spec;
  }

  friend bool operator==(const MetrizedGraph&, const MetrizedGraph&) = default;

 private:
  MetrizedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Component label (smallest vertex index of the component) for every vertex,
/// ignoring the edges for which `skip` returns true.
template <typename SkipEdge>
std::vector<std::size_t> component_labels(std::size_t vertex_count, const std::vector<Edge>& edges,
                                          SkipEdge skip) {
  detail::DisjointSets sets(vertex_count);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!skip(EdgeId{i})) sets.unite(edges[i].a.index, edges[i].b.index);
  std::vector<std::size_t> labels(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) labels[v] = sets.find(v);
  return labels;
}

inline MetrizedGraph MetrizedGraph::build(const GraphSpec& spec) {
  if (spec.vertices.empty()) fail(ErrorKind::EmptyGraph, "graph needs at least one vertex");

  std::vector<Vertex> vertices;
  vertices.reserve(spec.vertices.size());
  for (const auto& v : spec.vertices) {
    if (v.genus < 0) fail(ErrorKind::InvalidGenus, "vertex '" + v.name + "' has negative genus");
    for (const auto& seen : vertices)
      if (seen.name == v.name) fail(ErrorKind::DuplicateVertex, "vertex '" + v.name + "' declared twice");
    vertices.push_back({v.name, static_cast<int>(v.genus)});
  }

  auto lookup = [&](const std::string& name) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].name == name) return VertexId{i};
    fail(ErrorKind::UnknownVertex, "edge references undeclared vertex '" + name + "'");
  };

  std::vector<Edge> edges;
  edges.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    Edge edge{lookup(e.a), lookup(e.b), e.length};
    if (edge.length.sign() <= 0)
      fail(ErrorKind::NonpositiveLength,
           "edge " + e.a + "-" + e.b + " has nonpositive length " + e.length.str());
    edges.push_back(std::move(edge));
  }

  auto labels = component_labels(vertices.size(), edges, [](EdgeId) { return false; });
  for (auto label : labels)
    if (label != 0) fail(ErrorKind::DisconnectedGraph, "graph is not connected");

  return MetrizedGraph(std::move(vertices), std::move(edges));
}

inline MetrizedGraph build_graph(const GraphSpec& spec) { return MetrizedGraph::build(spec); }

inline std::int64_t first_betti(const MetrizedGraph& graph) {
  return static_cast<std::int64_t>(graph.edge_count()) - static_cast<std::int64_t>(graph.vertex_count()) + 1;
}

inline std::int64_t total_genus(const MetrizedGraph& graph) {
  std::int64_t sum = 0;
  for (const auto& v : graph.vertices()) sum += v.genus;
  return sum + first_betti(graph);
}

/// Number of edge-ends at v; a self-loop counts twice.
inline std::int64_t valence(const MetrizedGraph& graph, VertexId v) {
  graph.check(v);
  std::int64_t count = 0;
  for (const auto& e : graph.edges()) {
    if (e.a == v) ++count;
    if (e.b == v) ++count;
  }
  return count;
}

inline std::int64_t loop_count(const MetrizedGraph& graph, VertexId v) {
  graph.check(v);
  return std::count_if(graph.edges().begin(), graph.edges().end(),
                       [v](const Edge& e) { return e.is_loop() && e.a == v; });
}

/// Type of the node represented by edge `e`: 0 if removing it keeps the fiber
/// connected, otherwise the smaller arithmetic genus of the two pieces.
inline int classify_node(const MetrizedGraph& graph, EdgeId e) {
  const Edge& edge = graph.edge(e);
  if (edge.is_loop()) return 0;
  auto labels = component_labels(graph.vertex_count(), graph.edges(),
                                  [e](EdgeId other) { return other == e; });
  std::size_t side_a = labels[edge.a.index];
  if (labels[edge.b.index] == side_a) return 0;

  // Arithmetic genus of the a-side; the b-side follows from the total.
  std::int64_t genus_sum = 0;
  std::int64_t vertex_count = 0;
  std::int64_t edge_count = 0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (labels[v] != side_a) continue;
    genus_sum += graph.vertices()[v].genus;
    ++vertex_count;
  }
  for (std::size_t i = 0; i < graph.edge_count(); ++i)
    if (i != e.index && labels[graph.edges()[i].a.index] == side_a) ++edge_count;
  std::int64_t genus_a = genus_sum + edge_count - vertex_count + 1;
  std::int64_t genus_b = total_genus(graph) - genus_a;
  return static_cast<int>(std::min(genus_a, genus_b));
}

/// Counts δ_0..δ_{⌊g/2⌋} of the nodes (edges) of a genus g ≥ 2 fiber graph.
inline std::vector<std::int64_t> node_type_counts(const MetrizedGraph& graph) {
  auto g = total_genus(graph);
  if (g < 2) fail(ErrorKind::InvalidGenus, "node types need total genus >= 2, got " + std::to_string(g));
  std::vector<std::int64_t> counts(static_cast<std::size_t>(g / 2 + 1), 0);
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    int type = classify_node(graph, EdgeId{i});
    if (type < 0 || type > g / 2)
      throw std::logic_error("node type " + std::to_string(type) + " outside [0, g/2]");
    ++counts[static_cast<std::size_t>(type)];
  }
  return counts;
}

/// True iff the graph is a tree once self-loops are removed.
inline bool is_tree_of_stable_components(const MetrizedGraph& graph) {
  auto non_loops = std::count_if(graph.edges().begin(), graph.edges().end(),
                                 [](const Edge& e) { return !e.is_loop(); });
  // Connectivity is a class invariant, so counting edges is enough.
  return static_cast<std::size_t>(non_loops) + 1 == graph.vertex_count();
}

inline bool is_tree(const MetrizedGraph& graph) { return graph.edge_count() + 1 == graph.vertex_count(); }

/// Splits edge `e` at distance t from its first endpoint by a new genus-0
/// vertex. The first half keeps id e; the second half is appended.
inline MetrizedGraph subdivide_edge(const MetrizedGraph& graph, EdgeId e, const Rational& t) {
  const Edge& edge = graph.edge(e);
  if (t.sign() <= 0 || t >= edge.length)
    fail(ErrorKind::ParameterOutOfRange,
         "split point " + t.str() + " not inside (0, " + edge.length.str() + ")");

  GraphSpec spec = graph.to_spec();
  std::string name = "s" + std::to_string(graph.vertex_count());
  while (graph.find_vertex(name)) name += "'";
  spec.vertices.push_back({name, 0});
  EdgeSpec second{name, spec.edges[e.index].b, edge.length - t};
  spec.edges[e.index].b = name;
  spec.edges[e.index].length = t;
  spec.edges.push_back(second);
  return MetrizedGraph::build(spec);
}

}  // namespace adm
