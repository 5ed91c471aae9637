#pragma once

// Floating-point oracle for the admissible pair (μ, g) on an arbitrary
// connected metrized graph.
//
// The graph is discretized into a resistor network (grid spacing at most h).
// Conductance is 1/segment length, so vertex-to-vertex resistances are exact
// on every mesh. The measure is built as μ = (δ_D + 2 μ_can) / (deg D + 2)
// with the canonical measure
//
//     μ_can = Σ_x (1 − v(x)/2) δ_x + Σ_e dx / (l(e) + R_e),
//
// R_e being the resistance between the ends of e once e is removed (0 for a
// self-loop, infinite for a bridge). The edge densities are lumped onto grid
// nodes. g then comes from the resistance kernel
//
//     g(x, y) = ½ (∫ r(x, ·) dμ + ∫ r(y, ·) dμ − r(x, y) − ∬ r dμ dμ).
//
// None of this is trusted: every solve measures how far the result is from
// the five defining properties and reports the residuals.
//
// Laplacian sign convention: (Δu)(y) = Σ_n c(y, n) (u(y) − u(n)), so the
// defining equation reads Δ_y g(x, ·) = δ_x − μ.

#include "adm/divisor.hpp"
#include "adm/graph.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace adm {

/// A point of a metrized graph: a vertex, or a point at distance `offset`
/// from the first endpoint of an edge.
struct GraphPoint {
  std::optional<EdgeId> edge;
  VertexId vertex;
  Rational offset;

  static GraphPoint at_vertex(VertexId v) { return {std::nullopt, v, Rational(0)}; }
  static GraphPoint on_edge(EdgeId e, Rational t) { return {e, VertexId{}, std::move(t)}; }
};

struct GridNode {
  std::optional<VertexId> vertex;  // set for original vertices
  std::optional<EdgeId> edge;      // set for edge-interior nodes
  Rational offset;                 // distance from the edge's first endpoint
};

struct GridSegment {
  std::size_t from = 0;
  std::size_t to = 0;
  EdgeId edge;
  Rational length;
};

/// Resistor-network realization of a metrized graph. Original vertices keep
/// their indices as grid nodes 0..V−1; each edge of length l is cut into
/// ⌈l/h⌉ equal segments.
class DiscretizedGraph {
 public:
  static DiscretizedGraph build(const MetrizedGraph& graph, const Rational& mesh) {
    if (mesh.sign() <= 0) fail(ErrorKind::ParameterOutOfRange, "mesh must be positive");
    DiscretizedGraph grid(graph, mesh);
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
      grid.nodes_.push_back({VertexId{v}, std::nullopt, Rational(0)});

    for (std::size_t i = 0; i < graph.edge_count(); ++i) {
      const Edge& e = graph.edges()[i];
      Rational ratio = e.length / mesh;
      BigInt pieces = ratio.numerator() / ratio.denominator();
      if (Rational(pieces, BigInt(1)) != ratio) pieces += 1;
      auto m = pieces.convert_to<std::size_t>();
      Rational step = e.length / Rational(static_cast<std::int64_t>(m));

      std::vector<std::size_t> chain{e.a.index};
      for (std::size_t k = 1; k < m; ++k) {
        chain.push_back(grid.nodes_.size());
        grid.nodes_.push_back({std::nullopt, EdgeId{i}, step * Rational(static_cast<std::int64_t>(k))});
      }
      chain.push_back(e.b.index);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        grid.segments_.push_back({chain[k], chain[k + 1], EdgeId{i}, step});
      grid.chains_.push_back(std::move(chain));
    }
    return grid;
  }

  const MetrizedGraph& graph() const { return graph_; }
  const Rational& mesh() const { return mesh_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<GridNode>& nodes() const { return nodes_; }
  const std::vector<GridSegment>& segments() const { return segments_; }

  /// Grid nodes along edge e, from its first endpoint to its second.
  const std::vector<std::size_t>& chain(EdgeId e) const { return chains_.at(graph_.check(e).index); }

  std::size_t node_of(VertexId v) const { return graph_.check(v).index; }

  std::size_t node_of(const GraphPoint& p) const {
    if (!p.edge) return node_of(p.vertex);
    const auto& nodes = chain(*p.edge);
    if (p.offset.is_zero()) return nodes.front();
    if (p.offset == graph_.edge(*p.edge).length) return nodes.back();
    for (std::size_t k = 1; k + 1 < nodes.size(); ++k)
      if (nodes_[nodes[k]].offset == p.offset) return nodes[k];
    fail(ErrorKind::ParameterOutOfRange, "point at offset " + p.offset.str() + " is not a grid node");
  }

  Rational total_length() const {
    Rational sum;
    for (const auto& s : segments_) sum += s.length;
    return sum;
  }

  /// Weighted Laplacian, conductance 1/segment length.
  Eigen::SparseMatrix<double> laplacian() const {
    std::vector<Eigen::Triplet<double>> entries;
    for (const auto& s : segments_) {
      if (s.from == s.to) continue;
      double c = 1.0 / s.length.to_double();
      entries.emplace_back(s.from, s.from, c);
      entries.emplace_back(s.to, s.to, c);
      entries.emplace_back(s.from, s.to, -c);
      entries.emplace_back(s.to, s.from, -c);
    }
    Eigen::SparseMatrix<double> lap(node_count(), node_count());
    lap.setFromTriplets(entries.begin(), entries.end());
    return lap;
  }

 private:
  DiscretizedGraph(MetrizedGraph graph, Rational mesh) : graph_(std::move(graph)), mesh_(std::move(mesh)) {}

  MetrizedGraph graph_;
  Rational mesh_;
  std::vector<GridNode> nodes_;
  std::vector<GridSegment> segments_;
  std::vector<std::vector<std::size_t>> chains_;
};

namespace detail {

/// Small dense resistor network, grounded at node 0.
class DenseNetwork {
 public:
  explicit DenseNetwork(std::size_t n) : lap_(Eigen::MatrixXd::Zero(n, n)) {}

  void add(std::size_t i, std::size_t j, double resistance) {
    if (i == j) return;
    double c = 1.0 / resistance;
    lap_(i, i) += c;
    lap_(j, j) += c;
    lap_(i, j) -= c;
    lap_(j, i) -= c;
  }

  double resistance(std::size_t p, std::size_t q) const {
    if (p == q) return 0.0;
    auto n = lap_.rows();
    Eigen::MatrixXd grounded = lap_.bottomRightCorner(n - 1, n - 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
    if (p > 0) rhs(p - 1) += 1.0;
    if (q > 0) rhs(q - 1) -= 1.0;
    Eigen::LDLT<Eigen::MatrixXd> solver(grounded);
    if (solver.info() != Eigen::Success || !solver.isPositive())
      fail(ErrorKind::SingularSolve, "dense network Laplacian is singular");
    Eigen::VectorXd phi = solver.solve(rhs);
    double up = p > 0 ? phi(p - 1) : 0.0;
    double uq = q > 0 ? phi(q - 1) : 0.0;
    return up - uq;
  }

 private:
  Eigen::MatrixXd lap_;
};

inline DenseNetwork vertex_network(const MetrizedGraph& graph, std::optional<EdgeId> skip, std::size_t extra = 0) {
  DenseNetwork net(graph.vertex_count() + extra);
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    if (skip && skip->index == i) continue;
    const auto& e = graph.edges()[i];
    net.add(e.a.index, e.b.index, e.length.to_double());
  }
  return net;
}

/// Sparse grounded Laplacian solver (node 0 held at potential 0).
class GroundedSolver {
 public:
  explicit GroundedSolver(const DiscretizedGraph& grid) : n_(grid.node_count()) {
    if (n_ < 2) return;
    Eigen::SparseMatrix<double> lap = grid.laplacian();
    grounded_ = lap.bottomRightCorner(n_ - 1, n_ - 1);
    solver_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(grounded_);
    if (solver_->info() != Eigen::Success)
      fail(ErrorKind::SingularSolve, "grid Laplacian factorization failed");
  }

  /// Grounded inverse applied to b (entry 0 of b is ignored; result has 0 there).
  Eigen::VectorXd apply(const Eigen::VectorXd& b) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    if (n_ < 2) return out;
    Eigen::VectorXd rest = solver_->solve(b.tail(static_cast<Eigen::Index>(n_ - 1)));
    if (solver_->info() != Eigen::Success) fail(ErrorKind::SingularSolve, "grid solve failed");
    out.tail(static_cast<Eigen::Index>(n_ - 1)) = rest;
    return out;
  }

  Eigen::VectorXd column(std::size_t node) const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    e(static_cast<Eigen::Index>(node)) = 1.0;
    return apply(e);
  }

 private:
  std::size_t n_;
  Eigen::SparseMatrix<double> grounded_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> solver_;
};

/// r(y, node 0) for every grid node y. Vertices come from the vertex-level
/// network; an interior node is inserted into that network as an extra node
/// splitting its edge.
inline Eigen::VectorXd resistance_to_ground(const DiscretizedGraph& grid) {
  const auto& graph = grid.graph();
  std::size_t v_count = graph.vertex_count();
  Eigen::VectorXd out(static_cast<Eigen::Index>(grid.node_count()));
  auto base = vertex_network(graph, std::nullopt);
  for (std::size_t v = 0; v < v_count; ++v) out(static_cast<Eigen::Index>(v)) = base.resistance(v, 0);

  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const auto& e = graph.edges()[i];
    double l = e.length.to_double();
    for (auto node : grid.chain(EdgeId{i})) {
      if (!grid.nodes()[node].edge) continue;
      double t = grid.nodes()[node].offset.to_double();
      auto net = vertex_network(graph, EdgeId{i}, 1);
      net.add(e.a.index, v_count, t);
      net.add(v_count, e.b.index, l - t);
      out(static_cast<Eigen::Index>(node)) = net.resistance(v_count, 0);
    }
  }
  return out;
}

}  // namespace detail

/// Resistance between the endpoints of e in G with e removed; nullopt for a
/// bridge (infinite), 0 for a self-loop.
inline std::optional<double> complementary_resistance(const MetrizedGraph& graph, EdgeId e) {
  const auto& edge = graph.edge(e);
  if (edge.is_loop()) return 0.0;
  auto labels = component_labels(graph.vertex_count(), graph.edges(), [e](EdgeId other) { return other == e; });
  if (labels[edge.a.index] != labels[edge.b.index]) return std::nullopt;
  return detail::vertex_network(graph, e).resistance(edge.a.index, edge.b.index);
}

/// Effective resistance between two points, computed on the grid network.
inline double resistance_numeric(const MetrizedGraph& graph, const GraphPoint& p, const GraphPoint& q,
                                  const Rational& mesh) {
  // Interior points become genus-0 vertices first, so both ends are grid nodes.
  MetrizedGraph work = graph;
  auto place = [&](const GraphPoint& point) -> VertexId {
    if (!point.edge) return work.check(point.vertex);
    const auto& e = work.edge(*point.edge);
    if (point.offset.is_zero()) return e.a;
    if (point.offset == e.length) return e.b;
    work = subdivide_edge(work, *point.edge, point.offset);
    return VertexId{work.vertex_count() - 1};
  };
  VertexId vp = place(p);
  GraphPoint q2 = q;
  if (p.edge && q.edge && *p.edge == *q.edge && p.offset.sign() > 0 && p.offset < graph.edge(*p.edge).length &&
      q.offset > p.offset) {
    // q now lies on the second half of the split edge.
    q2 = GraphPoint::on_edge(EdgeId{work.edge_count() - 1}, q.offset - p.offset);
  }
  VertexId vq = place(q2);
  if (vp == vq) return 0.0;

  auto grid = DiscretizedGraph::build(work, mesh);
  detail::GroundedSolver solver(grid);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  b(static_cast<Eigen::Index>(vp.index)) += 1.0;
  b(static_cast<Eigen::Index>(vq.index)) -= 1.0;
  Eigen::VectorXd phi = solver.apply(b);
  return phi(static_cast<Eigen::Index>(vp.index)) - phi(static_cast<Eigen::Index>(vq.index));
}

/// Canonical measure lumped onto grid nodes.
inline Eigen::VectorXd canonical_measure(const DiscretizedGraph& grid) {
  const auto& graph = grid.graph();
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    mass(static_cast<Eigen::Index>(v)) = 1.0 - 0.5 * static_cast<double>(valence(graph, VertexId{v}));

  std::vector<std::optional<double>> complement;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) complement.push_back(complementary_resistance(graph, EdgeId{i}));

  for (const auto& s : grid.segments()) {
    const auto& r_e = complement[s.edge.index];
    if (!r_e) continue;  // bridge: no edge density
    double l = graph.edge(s.edge).length.to_double();
    double m = s.length.to_double() / (l + *r_e);
    mass(static_cast<Eigen::Index>(s.from)) += 0.5 * m;
    mass(static_cast<Eigen::Index>(s.to)) += 0.5 * m;
  }
  return mass;
}

inline Eigen::VectorXd canonical_measure(const MetrizedGraph& graph, const Rational& mesh) {
  return canonical_measure(DiscretizedGraph::build(graph, mesh));
}

/// Maximum violation of each defining property, keyed (a)..(e).
struct Residuals {
  double mass = 0;         // (a) |∫μ − 1|
  double symmetry = 0;     // (b) max |g(x,y) − g(y,x)| on sampled pairs
  double laplacian = 0;    // (c) max |Δ_y g(x,·) − (δ_x − μ)| on sampled x
  double mean_zero = 0;    // (d) max |∫ g(x,·) dμ| on sampled x
  double constancy = 0;    // (e) max |g(D,y) + g(y,y) − c| over the grid

  double max_continuum() const { return std::max({laplacian, mean_zero, constancy}); }

  std::map<std::string, double> by_name() const {
    return {{"a", mass}, {"b", symmetry}, {"c", laplacian}, {"d", mean_zero}, {"e", constancy}};
  }
};

/// Lazily evaluated g(x, ·). The full matrix would be quadratic in the grid
/// size, so rows are produced on demand from the factorized Laplacian.
class GreenKernel {
 public:
  GreenKernel() = default;
  GreenKernel(detail::GroundedSolver solver, Eigen::VectorXd potential, Eigen::VectorXd diag, double offset)
      : solver_(std::move(solver)), potential_(std::move(potential)), diag_(std::move(diag)), offset_(offset) {}

  std::size_t size() const { return static_cast<std::size_t>(diag_.size()); }

  /// g(x, y) for all grid nodes y.
  Eigen::VectorXd row(std::size_t x) const {
    // With ∫μ = 1 the ground-resistance terms cancel off the diagonal:
    // g(x, y) = M_xy − w_x − w_y + const, M the grounded inverse and w = Mμ.
    Eigen::VectorXd col = solver_->column(x);
    auto xi = static_cast<Eigen::Index>(x);
    Eigen::VectorXd out = col.array() - potential_(xi) - potential_.array() + offset_;
    return out;
  }

  double at(std::size_t x, std::size_t y) const { return row(x)(static_cast<Eigen::Index>(y)); }

  const Eigen::VectorXd& diagonal() const { return diag_; }

 private:
  std::optional<detail::GroundedSolver> solver_;
  Eigen::VectorXd potential_;
  Eigen::VectorXd diag_;
  double offset_ = 0;
};

struct AdmissibleSolution {
  DiscretizedGraph grid;
  Eigen::VectorXd mu;             // point masses on grid nodes
  Eigen::VectorXd green_divisor;  // g(D, y)
  GreenKernel green;              // g(x, y); green.diagonal() is g(y, y)
  double c = 0;
  double g_dd = 0;
  double eps = 0;
  Residuals residuals;

  double green_at(VertexId v) const { return green.diagonal()(static_cast<Eigen::Index>(grid.node_of(v))); }
};

namespace detail {

inline std::vector<std::size_t> sample_nodes(const DiscretizedGraph& grid) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < grid.graph().vertex_count(); ++v) out.push_back(v);
  std::size_t interior = grid.node_count() - grid.graph().vertex_count();
  constexpr std::size_t kInteriorSamples = 4;
  for (std::size_t k = 1; k <= kInteriorSamples && interior > 0; ++k) {
    std::size_t node = grid.graph().vertex_count() + (interior * k) / (kInteriorSamples + 1);
    if (node < grid.node_count() && std::find(out.begin(), out.end(), node) == out.end()) out.push_back(node);
  }
  return out;
}

}  // namespace detail

/// Builds (μ, g, c, ε) for (G, D) on a grid of spacing h and measures the
/// defining properties. With a tolerance, a residual (c)–(e) above it is an
/// error rather than a result.
inline AdmissibleSolution solve_admissible(const MetrizedGraph& graph, const GraphDivisor& divisor,
                                           const Rational& mesh, std::optional<double> tolerance = std::nullopt) {
  auto polarized = PolarizedGraph::make(graph, divisor);
  double degree = polarized.divisor.degree().to_double();
  auto grid = DiscretizedGraph::build(graph, mesh);
  auto n = static_cast<Eigen::Index>(grid.node_count());

  Eigen::VectorXd d_grid = Eigen::VectorXd::Zero(n);
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) d_grid(static_cast<Eigen::Index>(v)) = divisor[VertexId{v}].to_double();
  Eigen::VectorXd mu = (d_grid + 2.0 * canonical_measure(grid)) / (degree + 2.0);
  double mass = mu.sum();

  detail::GroundedSolver solver(grid);
  Eigen::VectorXd w = solver.apply(mu);                      // Mμ
  Eigen::VectorXd ground = detail::resistance_to_ground(grid);  // M_yy
  // f(y) = ∫ r(y, ·) dμ, K = ∬ r dμ dμ.
  Eigen::VectorXd f = mass * ground.array() + mu.dot(ground) - 2.0 * w.array();
  double k = mu.dot(f);
  Eigen::VectorXd diag = f.array() - 0.5 * k;
  // g(x, y) = M_xy − w_x − w_y + ∫ M_zz dμ(z) − K/2.
  double offset = mu.dot(ground) - 0.5 * k;
  GreenKernel kernel(solver, w, diag, offset);

  Eigen::VectorXd g_d = Eigen::VectorXd::Zero(n);
  std::map<std::size_t, Eigen::VectorXd> rows;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    double coeff = d_grid(static_cast<Eigen::Index>(v));
    if (coeff == 0.0) continue;
    rows[v] = kernel.row(v);
    g_d += coeff * rows[v];
  }

  Eigen::VectorXd h = g_d + diag;
  double c = mass != 0.0 ? mu.dot(h) / mass : 0.0;
  double g_dd = d_grid.dot(g_d);

  AdmissibleSolution out{std::move(grid), mu, g_d, kernel, c, g_dd, 2.0 * degree * c - g_dd, {}};

  Residuals& res = out.residuals;
  res.mass = std::abs(mass - 1.0);
  res.constancy = (h.array() - c).abs().maxCoeff();
  Eigen::SparseMatrix<double> lap = out.grid.laplacian();
  auto samples = detail::sample_nodes(out.grid);
  for (auto x : samples)
    if (!rows.count(x)) rows[x] = kernel.row(x);
  for (auto x : samples) {
    const auto& row = rows[x];
    Eigen::VectorXd source = -mu;
    source(static_cast<Eigen::Index>(x)) += 1.0;
    res.laplacian = std::max(res.laplacian, (lap * row - source).cwiseAbs().maxCoeff());
    res.mean_zero = std::max(res.mean_zero, std::abs(row.dot(mu)));
    res.symmetry = std::max(res.symmetry, std::abs(row(static_cast<Eigen::Index>(x)) - diag(static_cast<Eigen::Index>(x))));
    for (auto y : samples)
      res.symmetry = std::max(res.symmetry, std::abs(row(static_cast<Eigen::Index>(y)) - rows[y](static_cast<Eigen::Index>(x))));
  }

  if (tolerance && (res.max_continuum() > *tolerance || res.mass > *tolerance))
    fail(ErrorKind::ResidualGate, "property residual " + std::to_string(std::max(res.max_continuum(), res.mass)) +
                                      " exceeds tolerance " + std::to_string(*tolerance));
  return out;
}

/// ε(G, D(α)) from the oracle.
inline double eps_numeric(const MetrizedGraph& graph, const GenusWeighting& alpha, const Rational& mesh) {
  return solve_admissible(graph, divisor_from_weighting(graph, alpha), mesh).eps;
}

}  // namespace adm
