#include "adm/green_exact.hpp"
#include "support/join_oracle.hpp"
#include "support/random_graphs.hpp"

#include <gtest/gtest.h>

using namespace adm;

namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

MetrizedGraph path3(const Rational& l1 = R(1), const Rational& l2 = R(1)) {
  return MetrizedGraph::build({{{"v1", 0}, {"v2", 0}, {"v3", 0}}, {{"v1", "v2", l1}, {"v2", "v3", l2}}});
}

GenusWeighting ones(std::size_t n) { return GenusWeighting(std::vector<Rational>(n, R(1))); }

}  // namespace

TEST(Segment, ClosedForms) {
  auto s = eps_segment(R(1), R(1), R(1));
  EXPECT_EQ(s.eps, R(1));
  EXPECT_EQ(s.g_pp, R(1, 4));
  EXPECT_EQ(s.g_qq, R(1, 4));
  s = eps_segment(R(1), R(2), R(1));
  EXPECT_EQ(s.eps, R(5, 3));
  EXPECT_EQ(s.g_pp, R(4, 9));
  EXPECT_EQ(s.g_qq, R(1, 9));
  s = eps_segment(R(0), R(1), R(7));
  EXPECT_EQ(s.eps, R(-7));
  EXPECT_EQ(s.g_pp, R(7));
  EXPECT_EQ(s.g_qq, R(0));
  EXPECT_THROW((void)eps_segment(R(0), R(0), R(1)), Error);
  EXPECT_THROW((void)eps_segment(R(1), R(1), R(0)), Error);
}

TEST(Circle, ScalesLinearly) {
  EXPECT_EQ(circle_green(R(1)).g_oo, R(1, 12));
  EXPECT_EQ(circle_green(R(12)).g_oo, R(1));
  EXPECT_EQ(circle_green(R(1, 3)).g_oo, R(1, 36));
  EXPECT_EQ(circle_green(R(5)).eps, R(0));
  EXPECT_THROW((void)circle_green(R(-1)), Error);
}

TEST(Join, EpsExamples) {
  EXPECT_EQ(join_eps({R(2), R(1), R(1, 4)}, {R(2), R(1), R(1, 4)}), R(10, 3));
  EXPECT_EQ(join_eps({R(0), R(3), R(5)}, {R(0), R(4), R(5)}), R(7));
  // A circle carrying no divisor reproduces the circle-attachment rule.
  for (auto [eps, d, l] : {std::tuple{R(5, 3), R(4), R(2)}, std::tuple{R(0), R(2), R(1)}, std::tuple{R(1, 7), R(3, 2), R(1, 3)}}) {
    auto c = circle_green(l);
    EXPECT_EQ(join_eps({d, eps, R(11, 13)}, {R(0), c.eps, c.g_oo}), attach_circle_eps(eps, d, l));
  }
  EXPECT_EQ(attach_circle_eps(R(0), R(2), R(1)), R(1, 6));
  EXPECT_EQ(attach_circle_eps(R(5, 3), R(4), R(2)), R(19, 9));
  EXPECT_EQ(attach_circle_eps(R(3), R(0), R(9)), R(3));
  EXPECT_THROW((void)join_eps({R(-2), R(0), R(0)}, {R(1), R(0), R(0)}), Error);
  EXPECT_THROW((void)join_eps({R(-1), R(0), R(0)}, {R(-1), R(0), R(0)}), Error);
}

TEST(Join, GreenExamples) {
  EXPECT_EQ(join_green({R(2), R(2), R(1), R(1, 4), R(1, 4), R(1, 4)}), R(5, 9));
  EXPECT_EQ(join_green({R(0), R(0), R(3), R(2), R(9), R(5)}), R(7));
  // At the joining point the value is symmetric in the two pieces.
  for (auto [d1, d2, g1, g2] : {std::tuple{R(2), R(4), R(1, 3), R(2, 5)}, std::tuple{R(0), R(3), R(1), R(7, 2)}}) {
    EXPECT_EQ(join_green({d1, d2, R(0), g2, g2, g1}), join_green({d2, d1, R(0), g1, g1, g2}));
    Rational s = d1 + d2 + R(2);
    Rational expect = ((d2 + R(2)) * s - d1 * (d2 + R(2))) * g2 / (s * s) + (d1 + R(2)) * (d1 + R(2)) / (s * s) * g1;
    EXPECT_EQ(join_green({d1, d2, R(0), g2, g2, g1}), expect);
  }
}

TEST(Tree, GreenAndEpsExamples) {
  auto seg = MetrizedGraph::build({{{"P", 0}, {"Q", 0}}, {{"P", "Q"}}});
  EXPECT_EQ(tree_green(seg, ones(2), VertexId{0}), R(1, 4));
  auto path = path3();
  EXPECT_EQ(tree_green(path, ones(3), VertexId{2}), R(5, 9));
  EXPECT_EQ(tree_green(path, ones(3), VertexId{1}), R(2, 9));
  EXPECT_EQ(tree_eps(path, ones(3)).eps, R(10, 3));
  EXPECT_EQ(tree_eps(seg, GenusWeighting({R(1), R(2)})).eps, R(5, 3));
  auto star = MetrizedGraph::build({{{"c", 0}, {"x", 0}, {"y", 0}, {"z", 0}}, {{"c", "x"}, {"c", "y"}, {"c", "z"}}});
  auto rep = tree_eps(star, GenusWeighting({R(0), R(1), R(1), R(1)}));
  EXPECT_EQ(rep.eps, R(5));
  EXPECT_EQ(rep.degree, R(4));
  EXPECT_EQ(rep.per_edge_terms, (std::vector<Rational>{R(5, 3), R(5, 3), R(5, 3)}));
  EXPECT_THROW((void)tree_eps(star, GenusWeighting(std::vector<Rational>(4))), Error);
  EXPECT_THROW((void)tree_eps(MetrizedGraph::build({{{"a", 0}}, {{"a", "a"}}}), ones(1)), Error);
}

TEST(Tree, SinglePointIsZero) {
  auto point = MetrizedGraph::build({{{"o", 0}}, {}});
  EXPECT_EQ(tree_eps(point, ones(1)).eps, R(0));
  EXPECT_EQ(tree_green(point, ones(1), VertexId{0}), R(0));
}

TEST(Tree, EpsIsContinuousAsWeightsShrink) {
  fixtures::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto [tree, alpha] = fixtures::random_weighted_tree(rng, 6, 3, fixtures::mixed_lengths());
    Rational base = tree_eps(tree, alpha).eps;
    Rational previous;
    bool first = true;
    for (int k = 1; k <= 20; ++k) {
      Rational t = R(1) / pow(R(2), k);
      std::vector<Rational> shifted;
      for (const auto& a : alpha.values()) shifted.push_back(a + t);
      Rational gap = abs(tree_eps(tree, GenusWeighting(shifted)).eps - base);
      if (!first) {
        EXPECT_LE(gap, previous);
      }
      previous = gap;
      first = false;
    }
    EXPECT_LT(previous.to_double(), 1e-4);
  }
}

TEST(Tree, GreenMatchesJoinRecursion) {
  fixtures::Rng rng(19);
  auto first_cut = [](const fixtures::SmallTree& t) {
    auto cuts = fixtures::cut_vertices(t);
    auto o = cuts.front();
    std::vector<bool> which(t.incident(o).size(), false);
    which[0] = true;
    return std::pair{o, which};
  };
  for (int trial = 0; trial < 60; ++trial) {
    auto [tree, alpha] = fixtures::random_weighted_tree(rng, 7, 4, fixtures::mixed_lengths());
    auto small = fixtures::SmallTree::from(tree, alpha);
    for (std::size_t p = 0; p < tree.vertex_count(); ++p)
      EXPECT_EQ(tree_green(tree, alpha, VertexId{p}), fixtures::green_by_join(small, p, first_cut));
  }
}

TEST(Polarized, Examples) {
  auto loop = MetrizedGraph::build({{{"v", 1}}, {{"v", "v"}}});
  EXPECT_EQ(eps_polarized(loop).eps, R(1, 6));
  auto bridge = MetrizedGraph::build({{{"a", 1}, {"b", 2}}, {{"a", "b"}}});
  EXPECT_EQ(eps_polarized(bridge).eps, R(5, 3));
  auto banana = MetrizedGraph::build({{{"a", 1}, {"b", 0}}, {{"a", "b"}, {"a", "b"}}});
  try {
    (void)eps_polarized(banana);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideExactClass);
  }
  EXPECT_THROW((void)eps_polarized(MetrizedGraph::build({{{"e", 1}}, {}})), Error);
}

TEST(Polarized, LoopsMatchExplicitCircleJoins) {
  // Genus-0 vertex with two loops: two circles of lengths 1 and 2 at one point, deg ω = 2.
  auto g = MetrizedGraph::build({{{"o", 0}}, {{"o", "o", R(1)}, {"o", "o", R(2)}}});
  auto c1 = circle_green(R(1));
  auto c2 = circle_green(R(2));
  EXPECT_EQ(eps_polarized(g).eps, attach_circle_eps(attach_circle_eps(R(0), R(2), R(1)), R(2), R(2)));
  EXPECT_EQ(eps_polarized(g).eps, R(2, 12) + R(4, 12));
  EXPECT_EQ(green_polarized(g, VertexId{0}),
            join_green({R(0), R(2), R(0), join_green({R(0), R(2), R(0), R(0), R(0), c1.g_oo}),
                        join_green({R(0), R(2), R(0), R(0), R(0), c1.g_oo}), c2.g_oo}));
}

TEST(Polarized, GreenExamples) {
  auto bridge = MetrizedGraph::build({{{"a", 1}, {"b", 1}}, {{"a", "b"}}});
  EXPECT_EQ(green_polarized(bridge, VertexId{0}), R(1, 4));
  auto loop = MetrizedGraph::build({{{"v", 1}}, {{"v", "v"}}});
  // Single point with D = 2·v, then the unit circle: (2/4)²·(1/12).
  EXPECT_EQ(green_polarized(loop, VertexId{0}), R(1, 48));
}

TEST(Chain, ClosedForm) {
  EXPECT_EQ(eps_chain(2, {1, 0}), R(1, 6));
  EXPECT_EQ(eps_chain(3, {0, 1}), R(5, 3));
  EXPECT_EQ(eps_chain(2, {0, 0}), R(0));
  EXPECT_THROW((void)eps_chain(1, {0}), Error);
  EXPECT_THROW((void)eps_chain(4, {0, 1}), Error);
  EXPECT_THROW((void)eps_chain(2, {-1, 0}), Error);
}

TEST(Resistance, SeriesAndLoops) {
  auto path = path3(R(1, 2), R(1, 3));
  EXPECT_EQ(resistance_exact(path, VertexId{0}, VertexId{2}), R(5, 6));
  EXPECT_EQ(resistance_exact(path, VertexId{1}, VertexId{1}), R(0));
  auto looped = MetrizedGraph::build(
      {{{"v1", 0}, {"v2", 1}, {"v3", 0}}, {{"v1", "v2", R(1, 2)}, {"v2", "v2", R(5)}, {"v2", "v3", R(1, 3)}}});
  EXPECT_EQ(resistance_exact(looped, VertexId{0}, VertexId{2}), R(5, 6));
}
