#include "adm/fibration.hpp"
#include "support/random_graphs.hpp"

#include <gtest/gtest.h>

using namespace adm;

namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

Fiber loop_fiber(const std::string& name) { return {name, MetrizedGraph::build({{{"v", 1}}, {{"v", "v"}}})}; }

/// Fibers realizing a δ vector with unit lengths: δ_0 loops on one vertex,
/// and one bridge per separating node of each type.
FibrationData fibration_for(std::int64_t g, const std::vector<std::int64_t>& deltas) {
  FibrationData data{g, {}, std::nullopt, std::nullopt};
  int k = 0;
  for (std::int64_t n = 0; n < deltas[0]; ++n)
    data.fibers.push_back({"y" + std::to_string(k++), MetrizedGraph::build({{{"v", g - 1}}, {{"v", "v"}}})});
  for (std::int64_t i = 1; i <= g / 2; ++i)
    for (std::int64_t n = 0; n < deltas[static_cast<std::size_t>(i)]; ++n)
      data.fibers.push_back({"y" + std::to_string(k++), MetrizedGraph::build({{{"a", i}, {"b", g - i}}, {{"a", "b"}}})});
  return data;
}

}  // namespace

TEST(Fibration, AggregatesAndChecksGenus) {
  FibrationData data{2, {loop_fiber("a"), loop_fiber("b")}, std::nullopt, std::nullopt};
  EXPECT_EQ(aggregate_deltas(data), (std::vector<std::int64_t>{2, 0}));
  data.fibers.push_back({"bad", MetrizedGraph::build({{{"v", 3}}, {}})});
  try {
    (void)aggregate_deltas(data);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GenusMismatch);
  }
}

TEST(Fibration, AggregationIsAdditive) {
  fixtures::Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    auto g = fixtures::uniform(rng, 2, 8);
    FibrationData a{g, {}, std::nullopt, std::nullopt}, b{g, {}, std::nullopt, std::nullopt};
    for (int k = 0; k < 3; ++k) a.fibers.push_back({"a" + std::to_string(k), fixtures::random_stable_fiber(rng, g, {R(1)})});
    for (int k = 0; k < 2; ++k) b.fibers.push_back({"b" + std::to_string(k), fixtures::random_stable_fiber(rng, g, {R(1)})});
    FibrationData both = a;
    both.fibers.insert(both.fibers.end(), b.fibers.begin(), b.fibers.end());
    auto da = aggregate_deltas(a), db = aggregate_deltas(b), dab = aggregate_deltas(both);
    for (std::size_t j = 0; j < dab.size(); ++j) EXPECT_EQ(dab[j], da[j] + db[j]);
  }
}

TEST(Slope, BoundaryIsTight) {
  for (std::int64_t g = 2; g <= 12; ++g) {
    std::vector<std::int64_t> deltas(static_cast<std::size_t>(g / 2 + 1), 1);
    auto deg = slope_rhs(g, deltas) / R(8 * g + 4);
    auto s = slope_check(g, deg, deltas);
    EXPECT_TRUE(s.holds);
    EXPECT_EQ(s.lhs, s.rhs);
    EXPECT_FALSE(slope_check(g, deg - R(1, 1000), deltas).holds);
  }
}

TEST(Noether, SlopeImpliesLowerBound) {
  fixtures::Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    auto g = fixtures::uniform(rng, 2, 12);
    std::vector<std::int64_t> deltas;
    for (std::int64_t k = 0; k <= g / 2; ++k) deltas.push_back(fixtures::uniform(rng, 0, 5));
    Rational deg(fixtures::uniform(rng, 0, 60), fixtures::uniform(rng, 1, 6));
    auto omega = noether_omega_sq(deg, R(delta_total(deltas)));
    if (slope_check(g, deg, deltas).holds) {
      EXPECT_GE(omega, omega_sq_lower(g, deltas));
    }
  }
  EXPECT_EQ(noether_omega_sq(R(2), R(3)), R(21));
}

TEST(Bogomolov, Examples) {
  auto r = bogomolov_radius(2, {1, 0});
  EXPECT_EQ(r.radius_sq, R(1, 30));
  EXPECT_NEAR(r.radius, 0.182574185835055, 1e-15);
  EXPECT_EQ(bogomolov_radius(3, {0, 1}).radius_sq, R(32, 21));
  try {
    (void)bogomolov_radius(2, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SmoothFamily);
  }
  EXPECT_EQ(radius_from_admissible(2, R(1, 30)).radius_sq, R(1, 30));
  EXPECT_EQ(radius_from_admissible(3, R(16, 21)).radius_sq, R(32, 21));
  try {
    (void)radius_from_admissible(2, R(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonpositiveAdmissible);
  }
}

TEST(Bogomolov, ReportFollowsTheChain) {
  auto data = fibration_for(3, {1, 2});
  auto rep = bound_report(data);
  EXPECT_EQ(rep.deltas, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(rep.eps_total, eps_chain(3, {1, 2}));
  EXPECT_EQ(rep.radius.radius_sq, bogomolov_radius(3, {1, 2}).radius_sq);
  EXPECT_TRUE(rep.unit_lengths);
  EXPECT_FALSE(rep.slope);

  // A supplied ω² replaces the lower bound.
  data.omega_sq = R(10);
  data.deg_f_omega = R(1);
  auto with_omega = bound_report(data);
  EXPECT_EQ(with_omega.adm_lower, R(10) - rep.eps_total);
  EXPECT_EQ(with_omega.radius.radius_sq, R(2) * (R(10) - rep.eps_total));
  ASSERT_TRUE(with_omega.slope);
  EXPECT_TRUE(with_omega.slope->holds);  // 28 ≥ 3 + 16
  EXPECT_EQ(with_omega.slope->rhs, R(19));
  EXPECT_EQ(*with_omega.omega_sq_noether, R(12 - 3));
}

TEST(Bogomolov, ReportErrors) {
  FibrationData smooth{2, {}, std::nullopt, std::nullopt};
  EXPECT_THROW((void)bound_report(smooth), Error);
  FibrationData outside{2, {{"b", MetrizedGraph::build({{{"p", 0}, {"q", 0}}, {{"p", "q"}, {"p", "q"}, {"p", "q"}}})}}, std::nullopt, std::nullopt};
  try {
    (void)bound_report(outside);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutsideExactClass);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
}
