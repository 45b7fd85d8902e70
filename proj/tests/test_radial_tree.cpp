#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hyperrst/radial_tree.hpp"
#include "oracles.hpp"

using namespace hyperrst;

namespace {

PointCloud cloud_of(int d, std::vector<PolarPoint> pts, double R = 10.0) {
  PointCloud c;
  c.config = {d, 1.0, R, 0};
  c.points = std::move(pts);
  sort_by_radius(c.points);
  return c;
}

PolarPoint at(double r, double angle) { return {r, Direction({std::cos(angle), std::sin(angle)})}; }

std::vector<NodeId> descendants_brute(const RadialTree& tree, const LevelCrossing& c, double r_prime) {
  std::vector<NodeId> out;
  for (NodeId v : oracle::subtree_nodes(tree, c.child)) {
    if (tree.radius(tree.parent(v)) < r_prime && r_prime <= tree.radius(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(BuildRst, MatchesBruteForce) {
  for (int d : {1, 2}) {
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      const PointCloud c = sample_ball_n({d, 1.0, 5.0, 100 + static_cast<std::uint64_t>(d)}, 500, rep);
      const RadialTree t = build_rst(c);
      EXPECT_EQ(t.parents(), oracle::rst_parents(c)) << "d=" << d << " rep=" << rep;
      EXPECT_TRUE(validate(t).ok());
    }
  }
}

TEST(BuildRst, PoissonCloudIsValid) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 3}));
  const ValidationReport rep = validate(t);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_GT(rep.max_degree, 0u);
}

TEST(BuildRst, TwoPointRule) {
  // The outer point goes to the inner one iff it is closer than the origin.
  const RadialTree near = build_rst(cloud_of(1, {at(1.0, 0.0), at(2.0, 0.1)}));
  EXPECT_EQ(near.parent(0), kRoot);
  EXPECT_EQ(near.parent(1), 0);
  const RadialTree far = build_rst(cloud_of(1, {at(1.0, 0.0), at(2.0, 2.5)}));
  EXPECT_EQ(far.parent(1), kRoot);
  EXPECT_EQ(far.children(kRoot).size(), 2u);
}

TEST(BuildRst, EmptyCloudAndRootOnly) {
  const RadialTree t = build_rst(cloud_of(1, {}));
  EXPECT_EQ(t.size(), 0u);
  EXPECT_TRUE(validate(t).ok());
  EXPECT_TRUE(level_crossings(t, 1.0).empty());
}

TEST(Trajectory, EndsAtRootWithDecreasingRadius) {
  const RadialTree t = build_rst(sample_ball({2, 1.0, 4.0, 5}));
  for (std::size_t i = 0; i < t.size(); i += 7) {
    const auto traj = trajectory(t, static_cast<NodeId>(i));
    ASSERT_EQ(traj.front(), static_cast<NodeId>(i));
    ASSERT_EQ(traj.back(), kRoot);
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) EXPECT_GT(t.radius(traj[k]), t.radius(traj[k + 1]));
  }
}

TEST(Crossings, OnePerEdgeStraddlingTheLevel) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 6}));
  for (double r : {0.5, 1.7, 3.0, 4.2}) {
    const auto cs = level_crossings(t, r);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const NodeId v = static_cast<NodeId>(i);
      expected += t.radius(t.parent(v)) < r && r <= t.radius(v);
    }
    ASSERT_EQ(cs.size(), expected);
    for (const auto& c : cs) {
      EXPECT_NEAR(c.point.r, r, 1e-12);
      EXPECT_EQ(c.level, r);
      EXPECT_NEAR(t.edge_path(c.child).eval(c.t).r, r, 1e-12);
    }
  }
  EXPECT_THROW(crossing_on_edge(t, 0, t.radius(0) + 1.0), std::domain_error);
}

TEST(Crossings, LeafVertexRadiusIsALevel) {
  const RadialTree t = build_rst(cloud_of(1, {at(1.0, 0.0), at(2.0, 0.1)}));
  const LevelCrossing c = crossing_on_edge(t, 1, 2.0);
  EXPECT_EQ(c.t, 0.0);
  EXPECT_EQ(c.point.u, t.point(1).u);
}

TEST(Ancestors, SemigroupAndMatchesTrajectory) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 7}));
  for (const auto& c : level_crossings(t, 4.0)) {
    const LevelCrossing a3 = ancestor_at_level(t, c, 3.0);
    const LevelCrossing a1 = ancestor_at_level(t, c, 1.0);
    const LevelCrossing a31 = ancestor_at_level(t, a3, 1.0);
    EXPECT_EQ(a1.child, a31.child);
    EXPECT_EQ(a1.t, a31.t);
    const auto traj = trajectory(t, c.child);
    EXPECT_NE(std::find(traj.begin(), traj.end(), a1.child), traj.end());
    EXPECT_EQ(ancestor_at_level(t, c, c.level).child, c.child);
  }
}

TEST(Descendants, FiberMatchesSubtreeEnumeration) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 8}));
  std::size_t total = 0;
  for (const auto& c : level_crossings(t, 2.0)) {
    for (double rp : {2.0, 2.6, 3.5}) {
      std::vector<NodeId> fast;
      for (const auto& dsc : descendants_at_level(t, c, rp)) {
        fast.push_back(dsc.child);
        EXPECT_EQ(ancestor_at_level(t, dsc, c.level).child, c.child);
      }
      std::sort(fast.begin(), fast.end());
      EXPECT_EQ(fast, descendants_brute(t, c, rp));
      total += fast.size();
    }
  }
  EXPECT_GT(total, 0u);
  // Fibers of distinct crossings partition the crossings above.
  const auto below = level_crossings(t, 2.0);
  std::size_t covered = 0;
  for (const auto& c : below) covered += descendants_at_level(t, c, 3.0).size();
  EXPECT_EQ(covered, level_crossings(t, 3.0).size());
}

TEST(Cfd, HandBuiltTree) {
  // Chain root <- a <- b <- c with angles 0, 0.2, 0.5 (d = 1).
  const RadialTree t = build_rst(cloud_of(1, {at(1.0, 0.0), at(1.5, 0.2), at(2.0, 0.5)}));
  ASSERT_EQ(t.parent(0), kRoot);
  ASSERT_EQ(t.parent(1), 0);
  ASSERT_EQ(t.parent(2), 1);
  const LevelCrossing top = crossing_on_edge(t, 2, 2.0);
  EXPECT_NEAR(cfd(t, 1.0, top), 0.5, 1e-12);
  EXPECT_NEAR(cfd(t, 0.5, top), 0.5, 1e-12);  // the root edge is radial
  EXPECT_NEAR(cfd(t, 1.5, top), 0.3, 1e-12);
  EXPECT_EQ(cfd(t, 2.0, top), 0.0);
  const LevelCrossing mid = crossing_on_edge(t, 2, 1.75);
  EXPECT_NEAR(cfd(t, 1.0, mid) + angle_between(mid.point.u, top.point.u), 0.5, 1e-12);
  // Backward deviation from the crossing at 1 sees the whole chain.
  const LevelCrossing low = crossing_on_edge(t, 0, 1.0);
  EXPECT_NEAR(mbd(t, low, 2.0), 0.5, 1e-12);
  EXPECT_NEAR(mbd(t, low, 1.5), 0.2, 1e-12);
  EXPECT_EQ(mbd(t, low, 1.0), 0.0);
}

TEST(Cfd, MatchesPolylineOracle) {
  const RadialTree t = build_rst(sample_ball({2, 1.5, 5.0, 9}));
  for (const auto& c : level_crossings(t, 3.5)) {
    for (double r : {1.2, 2.0, 3.0}) {
      const LevelCrossing a = ancestor_at_level(t, c, r);
      // Sum of origin angles along the polyline c -> vertices -> a.
      double sum = 0.0;
      PolarPoint prev = c.point;
      for (NodeId v = c.child; v != a.child; v = t.parent(v)) {
        const PolarPoint& nxt = t.point(t.parent(v));
        sum += angle_between(prev.u, nxt.u);
        prev = nxt;
      }
      sum += angle_between(prev.u, a.point.u);
      EXPECT_NEAR(cfd(t, r, c), sum, 1e-12);
    }
  }
}

TEST(Mbd, MonotoneAndMatchesGridOracle) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 10}));
  for (const auto& c : level_crossings(t, 2.0)) {
    double prev = 0.0;
    for (double rp : {2.0, 2.5, 3.0, 4.0, 5.0}) {
      const double m = mbd(t, c, rp);
      EXPECT_GE(m, prev);
      prev = m;
    }
    const double fast = mbd(t, c, 3.0);
    std::vector<double> levels;
    for (int k = 0; k <= 200; ++k) levels.push_back(2.0 + k / 200.0);
    const double grid = oracle::mbd_on_levels(t, c, levels);
    EXPECT_LE(grid, fast + 1e-9);
    for (NodeId v : oracle::subtree_nodes(t, c.child)) {
      if (t.radius(v) > c.level && t.radius(v) <= 3.0) levels.push_back(t.radius(v));
    }
    EXPECT_NEAR(oracle::mbd_on_levels(t, c, levels), fast, 1e-9);
  }
}

TEST(Mbd, DeviationRecordsAreConsistent) {
  const RadialTree t = build_rst(sample_ball({1, 2.0, 5.0, 11}));
  const auto recs = deviation_records(t, 2.0, 3.0);
  EXPECT_EQ(recs.size(), level_crossings(t, 2.0).size());
  for (const auto& rec : recs) {
    EXPECT_GE(rec.mbd, rec.cfd);
    EXPECT_GE(rec.cfd, 0.0);
    double best = 0.0;
    for (const auto& dsc : descendants_at_level(t, rec.crossing, 3.0)) best = std::max(best, cfd(t, 2.0, dsc));
    EXPECT_NEAR(rec.cfd, best, 1e-12);
  }
}

TEST(Validate, ReportsCorruptedParents) {
  const PointCloud c = sample_ball({1, 2.0, 4.0, 12});
  ASSERT_GT(c.size(), 10u);
  std::vector<NodeId> parent = build_rst(c).parents();
  // Point to an outer point: breaks radial monotonicity.
  parent[0] = static_cast<NodeId>(c.size() - 1);
  EXPECT_FALSE(validate(RadialTree(c, parent)).ok());
  parent = build_rst(c).parents();
  parent[3] = static_cast<NodeId>(c.size() + 5);
  EXPECT_FALSE(validate(RadialTree(c, parent)).ok());
  // A legal-looking but non-nearest parent leaves a point in B+.
  parent = build_rst(c).parents();
  const std::size_t last = c.size() - 1;
  parent[last] = parent[last] == kRoot ? 0 : kRoot;
  EXPECT_FALSE(validate(RadialTree(c, parent)).ok());
}

TEST(Planarity, RandomTreesHaveNoCrossings) {
  for (std::uint64_t rep = 0; rep < 10; ++rep) {
    EXPECT_EQ(planarity_check(build_rst(sample_ball({1, 2.0, 5.0, 13}, rep))), 0u);
  }
}

TEST(Planarity, NegativeControl) {
  // Swap two parents across each other: edges 0-3 and 1-2 cross.
  const PointCloud c = cloud_of(1, {at(1.0, 0.0), at(1.0, 0.3), at(2.0, -0.1), at(2.0, 0.4)});
  std::vector<NodeId> parent{kRoot, kRoot, 1, 0};
  EXPECT_GE(planarity_check(RadialTree(c, parent)), 1u);
  EXPECT_EQ(planarity_check(build_rst(c)), 0u);
  const RadialTree t3 = build_rst(sample_ball({2, 1.0, 3.0, 1}));
  EXPECT_THROW(planarity_check(t3), std::domain_error);
}

TEST(Planarity, SegmentTestMatchesCircleOracle) {
  Engine eng(21);
  std::uniform_real_distribution<double> ur(0.05, 3.0);
  int crossings = 0;
  for (int k = 0; k < 5000; ++k) {
    BallPoint p[4];
    for (auto& q : p) q = polar_to_ball({ur(eng), sample_direction(1, eng)});
    const bool fast = geodesic_segments_cross(p[0], p[1], p[2], p[3]);
    EXPECT_EQ(fast, oracle::disc_segments_cross(p[0], p[1], p[2], p[3])) << k;
    crossings += fast;
  }
  EXPECT_GT(crossings, 100);
  const BallPoint a = polar_to_ball(at(1.0, 0.0)), b = polar_to_ball(at(1.0, 1.0)), c = polar_to_ball(at(2.0, 2.0));
  EXPECT_FALSE(geodesic_segments_cross(a, b, b, c));
}
