#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperrst/geometry.hpp"
#include "hyperrst/sampler.hpp"

namespace hyperrst {

using NodeId = std::int32_t;
inline constexpr NodeId kRoot = -1;

/// Point cloud plus parent links towards the origin. Node i is cloud point i;
/// the origin is the distinguished node kRoot.
class RadialTree {
 public:
  RadialTree() = default;
  /// No structural checks: validate() reports what is wrong with a tree.
  RadialTree(PointCloud cloud, std::vector<NodeId> parent);

  const PointCloud& cloud() const { return cloud_; }
  std::size_t size() const { return cloud_.points.size(); }
  int d() const { return cloud_.config.d; }

  const PolarPoint& point(NodeId i) const { return i == kRoot ? origin_ : cloud_.points[static_cast<std::size_t>(i)]; }
  double radius(NodeId i) const { return i == kRoot ? 0.0 : cloud_.points[static_cast<std::size_t>(i)].r; }
  NodeId parent(NodeId i) const { return parent_[static_cast<std::size_t>(i)]; }
  const std::vector<NodeId>& parents() const { return parent_; }
  /// Children of i; children(kRoot) are the root's daughters.
  std::span<const NodeId> children(NodeId i) const;

  /// Star path [z, A(z)]* of the edge leaving `child`.
  StarPath edge_path(NodeId child) const;
  /// Angle at the origin between child and parent; 0 for edges into the root.
  double edge_angle(NodeId child) const;

 private:
  PointCloud cloud_;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> child_offset_;  // CSR, slot 0 is the root
  std::vector<NodeId> child_list_;
  PolarPoint origin_;
};

/// A point of RST intersected with S(r): the edge [child, A(child)[* is the
/// carrier and t the star-path parameter. Levels satisfy r(A(child)) < level <= r(child).
struct LevelCrossing {
  NodeId child = kRoot;
  double t = 0.0;
  double level = 0.0;
  PolarPoint point;
};

/// Deviation statistics attached to one crossing z at level_r:
/// mbd = MBD_{level_r}^{level_r_prime}(z) and cfd = the largest CFD_{level_r}^{level_r_prime}
/// over the descendants of z at level_r_prime (0 when there are none).
struct DeviationRecord {
  double level_r = 0.0;
  double level_r_prime = 0.0;
  LevelCrossing crossing;
  double cfd = 0.0;
  double mbd = 0.0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t max_degree = 0;
  bool ok() const { return violations.empty(); }
};

/// Parent of each point is its nearest neighbour among {origin} and the
/// points of strictly smaller radius. Ties go to the origin, then to the
/// lowest index.
RadialTree build_rst(const PointCloud& cloud);

/// [i, A(i), A^2(i), ..., kRoot].
std::vector<NodeId> trajectory(const RadialTree& tree, NodeId i);

/// Crossing of the edge leaving `child` with S(r).
LevelCrossing crossing_on_edge(const RadialTree& tree, NodeId child, double r);

/// All crossings of S(r), ordered by child index.
std::vector<LevelCrossing> level_crossings(const RadialTree& tree, double r);

/// Crossing of S(r) on the trajectory through c. Requires 0 < r <= c.level.
LevelCrossing ancestor_at_level(const RadialTree& tree, const LevelCrossing& c, double r);

/// Crossings of S(r_prime) whose trajectory passes through c. Requires r_prime >= c.level.
std::vector<LevelCrossing> descendants_at_level(const RadialTree& tree, const LevelCrossing& c, double r_prime);

/// Cumulative forward angular deviation of c between levels r and c.level.
double cfd(const RadialTree& tree, double r, const LevelCrossing& c);

/// Maximal backward angular deviation of c between levels c.level and r_prime.
double mbd(const RadialTree& tree, const LevelCrossing& c, double r_prime);

/// One record per crossing of S(r), with deviations measured up to r_prime.
std::vector<DeviationRecord> deviation_records(const RadialTree& tree, double r, double r_prime);

/// Structural audit: parent range, radial monotonicity, acyclicity and
/// connectivity to the root, emptiness of B+(z, d(z, A(z))), degrees.
ValidationReport validate(const RadialTree& tree);

/// Number of pairs of geodesic edges [z, A(z)] that meet in the open disc
/// (shared endpoints excluded). Requires d == 1.
std::size_t planarity_check(const RadialTree& tree);

/// Whether two geodesic segments of the Poincare disc cross. Endpoints given
/// as ball points; touching at a shared endpoint is not a crossing.
bool geodesic_segments_cross(const BallPoint& a0, const BallPoint& a1, const BallPoint& b0, const BallPoint& b1);

}  // namespace hyperrst
