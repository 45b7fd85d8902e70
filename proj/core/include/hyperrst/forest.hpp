#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrst/geometry.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/sampler.hpp"

namespace hyperrst {

/// Parent links over a half-space point set. For the directed forest
/// kNoParent marks a frontier point (nothing higher in the window); for the
/// radial tree RST(h) it marks the origin O(h).
struct HalfForest {
  static constexpr NodeId kNoParent = -1;

  std::vector<HalfPoint> points;
  std::vector<NodeId> parent;

  std::size_t size() const { return points.size(); }
};

/// Directed spanning forest towards the ideal point at infinity: the parent
/// of z is its nearest neighbour among points of strictly larger ordinate.
HalfForest build_dsf(const std::vector<HalfPoint>& points);

/// Radial spanning tree of the same points rooted at O(h) = (0, e^h).
HalfForest build_rst_h(const std::vector<HalfPoint>& points, double h);

/// Vois / Cyl regions of the half-space used to compare RST(h) with the DSF.
struct RegionSpec {
  enum class Kind { kVois, kVoisPrime, kVoisSecond, kCyl, kCylPrime, kCylSecond };

  Kind kind = Kind::kCyl;
  double A = 1.0;
  double a = 0.0;
  double h = 0.0;

  void validate() const;
};

std::string to_string(RegionSpec::Kind kind);

bool region_contains(const RegionSpec& spec, const HalfPoint& z);

/// Violations of the empty-region property of a DSF: a sampled point of
/// larger ordinate strictly closer than the parent.
std::vector<std::string> validate_dsf(const HalfForest& forest);

struct CouplingResult {
  double fraction = 1.0;          // agreeing / in_region, 1 when the region is empty
  std::size_t in_region = 0;
  std::size_t agreeing = 0;
  std::size_t margin_violations = 0;  // parent balls leaving the sampling window
  bool valid() const { return margin_violations == 0; }
};

/// Parent queries for single points of a half-space point set, with the same
/// candidate sets and tie-breaking as build_dsf and build_rst_h. Points are
/// kept sorted by their first abscissa and each query scans outwards until the
/// abscissa gap exceeds what the current best distance allows, so a query
/// costs roughly the number of points in a thin slab around the target.
class HalfNeighborIndex {
 public:
  explicit HalfNeighborIndex(std::vector<HalfPoint> points);

  const std::vector<HalfPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  /// Nearest point of strictly larger ordinate, or kNoParent.
  NodeId dsf_parent(std::size_t i) const;
  /// Nearest point strictly closer to O(h), or kNoParent for O(h) itself.
  NodeId rst_h_parent(std::size_t i, double h) const;

 private:
  template <class Accept>
  NodeId nearest(std::size_t i, double init_key, Accept accept) const;

  std::vector<HalfPoint> points_;
  std::vector<std::size_t> order_;  // indices sorted by x[0]
  std::vector<std::size_t> rank_;   // position of each index in order_
  double y_max_ = 0.0;
};

/// Fraction of points of the cloud inside K whose RST(h) parent equals their
/// DSF parent. Audits that every parent search ball of a point of K stays
/// inside the window; violations are counted rather than silently ignored.
CouplingResult coupling_fraction(const std::vector<HalfPoint>& points, const HalfWindow& window,
                                 const RegionSpec& K, double h);

/// Same, reusing an index over the points.
CouplingResult coupling_fraction(const HalfNeighborIndex& index, const HalfWindow& window, const RegionSpec& K,
                                 double h);

}  // namespace hyperrst
