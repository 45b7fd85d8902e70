#pragma once

// Slow, independent reference implementations used by the tests. None of
// these call the accelerated code paths they are compared against.

#include <vector>

#include "hyperrst/forest.hpp"
#include "hyperrst/geometry.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/sampler.hpp"

namespace oracle {

using hyperrst::BallPoint;
using hyperrst::HalfPoint;
using hyperrst::NodeId;
using hyperrst::PolarPoint;

/// Hyperbolic law of cosines in long double.
long double dist_polar_ld(const PolarPoint& a, const PolarPoint& b);
long double dist_half_ld(const HalfPoint& a, const HalfPoint& b);

/// O(n^2) radial spanning tree: ties to the origin first, then lowest index.
std::vector<NodeId> rst_parents(const hyperrst::PointCloud& cloud);
/// O(n^2) directed spanning forest (nearest strictly higher point).
std::vector<NodeId> dsf_parents(const std::vector<HalfPoint>& points);
/// O(n^2) RST(h) in the half-space.
std::vector<NodeId> rst_h_parents(const std::vector<HalfPoint>& points, double h);

/// Angle at O(h) between z and the ideal point (0, 0), from the tangent of the
/// Euclidean semicircle carrying the geodesic (the half-space model is conformal).
double apex_angle_tangent(double h, const HalfPoint& z);

/// Geodesic segment intersection in the Poincare disc by intersecting the
/// carrying circles (or diameters) and testing arc membership.
bool disc_segments_cross(const BallPoint& a0, const BallPoint& a1, const BallPoint& b0, const BallPoint& b1);

/// Nodes whose trajectory passes through `child` (including it).
std::vector<NodeId> subtree_nodes(const hyperrst::RadialTree& tree, NodeId child);

/// CFD between the crossing of S(level) on the edge of `v` and the crossing
/// c, by summing origin angles along the explicit polyline of the trajectory.
double cfd_polyline(const hyperrst::RadialTree& tree, const hyperrst::LevelCrossing& c, NodeId v, double level);

/// Max of cfd_polyline over the given levels and every descendant edge of c
/// crossing them.
double mbd_on_levels(const hyperrst::RadialTree& tree, const hyperrst::LevelCrossing& c,
                     const std::vector<double>& levels);

}  // namespace oracle
