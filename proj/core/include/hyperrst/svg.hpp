#pragma once

#include <string>

#include "hyperrst/geometry.hpp"
#include "hyperrst/radial_tree.hpp"

namespace hyperrst {

struct SvgScene {
  enum class EdgeStyle { kGeodesicArc, kStarPolyline };

  double disc_radius_px = 400.0;
  EdgeStyle edge_style = EdgeStyle::kGeodesicArc;
  bool color_components = true;  // one hue per subtree hanging from the root
};

/// Geodesic of the Poincare disc through two points: a diameter segment when
/// the points are collinear with the centre, otherwise an arc of the circle
/// orthogonal to the unit circle (|center|^2 = radius^2 + 1).
struct GeodesicArc {
  bool straight = true;
  double cx = 0.0, cy = 0.0, radius = 0.0;
};

/// Requires two-dimensional ball points.
GeodesicArc geodesic_arc(const BallPoint& p, const BallPoint& q);

/// SVG document of a tree with d == 1 in the Poincare disc. Throws
/// std::invalid_argument for other dimensions.
std::string render_svg(const RadialTree& tree, const SvgScene& scene);

}  // namespace hyperrst
