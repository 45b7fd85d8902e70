#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "hyperrst/radial_tree.hpp"

namespace hyperrst {
namespace {

using Vec2 = std::array<double, 2>;

// Poincare -> Klein: geodesics become straight chords.
Vec2 to_klein(const BallPoint& b) {
  const double n2 = b.coords[0] * b.coords[0] + b.coords[1] * b.coords[1];
  const double f = 2.0 / (1.0 + n2);
  return {f * b.coords[0], f * b.coords[1]};
}

Vec2 klein_from_polar(const PolarPoint& z) {
  const double k = std::tanh(z.r);
  return {k * z.u[0], k * z.u[1]};
}

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

bool same_point(const Vec2& a, const Vec2& b) { return a[0] == b[0] && a[1] == b[1]; }

bool chords_cross(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  if (same_point(a0, b0) || same_point(a0, b1) || same_point(a1, b0) || same_point(a1, b1)) return false;
  const double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  const double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment(b0, b1, a1)) return true;
  return false;
}

struct Span {
  double lo, hi;
  NodeId edge;
};

}  // namespace

bool geodesic_segments_cross(const BallPoint& a0, const BallPoint& a1, const BallPoint& b0, const BallPoint& b1) {
  if (a0.coords.size() != 2 || a1.coords.size() != 2 || b0.coords.size() != 2 || b1.coords.size() != 2) {
    throw std::invalid_argument("geodesic_segments_cross works in the disc (d = 1)");
  }
  return chords_cross(to_klein(a0), to_klein(a1), to_klein(b0), to_klein(b1));
}

std::size_t planarity_check(const RadialTree& tree) {
  if (tree.d() != 1) throw std::domain_error("planarity_check requires d = 1");
  const auto n = tree.size();
  std::vector<Vec2> k(n);
  std::vector<double> ang(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = klein_from_polar(tree.point(static_cast<NodeId>(i)));
    ang[i] = std::atan2(tree.point(static_cast<NodeId>(i)).u[1], tree.point(static_cast<NodeId>(i)).u[0]);
  }
  const Vec2 origin{0.0, 0.0};
  auto end_of = [&](NodeId v) { return v == kRoot ? origin : k[static_cast<std::size_t>(v)]; };

  // A chord lies in the sector spanned by its endpoints' directions, so only
  // edges with overlapping angular spans can cross.
  std::vector<Span> spans;
  spans.reserve(n + n / 8);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<NodeId>(i);
    const NodeId p = tree.parent(id);
    if (p == kRoot) {
      spans.push_back({ang[i], ang[i], id});
      continue;
    }
    double lo = std::min(ang[i], ang[static_cast<std::size_t>(p)]);
    double hi = std::max(ang[i], ang[static_cast<std::size_t>(p)]);
    if (hi - lo <= std::numbers::pi) {
      spans.push_back({lo, hi, id});
    } else {
      spans.push_back({hi, std::numbers::pi, id});
      spans.push_back({-std::numbers::pi, lo, id});
    }
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.lo < b.lo; });

  std::set<std::pair<NodeId, NodeId>> crossing;
  for (std::size_t a = 0; a < spans.size(); ++a) {
    const NodeId ea = spans[a].edge;
    for (std::size_t b = a + 1; b < spans.size() && spans[b].lo <= spans[a].hi; ++b) {
      const NodeId eb = spans[b].edge;
      if (ea == eb) continue;
      const NodeId pa = tree.parent(ea), pb = tree.parent(eb);
      if (pa == pb || pa == eb || pb == ea) continue;  // adjacent edges share a vertex
      if (chords_cross(end_of(ea), end_of(pa), end_of(eb), end_of(pb))) {
        crossing.insert(std::minmax(ea, eb));
      }
    }
  }
  return crossing.size();
}

}  // namespace hyperrst
