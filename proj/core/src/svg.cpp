#include "hyperrst/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace hyperrst {
namespace {

std::string f6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Canvas {
  double scale, centre;
  double sx(double x) const { return centre + scale * x; }
  double sy(double y) const { return centre - scale * y; }
};

std::string hue_color(std::size_t k) {
  const double golden = 0.6180339887498949;
  const double h = std::fmod(static_cast<double>(k) * golden, 1.0) * 360.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,70%%,42%%)", h);
  return buf;
}

}  // namespace

GeodesicArc geodesic_arc(const BallPoint& p, const BallPoint& q) {
  if (p.coords.size() != 2 || q.coords.size() != 2) throw std::invalid_argument("geodesic_arc needs disc points");
  const double px = p.coords[0], py = p.coords[1], qx = q.coords[0], qy = q.coords[1];
  const double cross = px * qy - py * qx;
  if (std::abs(cross) < 1e-9) return {};
  // c . p = (1 + |p|^2) / 2 and c . q = (1 + |q|^2) / 2.
  const double bp = 0.5 * (1.0 + px * px + py * py);
  const double bq = 0.5 * (1.0 + qx * qx + qy * qy);
  GeodesicArc a;
  a.straight = false;
  a.cx = (bp * qy - bq * py) / cross;
  a.cy = (px * bq - qx * bp) / cross;
  a.radius = std::sqrt(std::max(0.0, a.cx * a.cx + a.cy * a.cy - 1.0));
  return a;
}

std::string render_svg(const RadialTree& tree, const SvgScene& scene) {
  if (tree.d() != 1) throw std::invalid_argument("SVG rendering needs d == 1");
  if (!(scene.disc_radius_px > 0.0) || !std::isfinite(scene.disc_radius_px)) {
    throw std::invalid_argument("disc radius must be positive");
  }
  const double margin = 10.0;
  const Canvas cv{scene.disc_radius_px, scene.disc_radius_px + margin};
  const double size = 2.0 * cv.centre;

  const std::size_t n = tree.size();
  std::vector<std::size_t> component(n, 0);
  if (scene.color_components) {
    std::vector<std::size_t> rank(n, 0);
    std::size_t k = 0;
    for (NodeId c : tree.children(kRoot)) rank[static_cast<std::size_t>(c)] = k++;
    for (std::size_t i = 0; i < n; ++i) {
      NodeId v = static_cast<NodeId>(i);
      while (tree.parent(v) != kRoot) v = tree.parent(v);
      component[i] = rank[static_cast<std::size_t>(v)];
    }
  }
  const auto color = [&](std::size_t i) { return scene.color_components ? hue_color(component[i]) : std::string("#222"); };

  std::vector<BallPoint> ball(n);
  for (std::size_t i = 0; i < n; ++i) ball[i] = polar_to_ball(tree.point(static_cast<NodeId>(i)));
  const BallPoint centre{{0.0, 0.0}};

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f6(size) + "\" height=\"" + f6(size) +
       "\" viewBox=\"0 0 " + f6(size) + " " + f6(size) + "\">\n";
  s += "<circle cx=\"" + f6(cv.centre) + "\" cy=\"" + f6(cv.centre) + "\" r=\"" + f6(cv.scale) +
       "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  s += "<g fill=\"none\" stroke-width=\"0.6\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = static_cast<NodeId>(i);
    const BallPoint& a = ball[i];
    const BallPoint& b = tree.parent(id) == kRoot ? centre : ball[static_cast<std::size_t>(tree.parent(id))];
    std::string d = "M " + f6(cv.sx(a.coords[0])) + " " + f6(cv.sy(a.coords[1]));
    if (scene.edge_style == SvgScene::EdgeStyle::kStarPolyline) {
      const StarPath path = tree.edge_path(id);
      for (int k = 1; k <= 32; ++k) {
        const BallPoint q = polar_to_ball(path.eval(k / 32.0));
        d += " L " + f6(cv.sx(q.coords[0])) + " " + f6(cv.sy(q.coords[1]));
      }
    } else {
      const GeodesicArc arc = geodesic_arc(a, b);
      if (arc.straight) {
        d += " L " + f6(cv.sx(b.coords[0])) + " " + f6(cv.sy(b.coords[1]));
      } else {
        const double cr = (a.coords[0] - arc.cx) * (b.coords[1] - arc.cy) - (a.coords[1] - arc.cy) * (b.coords[0] - arc.cx);
        const double rpx = arc.radius * cv.scale;
        d += " A " + f6(rpx) + " " + f6(rpx) + " 0 0 " + (cr > 0.0 ? "1" : "0") + " " + f6(cv.sx(b.coords[0])) + " " +
             f6(cv.sy(b.coords[1]));
      }
    }
    s += "<path d=\"" + d + "\" stroke=\"" + color(i) + "\"/>\n";
  }
  s += "</g>\n<g stroke=\"none\">\n";
  s += "<circle cx=\"" + f6(cv.centre) + "\" cy=\"" + f6(cv.centre) + "\" r=\"2.500000\" fill=\"#000\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    s += "<circle cx=\"" + f6(cv.sx(ball[i].coords[0])) + "\" cy=\"" + f6(cv.sy(ball[i].coords[1])) +
         "\" r=\"1.200000\" fill=\"" + color(i) + "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace hyperrst
