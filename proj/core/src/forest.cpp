#include "hyperrst/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hyperrst {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// cosh(d) - 1 in the half-space.
double half_key(const HalfPoint& a, const HalfPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double diff = a.x[i] - b.x[i];
    s += diff * diff;
  }
  const double dy = a.y - b.y;
  return (s + dy * dy) / (2.0 * a.y * b.y);
}

// Lower bound of cosh(d) - 1 from the ordinates alone.
double vertical_key(double y, double y2) {
  const double dy = y2 - y;
  return dy * dy / (2.0 * y * y2);
}

bool better(double s, NodeId id, double best, NodeId best_id) {
  return s < best || (s == best && best_id != HalfForest::kNoParent && id < best_id);
}

}  // namespace

HalfForest build_dsf(const std::vector<HalfPoint>& points) {
  const auto n = points.size();
  HalfForest f{points, std::vector<NodeId>(n, HalfForest::kNoParent)};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a].y < points[b].y; });
  for (std::size_t k = 0; k < n; ++k) {
    const HalfPoint& z = points[order[k]];
    double best = kInf;
    NodeId best_id = HalfForest::kNoParent;
    for (std::size_t j = k + 1; j < n; ++j) {
      const HalfPoint& w = points[order[j]];
      if (!(w.y > z.y)) continue;
      // Distance is at least |log(y'/y)|, increasing along the scan.
      if (vertical_key(z.y, w.y) > best) break;
      const double s = half_key(z, w);
      const auto id = static_cast<NodeId>(order[j]);
      if (better(s, id, best, best_id)) {
        best = s;
        best_id = id;
      }
    }
    f.parent[order[k]] = best_id;
  }
  return f;
}

HalfForest build_rst_h(const std::vector<HalfPoint>& points, double h) {
  if (h < 0.0) throw std::domain_error("build_rst_h needs h >= 0");
  const auto n = points.size();
  HalfForest f{points, std::vector<NodeId>(n, HalfForest::kNoParent)};
  if (n == 0) return f;
  const HalfPoint origin = apex_point(points.front().x.size(), h);
  std::vector<double> key(n), rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    key[i] = half_key(points[i], origin);
    rho[i] = acosh1p(key[i]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    double best = key[i];  // O(h) itself
    NodeId best_id = HalfForest::kNoParent;
    double reach = rho[i];
    std::size_t j = k;
    while (j > 0 && key[order[j - 1]] == key[i]) --j;
    while (j-- > 0) {
      const std::size_t c = order[j];
      // Triangle inequality: d(z_i, z_c) >= rho_i - rho_c.
      if (rho[i] - rho[c] > reach * (1.0 + 1e-9)) break;
      const double s = half_key(points[i], points[c]);
      const auto id = static_cast<NodeId>(c);
      if (better(s, id, best, best_id)) {
        best = s;
        best_id = id;
        reach = acosh1p(best);
      }
    }
    f.parent[i] = best_id;
  }
  return f;
}

// --- regions -----------------------------------------------------------------

void RegionSpec::validate() const {
  if (!(A > 0.0)) throw std::invalid_argument("region scale A must be > 0");
  if (a < 0.0) throw std::invalid_argument("region shift a must be >= 0");
  if (h < 0.0) throw std::invalid_argument("region height h must be >= 0");
}

std::string to_string(RegionSpec::Kind kind) {
  switch (kind) {
    case RegionSpec::Kind::kVois: return "Vois";
    case RegionSpec::Kind::kVoisPrime: return "Vois'";
    case RegionSpec::Kind::kVoisSecond: return "Vois''";
    case RegionSpec::Kind::kCyl: return "Cyl";
    case RegionSpec::Kind::kCylPrime: return "Cyl'";
    case RegionSpec::Kind::kCylSecond: return "Cyl''";
  }
  return "?";
}

bool region_contains(const RegionSpec& spec, const HalfPoint& z) {
  spec.validate();
  double xn2 = 0.0;
  for (double c : z.x) xn2 += c * c;
  const double xn = std::sqrt(xn2);
  const auto in_cone = [&](double aperture) { return apex_angle(spec.h, z) <= aperture; };
  const auto dist_o = [&] { return dist_half(apex_point(z.x.size(), spec.h), z); };
  switch (spec.kind) {
    case RegionSpec::Kind::kVois:
      return in_cone(spec.A * std::exp(-spec.h)) && dist_o() >= spec.h;
    case RegionSpec::Kind::kVoisPrime: {
      if (!in_cone(spec.A * std::exp(-spec.h))) return false;
      const double d = dist_o();
      return d >= spec.h && d < spec.h + spec.a;
    }
    case RegionSpec::Kind::kVoisSecond:
      return in_cone(spec.A * std::exp(-spec.h - spec.a)) && dist_o() >= spec.h + spec.a;
    case RegionSpec::Kind::kCyl:
      return xn < spec.A && z.y > 0.0 && z.y <= 1.5;
    case RegionSpec::Kind::kCylPrime:
      return xn < spec.A && z.y >= 0.5 * std::exp(-spec.a) && z.y <= 1.5;
    case RegionSpec::Kind::kCylSecond:
      return xn < spec.A * std::exp(-spec.a) && z.y > 0.0 && z.y <= 1.5 * std::exp(-spec.a);
  }
  return false;
}

// --- audits ------------------------------------------------------------------

std::vector<std::string> validate_dsf(const HalfForest& forest) {
  std::vector<std::string> out;
  const auto n = forest.size();
  if (forest.parent.size() != n) return {"parent array size mismatch"};
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId p = forest.parent[i];
    const HalfPoint& z = forest.points[i];
    if (p == HalfForest::kNoParent) {
      for (std::size_t j = 0; j < n; ++j) {
        if (forest.points[j].y > z.y) {
          out.push_back("point " + std::to_string(i) + ": frontier but a higher point exists");
          break;
        }
      }
      continue;
    }
    if (p < 0 || static_cast<std::size_t>(p) >= n) {
      out.push_back("point " + std::to_string(i) + ": parent index out of range");
      continue;
    }
    if (!(forest.points[static_cast<std::size_t>(p)].y > z.y)) {
      out.push_back("point " + std::to_string(i) + ": parent ordinate not larger");
    }
    const double rho = half_key(z, forest.points[static_cast<std::size_t>(p)]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == static_cast<std::size_t>(p) || !(forest.points[j].y > z.y)) continue;
      if (half_key(z, forest.points[j]) < rho) {
        out.push_back("point " + std::to_string(i) + ": closer higher point " + std::to_string(j));
        break;
      }
    }
  }
  return out;
}

// --- point queries -----------------------------------------------------------

HalfNeighborIndex::HalfNeighborIndex(std::vector<HalfPoint> points) : points_(std::move(points)) {
  const auto n = points_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return points_[a].x[0] < points_[b].x[0]; });
  rank_.resize(n);
  for (std::size_t k = 0; k < n; ++k) rank_[order_[k]] = k;
  for (const auto& p : points_) y_max_ = std::max(y_max_, p.y);
}

template <class Accept>
NodeId HalfNeighborIndex::nearest(std::size_t i, double init_key, Accept accept) const {
  const HalfPoint& z = points_[i];
  double best = init_key;
  NodeId best_id = HalfForest::kNoParent;
  // |dx_0|^2 <= 2 y y' s with y' <= min(y_max, y e^d) for any w at key s.
  const auto gap_sq = [&] {
    if (!std::isfinite(best)) return kInf;
    const double grow = 1.0 + best + std::sqrt(best * (best + 2.0));
    return 2.0 * z.y * std::min(y_max_, z.y * grow) * best * (1.0 + 1e-9);
  };
  double limit = gap_sq();
  const std::size_t p = rank_[i];
  std::size_t left = p, right = p + 1;  // next candidates are order_[left - 1] and order_[right]
  const double x0 = z.x[0];
  while (left > 0 || right < order_.size()) {
    const double dl = left > 0 ? x0 - points_[order_[left - 1]].x[0] : kInf;
    const double dr = right < order_.size() ? points_[order_[right]].x[0] - x0 : kInf;
    const bool take_left = dl <= dr;
    const double gap = take_left ? dl : dr;
    if (gap * gap > limit) break;
    const std::size_t j = take_left ? order_[--left] : order_[right++];
    if (!accept(j)) continue;
    const double s = half_key(z, points_[j]);
    const auto id = static_cast<NodeId>(j);
    if (better(s, id, best, best_id)) {
      best = s;
      best_id = id;
      limit = gap_sq();
    }
  }
  return best_id;
}

NodeId HalfNeighborIndex::dsf_parent(std::size_t i) const {
  const double y = points_[i].y;
  return nearest(i, kInf, [&](std::size_t j) { return points_[j].y > y; });
}

NodeId HalfNeighborIndex::rst_h_parent(std::size_t i, double h) const {
  if (h < 0.0) throw std::domain_error("rst_h_parent needs h >= 0");
  const HalfPoint origin = apex_point(points_[i].x.size(), h);
  const double own = half_key(points_[i], origin);
  return nearest(i, own, [&](std::size_t j) { return half_key(points_[j], origin) < own; });
}

CouplingResult coupling_fraction(const HalfNeighborIndex& index, const HalfWindow& window, const RegionSpec& K,
                                 double h) {
  K.validate();
  window.validate();
  CouplingResult res;
  const auto& points = index.points();
  if (points.empty()) return res;
  const HalfPoint origin = apex_point(points.front().x.size(), h);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const HalfPoint& z = points[i];
    if (!region_contains(K, z)) continue;
    ++res.in_region;
    const NodeId pd = index.dsf_parent(i), pr = index.rst_h_parent(i, h);
    const double rd = pd == HalfForest::kNoParent ? kInf : dist_half(z, points[static_cast<std::size_t>(pd)]);
    const double rr = dist_half(z, pr == HalfForest::kNoParent ? origin : points[static_cast<std::size_t>(pr)]);
    if (!(distance_to_window_boundary(z, window) > std::max(rd, rr))) ++res.margin_violations;
    if (pd != HalfForest::kNoParent && pd == pr) ++res.agreeing;
  }
  res.fraction = res.in_region == 0 ? 1.0 : static_cast<double>(res.agreeing) / static_cast<double>(res.in_region);
  return res;
}

CouplingResult coupling_fraction(const std::vector<HalfPoint>& points, const HalfWindow& window, const RegionSpec& K,
                                 double h) {
  return coupling_fraction(HalfNeighborIndex(points), window, K, h);
}

}  // namespace hyperrst
