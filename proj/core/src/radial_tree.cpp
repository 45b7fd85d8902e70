#include "hyperrst/radial_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hyperrst {
namespace {

// Flat copy of the cloud laid out for the nearest-neighbour scans.
struct FlatCloud {
  std::size_t dim = 0;
  std::vector<std::size_t> order;  // indices sorted by radius
  std::vector<double> r, sh, u;    // in `order` position

  explicit FlatCloud(const PointCloud& cloud) {
    const auto n = cloud.points.size();
    dim = n ? cloud.points.front().dim() : 0;
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cloud.points[a].r < cloud.points[b].r; });
    r.resize(n);
    sh.resize(n);
    u.resize(n * dim);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = cloud.points[order[k]];
      r[k] = p.r;
      sh[k] = std::sinh(p.r);
      std::copy(p.u.components().begin(), p.u.components().end(), u.begin() + static_cast<std::ptrdiff_t>(k * dim));
    }
  }

  double angular_sq(std::size_t a, std::size_t b) const {
    const double* pa = &u[a * dim];
    const double* pb = &u[b * dim];
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = pa[c] - pb[c];
      s += diff * diff;
    }
    return s;
  }
};

double half_sinh_sq(double delta) {
  const double s = std::sinh(0.5 * delta);
  return 2.0 * s * s;
}

// Largest radial gap compatible with cosh(d) - 1 <= s, padded against rounding.
double delta_bound(double s) { return 2.0 * std::asinh(std::sqrt(0.5 * s)) * (1.0 + 1e-9) + 1e-300; }

std::string describe(NodeId i) {
  std::ostringstream os;
  os << "node " << i;
  return os.str();
}

}  // namespace

// --- RadialTree --------------------------------------------------------------

RadialTree::RadialTree(PointCloud cloud, std::vector<NodeId> parent)
    : cloud_(std::move(cloud)), parent_(std::move(parent)) {
  if (parent_.size() != cloud_.points.size()) throw std::invalid_argument("parent array size mismatch");
  origin_ = PolarPoint::origin(static_cast<std::size_t>(cloud_.config.d) + 1);
  const auto n = parent_.size();
  std::vector<std::size_t> count(n + 1, 0);
  for (NodeId p : parent_) {
    if (p >= kRoot && p < static_cast<NodeId>(n)) ++count[static_cast<std::size_t>(p + 1)];
  }
  child_offset_.assign(n + 2, 0);
  for (std::size_t k = 0; k <= n; ++k) child_offset_[k + 1] = child_offset_[k] + count[k];
  child_list_.resize(child_offset_.back());
  std::vector<std::size_t> fill(child_offset_.begin(), child_offset_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId p = parent_[i];
    if (p >= kRoot && p < static_cast<NodeId>(n)) child_list_[fill[static_cast<std::size_t>(p + 1)]++] = static_cast<NodeId>(i);
  }
}

std::span<const NodeId> RadialTree::children(NodeId i) const {
  const auto slot = static_cast<std::size_t>(i + 1);
  return {child_list_.data() + child_offset_[slot], child_offset_[slot + 1] - child_offset_[slot]};
}

StarPath RadialTree::edge_path(NodeId child) const { return StarPath(point(child), point(parent(child))); }

double RadialTree::edge_angle(NodeId child) const {
  const NodeId p = parent(child);
  if (p == kRoot) return 0.0;
  return origin_angle(point(child), point(p));
}

// --- construction ------------------------------------------------------------

RadialTree build_rst(const PointCloud& cloud) {
  const FlatCloud flat(cloud);
  const auto n = flat.r.size();
  std::vector<NodeId> parent(n, kRoot);
  for (std::size_t k = 0; k < n; ++k) {
    const double rk = flat.r[k];
    double best = half_sinh_sq(rk);  // the origin: cosh(r) - 1
    NodeId best_id = kRoot;
    // Candidates have strictly smaller radius; scan outward in |r - r'|,
    // which bounds the distance from below. The cutoff is slightly loose so
    // that exact ties are still visited.
    double cutoff = delta_bound(best);
    std::size_t j = k;
    while (j > 0 && flat.r[j - 1] == rk) --j;
    while (j-- > 0) {
      const double delta = rk - flat.r[j];
      if (delta > cutoff) break;
      const double ang = 0.5 * flat.angular_sq(k, j) * flat.sh[k] * flat.sh[j];
      if (ang > best) continue;
      const double s = half_sinh_sq(delta) + ang;
      const auto id = static_cast<NodeId>(flat.order[j]);
      if (s < best || (s == best && best_id != kRoot && id < best_id)) {
        best = s;
        best_id = id;
        cutoff = delta_bound(best);
      }
    }
    parent[flat.order[k]] = best_id;
  }
  return RadialTree(cloud, std::move(parent));
}

// --- trajectories and levels -------------------------------------------------

std::vector<NodeId> trajectory(const RadialTree& tree, NodeId i) {
  if (i != kRoot && (i < 0 || static_cast<std::size_t>(i) >= tree.size())) throw std::out_of_range("node index");
  std::vector<NodeId> path{i};
  while (i != kRoot) {
    i = tree.parent(i);
    path.push_back(i);
    if (path.size() > tree.size() + 1) throw std::logic_error("parent links contain a cycle");
  }
  return path;
}

LevelCrossing crossing_on_edge(const RadialTree& tree, NodeId child, double r) {
  const StarPath path = tree.edge_path(child);
  LevelCrossing c;
  c.child = child;
  c.level = r;
  c.t = path.sphere_crossing(r);
  c.point = path.eval(c.t);
  c.point.r = r;
  return c;
}

std::vector<LevelCrossing> level_crossings(const RadialTree& tree, double r) {
  if (!(r > 0.0)) throw std::domain_error("level must be positive");
  std::vector<LevelCrossing> out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    if (tree.radius(tree.parent(id)) < r && r <= tree.radius(id)) out.push_back(crossing_on_edge(tree, id, r));
  }
  return out;
}

LevelCrossing ancestor_at_level(const RadialTree& tree, const LevelCrossing& c, double r) {
  if (!(r > 0.0)) throw std::domain_error("level must be positive");
  if (r > c.level) throw std::domain_error("ancestor level above the crossing level");
  if (r == c.level) return c;
  NodeId v = c.child;
  while (tree.radius(tree.parent(v)) >= r) v = tree.parent(v);
  return crossing_on_edge(tree, v, r);
}

std::vector<LevelCrossing> descendants_at_level(const RadialTree& tree, const LevelCrossing& c, double r_prime) {
  if (r_prime < c.level) throw std::domain_error("descendant level below the crossing level");
  if (r_prime == c.level) return {c};
  std::vector<LevelCrossing> out;
  if (tree.radius(c.child) >= r_prime) {
    out.push_back(crossing_on_edge(tree, c.child, r_prime));
    return out;
  }
  std::vector<NodeId> stack{c.child};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId x : tree.children(v)) {
      if (tree.radius(x) >= r_prime) out.push_back(crossing_on_edge(tree, x, r_prime));
      else stack.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const LevelCrossing& a, const LevelCrossing& b) { return a.child < b.child; });
  return out;
}

// --- deviations --------------------------------------------------------------

double cfd(const RadialTree& tree, double r, const LevelCrossing& c) {
  if (r > c.level) throw std::domain_error("cfd needs r <= r'");
  const LevelCrossing anc = ancestor_at_level(tree, c, r);
  if (anc.child == c.child) return origin_angle(c.point, anc.point);
  NodeId v = tree.parent(c.child);
  double sum = origin_angle(c.point, tree.point(v));
  while (v != anc.child) {
    sum += tree.edge_angle(v);
    v = tree.parent(v);
  }
  return sum + origin_angle(tree.point(anc.child), anc.point);
}

namespace {

// Walks the descendant subtree of c up to r_prime. The CFD along a single
// edge is monotone in the parameter, so its supremum over the edge is reached
// at the child vertex or at the r_prime cut. Returns {sup over all, max at the r_prime cut}.
std::pair<double, double> backward_sweep(const RadialTree& tree, const LevelCrossing& c, double r_prime) {
  if (r_prime < c.level) throw std::domain_error("mbd needs r <= r'");
  if (r_prime == c.level) return {0.0, 0.0};
  const NodeId w = c.child;
  if (tree.radius(w) >= r_prime) {
    const double v = origin_angle(crossing_on_edge(tree, w, r_prime).point, c.point);
    return {v, v};
  }
  double best = 0.0, at_cut = 0.0;
  std::vector<std::pair<NodeId, double>> stack{{w, origin_angle(tree.point(w), c.point)}};
  while (!stack.empty()) {
    const auto [v, acc] = stack.back();
    stack.pop_back();
    best = std::max(best, acc);
    for (NodeId x : tree.children(v)) {
      if (tree.radius(x) < r_prime) {
        stack.emplace_back(x, acc + tree.edge_angle(x));
      } else {
        const double val = acc + origin_angle(crossing_on_edge(tree, x, r_prime).point, tree.point(v));
        best = std::max(best, val);
        at_cut = std::max(at_cut, val);
      }
    }
  }
  return {best, at_cut};
}

}  // namespace

double mbd(const RadialTree& tree, const LevelCrossing& c, double r_prime) {
  return backward_sweep(tree, c, r_prime).first;
}

std::vector<DeviationRecord> deviation_records(const RadialTree& tree, double r, double r_prime) {
  if (r > r_prime) throw std::domain_error("deviation records need r <= r'");
  std::vector<DeviationRecord> out;
  for (auto& c : level_crossings(tree, r)) {
    const auto [sup, cut] = backward_sweep(tree, c, r_prime);
    out.push_back({r, r_prime, std::move(c), cut, sup});
  }
  return out;
}

// --- validation --------------------------------------------------------------

ValidationReport validate(const RadialTree& tree) {
  ValidationReport rep;
  const auto n = tree.size();
  const auto& pts = tree.cloud().points;

  bool links_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId p = tree.parent(static_cast<NodeId>(i));
    if (p < kRoot || p >= static_cast<NodeId>(n) || p == static_cast<NodeId>(i)) {
      rep.violations.push_back(describe(static_cast<NodeId>(i)) + ": parent index out of range");
      links_ok = false;
      continue;
    }
    if (!(tree.radius(p) < pts[i].r)) {
      rep.violations.push_back(describe(static_cast<NodeId>(i)) + ": parent radius not smaller");
    }
  }
  if (!links_ok) return rep;

  // Every node must reach the root; 0 = unknown, 1 = on current walk, 2 = reaches root.
  std::vector<unsigned char> state(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> walk;
    NodeId v = static_cast<NodeId>(i);
    bool cyclic = false;
    while (v != kRoot && state[static_cast<std::size_t>(v)] != 2) {
      if (state[static_cast<std::size_t>(v)] == 1) {
        cyclic = true;
        break;
      }
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(static_cast<std::size_t>(v));
      v = tree.parent(v);
    }
    if (cyclic) {
      rep.violations.push_back(describe(static_cast<NodeId>(i)) + ": parent links form a cycle");
      return rep;
    }
    for (std::size_t w : walk) state[w] = 2;
  }

  // Empty-region property, with the origin as an admissible parent.
  const FlatCloud flat(tree.cloud());
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[flat.order[k]] = k;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId p = tree.parent(static_cast<NodeId>(i));
    const double rho = cosh_dist_minus_one(pts[i], tree.point(p));
    if (p != kRoot && half_sinh_sq(pts[i].r) < rho) {
      rep.violations.push_back(describe(static_cast<NodeId>(i)) + ": origin closer than parent");
    }
    const std::size_t k = pos[i];
    std::size_t j = k;
    while (j-- > 0) {
      const double delta = pts[i].r - flat.r[j];
      if (delta > 0.0 && half_sinh_sq(delta) >= rho) break;
      if (!(delta > 0.0)) continue;
      const auto id = static_cast<NodeId>(flat.order[j]);
      if (id == p) continue;
      const double s = cosh_dist_minus_one(pts[i], pts[flat.order[j]]);
      if (s < rho) {
        rep.violations.push_back(describe(static_cast<NodeId>(i)) + ": point " + std::to_string(id) +
                                 " inside B+(z, d(z, A(z)))");
        break;
      }
    }
  }

  rep.max_degree = tree.children(kRoot).size();
  for (std::size_t i = 0; i < n; ++i) rep.max_degree = std::max(rep.max_degree, tree.children(static_cast<NodeId>(i)).size());
  if (rep.max_degree > n) rep.violations.push_back("degree exceeds the number of points");
  return rep;
}

}  // namespace hyperrst
