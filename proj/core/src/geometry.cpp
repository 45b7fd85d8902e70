#include "hyperrst/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace hyperrst {
namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

// --- Direction ---------------------------------------------------------------

Direction::Direction(std::vector<double> components) : c_(std::move(components)) {
  const double n = std::sqrt(squared_norm(c_));
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("direction must be a nonzero finite vector");
  for (double& c : c_) c /= n;
}

Direction Direction::basis(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw std::invalid_argument("basis axis out of range");
  std::vector<double> c(dim, 0.0);
  c[axis] = 1.0;
  return from_unit(std::move(c));
}

Direction Direction::from_unit(std::vector<double> components) {
  Direction d;
  d.c_ = std::move(components);
  return d;
}

// --- scalar helpers ----------------------------------------------------------

double acosh1p(double s) {
  if (s <= 0.0) return 0.0;
  return std::log1p(s + std::sqrt(s * (s + 2.0)));
}

double angle_between(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size());
  double diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    sum += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

double angle_between(const Direction& a, const Direction& b) {
  return angle_between(a.components(), b.components());
}

double origin_angle(const PolarPoint& a, const PolarPoint& b) { return angle_between(a.u, b.u); }

double sphere_area(int d) {
  if (d < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  const double half = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / boost::math::tgamma(half);
}

double cap_fraction(int d, double theta) {
  if (d < 1) throw std::invalid_argument("cap_fraction needs d >= 1");
  if (theta <= 0.0) return 0.0;
  if (theta >= std::numbers::pi) return 1.0;
  if (d == 1) return theta / std::numbers::pi;
  // Polar-angle density on S^d is proportional to sin^{d-1}.
  const double s2 = std::sin(theta) * std::sin(theta);
  const double half = 0.5 * boost::math::ibeta(0.5 * d, 0.5, s2);
  return theta <= 0.5 * std::numbers::pi ? half : 1.0 - half;
}

// --- distances ---------------------------------------------------------------

double cosh_dist_minus_one(const PolarPoint& a, const PolarPoint& b) {
  require_same_dim(a.dim(), b.dim());
  const double sh = std::sinh(0.5 * (a.r - b.r));
  const double ang = squared_distance(a.u.components(), b.u.components());
  return 2.0 * sh * sh + 0.5 * ang * std::sinh(a.r) * std::sinh(b.r);
}

double dist_polar(const PolarPoint& a, const PolarPoint& b) { return acosh1p(cosh_dist_minus_one(a, b)); }

double dist_ball(const BallPoint& a, const BallPoint& b) {
  require_same_dim(a.coords.size(), b.coords.size());
  const double na = 1.0 - squared_norm(a.coords);
  const double nb = 1.0 - squared_norm(b.coords);
  if (!(na > 0.0) || !(nb > 0.0)) throw std::domain_error("ball point outside the open unit ball");
  return acosh1p(2.0 * squared_distance(a.coords, b.coords) / (na * nb));
}

double dist_half(const HalfPoint& a, const HalfPoint& b) {
  require_same_dim(a.x.size(), b.x.size());
  if (!(a.y > 0.0) || !(b.y > 0.0)) throw std::domain_error("half-space ordinate must be positive");
  const double kappa2 = squared_distance(a.x, b.x) / (a.y * a.y);
  const double v = b.y / a.y;
  const double den = kappa2 + (v + 1.0) * (v + 1.0);
  const double q = (kappa2 + (v - 1.0) * (v - 1.0)) / den;
  const double root = std::sqrt(q);
  if (root < 0.5) return 2.0 * std::atanh(root);
  // 2 atanh(x) = log((1 + x)^2 / (1 - x^2)) with 1 - x^2 = 4v / den computed directly.
  return 2.0 * std::log1p(root) - std::log(4.0 * v / den);
}

// --- conversions -------------------------------------------------------------

BallPoint polar_to_ball(const PolarPoint& z) {
  const double rho = std::tanh(0.5 * z.r);
  BallPoint b;
  b.coords.reserve(z.dim());
  for (double c : z.u.components()) b.coords.push_back(rho * c);
  return b;
}

PolarPoint ball_to_polar(const BallPoint& b) {
  const double n = std::sqrt(squared_norm(b.coords));
  if (!(n < 1.0)) throw std::domain_error("ball point outside the open unit ball");
  if (n == 0.0) return PolarPoint::origin(b.coords.size());
  std::vector<double> u(b.coords.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = b.coords[i] / n;
  return {2.0 * std::atanh(n), Direction(std::move(u))};
}

BallPoint half_to_ball(const HalfPoint& z, double h) {
  if (!(z.y > 0.0)) throw std::domain_error("half-space ordinate must be positive");
  const double e = std::exp(h);
  const double x2 = squared_norm(z.x);
  const double den = x2 + (z.y + e) * (z.y + e);
  BallPoint b;
  b.coords.resize(z.x.size() + 1);
  // x^2 + y^2 - e^2h written as x^2 + (y - e)(y + e) to keep precision near O(h).
  b.coords[0] = (x2 + (z.y - e) * (z.y + e)) / den;
  for (std::size_t i = 0; i < z.x.size(); ++i) b.coords[i + 1] = -2.0 * z.x[i] * e / den;
  return b;
}

HalfPoint ball_to_half(const BallPoint& b, double h) {
  if (b.coords.empty()) throw std::invalid_argument("empty ball point");
  const double e = std::exp(h);
  const std::size_t d = b.coords.size() - 1;
  double bx2 = 0.0;
  for (std::size_t i = 1; i <= d; ++i) bx2 += b.coords[i] * b.coords[i];
  const double n = bx2 + (1.0 - b.coords[0]) * (1.0 - b.coords[0]);
  HalfPoint z;
  z.x.resize(d);
  for (std::size_t i = 0; i < d; ++i) z.x[i] = -2.0 * b.coords[i + 1] / n * e;
  // -1 + 2(1 - b0)/n == (1 - |b|^2)/n
  z.y = (1.0 - bx2 - b.coords[0] * b.coords[0]) / n * e;
  if (!(z.y > 0.0)) throw std::domain_error("ball point outside the open unit ball");
  return z;
}

PolarPoint half_to_polar(const HalfPoint& z, double h) { return ball_to_polar(half_to_ball(z, h)); }

HalfPoint apex_point(std::size_t d, double h) { return {std::vector<double>(d, 0.0), std::exp(h)}; }

double apex_angle(double h, const HalfPoint& z) {
  const double e = std::exp(h);
  const double xn = std::sqrt(squared_norm(z.x));
  // e^{2h} - |x|^2 - y^2, factored as above.
  const double den = (e - z.y) * (e + z.y) - xn * xn;
  return std::atan2(2.0 * xn * e, den);
}

double angle_from_apex(double h, const HalfPoint& z) {
  if (!(z.y < std::exp(h))) throw std::domain_error("angle_from_apex requires y < e^h");
  return apex_angle(h, z);
}

// --- StarPath ----------------------------------------------------------------

StarPath::StarPath(PolarPoint z1, PolarPoint z2) : z1_(std::move(z1)), z2_(std::move(z2)) {
  require_same_dim(z1_.dim(), z2_.dim());
  if (z1_.r < 0.0 || z2_.r < 0.0) throw std::domain_error("negative radius");
  sh1_ = std::sinh(z1_.r);
  sh2_ = std::sinh(z2_.r);
  if (z1_.r == 0.0 || z2_.r == 0.0) {
    theta_ = 0.0;  // radial segment through the origin end
    return;
  }
  theta_ = angle_between(z1_.u, z2_.u);
  if (theta_ >= std::numbers::pi - 1e-12) throw std::domain_error("star path between antipodal directions");
  if (theta_ > 0.0) {
    const double c = std::cos(theta_);
    normal_.resize(z1_.dim());
    double n = 0.0;
    for (std::size_t i = 0; i < normal_.size(); ++i) {
      normal_[i] = z2_.u[i] - c * z1_.u[i];
      n += normal_[i] * normal_[i];
    }
    n = std::sqrt(n);
    if (n == 0.0) {
      theta_ = 0.0;
      normal_.clear();
    } else {
      for (double& v : normal_) v /= n;
    }
  }
}

double StarPath::phi(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (theta_ == 0.0) return t;
  const double r = (1.0 - t) * z1_.r + t * z2_.r;
  const double arg = ((1.0 - t) * sh1_ + t * std::cos(theta_) * sh2_) / std::sinh(r);
  return std::acos(std::clamp(arg, -1.0, 1.0)) / theta_;
}

PolarPoint StarPath::eval(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("star path parameter outside [0, 1]");
  if (t == 0.0) return z1_;
  if (t == 1.0) return z2_;
  const double r = z1_.r + t * (z2_.r - z1_.r);
  if (theta_ == 0.0) return {r, z1_.r > 0.0 ? z1_.u : z2_.u};
  const double alpha = theta_ * phi(t);
  const double c = std::cos(alpha), s = std::sin(alpha);
  std::vector<double> u(z1_.dim());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = c * z1_.u[i] + s * normal_[i];
  return {r, Direction(std::move(u))};
}

double StarPath::sphere_crossing(double r) const {
  const double lo = std::min(z1_.r, z2_.r), hi = std::max(z1_.r, z2_.r);
  if (!(r >= lo && r <= hi)) throw std::domain_error("sphere radius outside the path's radial range");
  if (z1_.r == z2_.r) return 0.0;
  return std::clamp((r - z1_.r) / (z2_.r - z1_.r), 0.0, 1.0);
}

// --- cones, volumes ----------------------------------------------------------

bool Cone::contains(const Direction& u) const {
  if (aperture >= std::numbers::pi) return true;
  return angle_between(apex_direction, u) <= aperture;
}

bool Cone::contains(const PolarPoint& z) const { return contains(z.u); }

double sinh_power_integral(int d, double a, double b) {
  if (d < 0) throw std::invalid_argument("negative power");
  if (b < a) return -sinh_power_integral(d, b, a);
  if (d == 0) return b - a;
  if (d == 1) return 2.0 * std::sinh(0.5 * (b + a)) * std::sinh(0.5 * (b - a));
  // Composite 20-point Gauss on panels of width <= 0.05: the integrand is
  // entire, so each panel is exact to rounding.
  using boost::math::quadrature::gauss;
  auto f = [d](double s) { return std::pow(std::sinh(s), d); };
  const auto panels = static_cast<int>(std::ceil((b - a) / 0.05));
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels, hi = k + 1 == panels ? b : a + (b - a) * (k + 1) / panels;
    sum += gauss<double, 20>::integrate(f, lo, hi);
  }
  return sum;
}

double ball_volume(int d, double r) {
  if (d < 1) throw std::invalid_argument("ball_volume needs d >= 1");
  if (r < 0.0) throw std::domain_error("negative radius");
  return sphere_area(d) * sinh_power_integral(d, 0.0, r);
}

bool bplus_region_test(const PolarPoint& z, double rho, const PolarPoint& q) {
  return q.r < z.r && dist_polar(z, q) <= rho;
}

}  // namespace hyperrst
