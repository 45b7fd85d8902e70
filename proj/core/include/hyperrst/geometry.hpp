#pragma once

// Exact hyperbolic geometry in three coordinate models (polar around a fixed
// origin, Poincare ball, upper half-space). Curvature is -1 throughout and all
// angles are in radians.

#include <cstddef>
#include <span>
#include <vector>

namespace hyperrst {

/// Unit vector of R^{d+1}. Construction normalizes; a zero vector is rejected.
class Direction {
 public:
  Direction() = default;
  explicit Direction(std::vector<double> components);

  /// The i-th standard basis vector of R^dim.
  static Direction basis(std::size_t dim, std::size_t axis = 0);
  /// Trusts the caller that `components` already has unit norm.
  static Direction from_unit(std::vector<double> components);

  std::size_t dim() const { return c_.size(); }
  std::span<const double> components() const { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  std::vector<double> c_;
};

/// z = (r; u). At r == 0 the direction is the first basis vector by convention.
struct PolarPoint {
  double r = 0.0;
  Direction u;

  std::size_t dim() const { return u.dim(); }
  static PolarPoint origin(std::size_t dim) { return {0.0, Direction::basis(dim)}; }
};

/// Point of the open unit ball (Poincare model).
struct BallPoint {
  std::vector<double> coords;
};

/// Point (x, y) of the upper half-space: x is the abscissa in R^d, y > 0.
struct HalfPoint {
  std::vector<double> x;
  double y = 1.0;
};

// --- scalar helpers -------------------------------------------------------

/// arccosh(1 + s) for s >= 0 without the cancellation of acosh near 1.
double acosh1p(double s);

/// Unoriented angle between two unit vectors, in [0, pi].
double angle_between(std::span<const double> a, std::span<const double> b);
double angle_between(const Direction& a, const Direction& b);

/// Angle at the origin between two points (the angle of their directions).
double origin_angle(const PolarPoint& a, const PolarPoint& b);

/// Area of the unit sphere S^d in R^{d+1}.
double sphere_area(int d);

/// Normalized measure of the spherical cap {v : angle(v, u) <= theta} on S^d.
double cap_fraction(int d, double theta);

// --- distances ------------------------------------------------------------

/// cosh(d) - 1 between two polar points (hyperbolic law of cosines, evaluated
/// without cancellation). Monotone in the distance; useful as a sort key.
double cosh_dist_minus_one(const PolarPoint& a, const PolarPoint& b);

double dist_polar(const PolarPoint& a, const PolarPoint& b);
double dist_ball(const BallPoint& a, const BallPoint& b);
double dist_half(const HalfPoint& a, const HalfPoint& b);

// --- model conversions ----------------------------------------------------

BallPoint polar_to_ball(const PolarPoint& z);
PolarPoint ball_to_polar(const BallPoint& b);

/// Isometry H -> ball sending O(h) = (0, e^h) to the centre and the ideal
/// point (0, 0) to (-1, 0, ..., 0). Ball coordinate 0 is the vertical axis.
BallPoint half_to_ball(const HalfPoint& z, double h);
PolarPoint half_to_polar(const HalfPoint& z, double h);

/// Inverse of half_to_ball.
HalfPoint ball_to_half(const BallPoint& b, double h);

/// O(h) = (0, e^h) in a half-space of abscissa dimension d.
HalfPoint apex_point(std::size_t d, double h);

// --- angles in the half-space ---------------------------------------------

/// Angle at O(h) between z and the ideal point (0, 0). Requires z.y < e^h;
/// throws std::domain_error otherwise.
double angle_from_apex(double h, const HalfPoint& z);

/// Same angle without the precondition; total except at z == O(h) (returns 0).
double apex_angle(double h, const HalfPoint& z);

// --- star paths ------------------------------------------------------------

/// Monotone edge curve between two points: radius is affine in t and the
/// direction travels along the great circle from u1 to u2 at the rate that
/// keeps the distance to z1 monotone.
class StarPath {
 public:
  /// Throws std::domain_error if the directions are antipodal (theta == pi).
  /// When either endpoint is the origin the path is radial.
  StarPath(PolarPoint z1, PolarPoint z2);

  const PolarPoint& z1() const { return z1_; }
  const PolarPoint& z2() const { return z2_; }
  double theta() const { return theta_; }

  /// Reparameterization of the great-circle arc, phi(0) = 0, phi(1) = 1.
  double phi(double t) const;

  /// Point at parameter t in [0, 1]; throws std::domain_error outside.
  PolarPoint eval(double t) const;

  /// Parameter at which the radius equals r. Throws std::domain_error if r is
  /// outside [min(r1, r2), max(r1, r2)].
  double sphere_crossing(double r) const;

 private:
  PolarPoint z1_;
  PolarPoint z2_;
  double theta_ = 0.0;
  std::vector<double> normal_;  // unit tangent at u1 towards u2
  double sh1_ = 0.0, sh2_ = 0.0;
};

inline PolarPoint star_eval(const StarPath& p, double t) { return p.eval(t); }
inline double star_sphere_crossing(const StarPath& p, double r) { return p.sphere_crossing(r); }

// --- cones, balls, volumes -------------------------------------------------

/// Cone of apex at the origin: points whose direction is within `aperture`
/// of `apex_direction`. Aperture >= pi is the whole space.
struct Cone {
  Direction apex_direction;
  double aperture = 0.0;

  bool contains(const Direction& u) const;
  bool contains(const PolarPoint& z) const;
};

/// Integral of sinh(s)^d over [a, b].
double sinh_power_integral(int d, double a, double b);

/// Volume of a hyperbolic ball of radius r in H^{d+1}.
double ball_volume(int d, double r);

/// q in B+(z, rho) = B(z, rho) intersected with B(0, d(0, z)).
bool bplus_region_test(const PolarPoint& z, double rho, const PolarPoint& q);

}  // namespace hyperrst
