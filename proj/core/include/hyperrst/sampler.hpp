#pragma once

#include <cstdint>
#include <vector>

#include "hyperrst/geometry.hpp"
#include "hyperrst/rng.hpp"

namespace hyperrst {

/// Homogeneous Poisson process of intensity `lambda` in the ball B(0, R) of
/// H^{d+1}.
struct CloudConfig {
  int d = 1;
  double lambda = 30.0;
  double R = 5.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless d >= 1, lambda >= 0 and R > 0.
  void validate() const;
};

/// Points sorted by increasing radius; no point sits at the origin.
struct PointCloud {
  CloudConfig config;
  std::vector<PolarPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Finite box of the half-space: |x_i| <= half_width, y_min <= y <= y_max.
struct HalfWindow {
  double half_width = 1.0;
  double y_min = 0.5;
  double y_max = 2.0;

  void validate() const;
  bool contains(const HalfPoint& z) const;
};

/// Hyperbolic volume of the window in H^{d+1}.
double half_window_volume(int d, const HalfWindow& w);

/// Hyperbolic distance from z to the boundary of the window (0 outside it).
double distance_to_window_boundary(const HalfPoint& z, const HalfWindow& w);

/// Radius law on [0, R] with density proportional to sinh(r)^d. Closed-form
/// inversion for d = 1, tabulated inversion refined by safeguarded Newton for
/// d >= 2 (error below 1e-10).
class RadialLaw {
 public:
  RadialLaw(int d, double R);

  int d() const { return d_; }
  double R() const { return R_; }
  double cdf(double r) const;
  double quantile(double u) const;
  double sample(Engine& eng) const;

 private:
  double partial_integral(std::size_t knot, double r) const;

  int d_;
  double R_;
  std::vector<double> knots_;
  std::vector<double> cumulative_;  // unnormalized integral up to each knot
};

/// Uniform direction on S^d (normalized Gaussian vector).
Direction sample_direction(int d, Engine& eng);

/// Poisson cloud in B(0, R); fully determined by (cfg, replica).
PointCloud sample_ball(const CloudConfig& cfg, std::uint64_t replica = 0);

/// Binomial cloud of exactly n i.i.d. points with the same spatial law.
PointCloud sample_ball_n(const CloudConfig& cfg, std::size_t n, std::uint64_t replica = 0);

/// Poisson cloud in a half-space window.
std::vector<HalfPoint> sample_half(double lambda, int d, const HalfWindow& w, std::uint64_t seed,
                                   std::uint64_t replica = 0);

/// Binomial version of sample_half with exactly n points.
std::vector<HalfPoint> sample_half_n(std::size_t n, int d, const HalfWindow& w, std::uint64_t seed,
                                     std::uint64_t replica = 0);

/// Sorts by radius, ties by lexicographic direction.
void sort_by_radius(std::vector<PolarPoint>& points);

}  // namespace hyperrst
