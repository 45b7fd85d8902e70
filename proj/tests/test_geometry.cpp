#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hyperrst/geometry.hpp"
#include "hyperrst/sampler.hpp"
#include "oracles.hpp"

using namespace hyperrst;

namespace {

constexpr double kPi = std::numbers::pi;

PolarPoint random_polar(int d, double rmax, Engine& eng) {
  std::uniform_real_distribution<double> ur(0.0, rmax);
  return {ur(eng), sample_direction(d, eng)};
}

HalfPoint half(double x, double y) { return {{x}, y}; }

}  // namespace

TEST(ScalarHelpers, Acosh1pMatchesAcoshAndSeries) {
  for (double s : {1e-3, 0.1, 1.0, 10.0, 1e4}) EXPECT_NEAR(acosh1p(s), std::acosh(1.0 + s), 1e-13 * std::acosh(1.0 + s));
  // acosh(1 + s) = sqrt(2 s) (1 - s / 12 + ...) for tiny s
  const double s = 1e-14;
  EXPECT_NEAR(acosh1p(s), std::sqrt(2.0 * s), 1e-14 * std::sqrt(2.0 * s));
  EXPECT_EQ(acosh1p(0.0), 0.0);
}

TEST(ScalarHelpers, AngleBetweenBasics) {
  const Direction a = Direction::basis(3, 0), b = Direction::basis(3, 1);
  EXPECT_NEAR(angle_between(a, b), kPi / 2, 1e-15);
  EXPECT_EQ(angle_between(a, a), 0.0);
  EXPECT_NEAR(angle_between(a, Direction({-1.0, 0.0, 0.0})), kPi, 1e-15);
  const Direction tiny({1.0, 1e-12, 0.0});
  EXPECT_NEAR(angle_between(a, tiny), 1e-12, 1e-24);
}

TEST(ScalarHelpers, DirectionRejectsZero) { EXPECT_THROW(Direction({0.0, 0.0}), std::invalid_argument); }

TEST(ScalarHelpers, SphereAreaAndCaps) {
  EXPECT_NEAR(sphere_area(1), 2 * kPi, 1e-14);
  EXPECT_NEAR(sphere_area(2), 4 * kPi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 2 * kPi * kPi, 1e-13);
  for (double t : {0.1, 0.7, 2.0}) {
    EXPECT_NEAR(cap_fraction(1, t), t / kPi, 1e-14);
    EXPECT_NEAR(cap_fraction(2, t), (1 - std::cos(t)) / 2, 1e-14);
  }
  EXPECT_EQ(cap_fraction(3, kPi), 1.0);
  EXPECT_EQ(cap_fraction(3, 4.0), 1.0);
  EXPECT_EQ(cap_fraction(2, 0.0), 0.0);
}

TEST(Distances, CrossModelAgreementAndOracle) {
  Engine eng(11);
  for (int d : {1, 2, 3}) {
    for (int k = 0; k < 2000; ++k) {
      const PolarPoint a = random_polar(d, 6.0, eng), b = random_polar(d, 6.0, eng);
      const double dp = dist_polar(a, b);
      EXPECT_NEAR(dp, static_cast<double>(oracle::dist_polar_ld(a, b)), 1e-10);
      EXPECT_NEAR(dp, dist_ball(polar_to_ball(a), polar_to_ball(b)), 1e-10);
      for (double h : {0.0, 1.5}) {
        const HalfPoint ha = ball_to_half(polar_to_ball(a), h), hb = ball_to_half(polar_to_ball(b), h);
        EXPECT_NEAR(dp, dist_half(ha, hb), 1e-10);
      }
    }
  }
}

TEST(Distances, SymmetryZeroAndTriangle) {
  Engine eng(12);
  for (int k = 0; k < 500; ++k) {
    const PolarPoint a = random_polar(2, 4.0, eng), b = random_polar(2, 4.0, eng), c = random_polar(2, 4.0, eng);
    EXPECT_NEAR(dist_polar(a, b), dist_polar(b, a), 1e-13);
    EXPECT_EQ(dist_polar(a, a), 0.0);
    EXPECT_LE(dist_polar(a, c), dist_polar(a, b) + dist_polar(b, c) + 1e-12);
  }
  EXPECT_NEAR(dist_polar(PolarPoint::origin(2), {3.0, Direction::basis(2, 1)}), 3.0, 1e-14);
  EXPECT_NEAR(dist_half(half(0, 1), half(0, std::exp(2.0))), 2.0, 1e-14);
}

TEST(Conversions, RoundTrips) {
  Engine eng(13);
  for (int d : {1, 2}) {
    for (int k = 0; k < 300; ++k) {
      const PolarPoint p = random_polar(d, 5.0, eng);
      const PolarPoint back = ball_to_polar(polar_to_ball(p));
      EXPECT_NEAR(back.r, p.r, 1e-12);
      if (p.r > 1e-6) {
        EXPECT_LT(angle_between(back.u, p.u), 1e-10);
      }
      const HalfPoint z = ball_to_half(polar_to_ball(p), 0.7);
      const BallPoint b2 = half_to_ball(z, 0.7);
      const BallPoint b1 = polar_to_ball(p);
      for (std::size_t i = 0; i < b1.coords.size(); ++i) EXPECT_NEAR(b1.coords[i], b2.coords[i], 1e-12);
      EXPECT_NEAR(half_to_polar(z, 0.7).r, p.r, 1e-10);
    }
  }
}

TEST(Conversions, HalfToBallLandmarks) {
  const double h = 1.2;
  const BallPoint centre = half_to_ball(apex_point(2, h), h);
  for (double c : centre.coords) EXPECT_NEAR(c, 0.0, 1e-15);
  // Points sinking toward the ideal point (0, 0) approach (-1, 0, 0).
  const BallPoint low = half_to_ball({{0.0, 0.0}, 1e-9}, h);
  EXPECT_NEAR(low.coords[0], -1.0, 1e-8);
  EXPECT_NEAR(half_to_polar(half(0.0, std::exp(h - 3.0)), h).r, 3.0, 1e-12);
}

TEST(ApexAngle, MatchesTangentOracle) {
  Engine eng(14);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.0, 1.0);
  for (double h : {0.0, 1.0, 3.0}) {
    for (int k = 0; k < 2000; ++k) {
      const HalfPoint z{{ux(eng)}, uy(eng) * std::exp(h) * 0.999 + 1e-6};
      EXPECT_NEAR(angle_from_apex(h, z), oracle::apex_angle_tangent(h, z), 1e-9);
    }
  }
  const HalfPoint z3{{0.3, -0.4}, 0.5};
  EXPECT_NEAR(angle_from_apex(0.0, z3), oracle::apex_angle_tangent(0.0, z3), 1e-12);
}

TEST(ApexAngle, SpecExampleOutsideDomainIsRejected) {
  // z = (1, 1) at h = 0 has y = e^h, which the precondition y < e^h excludes.
  EXPECT_THROW(angle_from_apex(0.0, half(1.0, 1.0)), std::domain_error);
  EXPECT_NEAR(angle_from_apex(0.0, half(1.0, 0.5)), oracle::apex_angle_tangent(0.0, half(1.0, 0.5)), 1e-12);
  // Without the precondition the same formula takes the obtuse branch.
  EXPECT_NEAR(apex_angle(0.0, half(1.0, 1.0)), kPi - std::atan(2.0), 1e-12);
  EXPECT_NEAR(apex_angle(0.0, half(1.0, 1.0)), oracle::apex_angle_tangent(0.0, half(1.0, 1.0)), 1e-12);
  EXPECT_NEAR(angle_from_apex(0.0, half(0.6, 0.8)), kPi / 2, 1e-12);
  EXPECT_EQ(angle_from_apex(2.0, half(0.0, 0.5)), 0.0);
}

TEST(StarPath, EndpointsExactAndRadiusAffine) {
  Engine eng(15);
  for (int d : {1, 2, 3}) {
    for (int k = 0; k < 300; ++k) {
      const PolarPoint a = random_polar(d, 5.0, eng), b = random_polar(d, 5.0, eng);
      const StarPath path(a, b);
      const PolarPoint p0 = path.eval(0.0), p1 = path.eval(1.0);
      EXPECT_EQ(p0.r, a.r);
      EXPECT_EQ(p1.r, b.r);
      EXPECT_EQ(p0.u, a.u);
      EXPECT_EQ(p1.u, b.u);
      EXPECT_EQ(path.phi(0.0), 0.0);
      EXPECT_EQ(path.phi(1.0), 1.0);
      double prev = 0.0;
      for (int j = 1; j <= 16; ++j) {
        const double t = j / 16.0;
        const PolarPoint q = path.eval(t);
        EXPECT_NEAR(q.r, (1 - t) * a.r + t * b.r, 1e-12);
        const double dist = dist_polar(a, q);
        EXPECT_GE(dist, prev - 1e-12);
        prev = dist;
      }
    }
  }
}

TEST(StarPath, SphereCrossingInvertsRadius) {
  const PolarPoint a{4.0, Direction({1.0, 0.0})}, b{1.0, Direction({0.0, 1.0})};
  const StarPath path(a, b);
  for (double r : {1.0, 1.7, 3.3, 4.0}) {
    const double t = path.sphere_crossing(r);
    EXPECT_NEAR(path.eval(t).r, r, 1e-12);
  }
  EXPECT_THROW(path.sphere_crossing(4.5), std::domain_error);
  EXPECT_THROW(path.eval(1.5), std::domain_error);
}

TEST(StarPath, OriginEndpointIsRadialAndAntipodalRejected) {
  const PolarPoint a{2.0, Direction({0.6, 0.8})};
  const StarPath radial(a, PolarPoint::origin(2));
  EXPECT_EQ(radial.theta(), 0.0);
  EXPECT_EQ(radial.eval(0.5).u, a.u);
  EXPECT_THROW(StarPath(a, PolarPoint{1.0, Direction({-0.6, -0.8})}), std::domain_error);
}

TEST(Cones, Containment) {
  const Cone c{Direction::basis(3, 0), 0.5};
  EXPECT_TRUE(c.contains(Direction({1.0, 0.4, 0.0})));
  EXPECT_FALSE(c.contains(Direction({1.0, 0.6, 0.0})));
  const Cone all{Direction::basis(3, 0), kPi};
  EXPECT_TRUE(all.contains(Direction({-1.0, 0.0, 0.0})));
}

TEST(Volumes, ClosedFormsAndQuadrature) {
  for (double r : {0.1, 1.0, 3.0}) {
    EXPECT_NEAR(ball_volume(1, r), 2 * kPi * (std::cosh(r) - 1), 1e-12 * ball_volume(1, r));
    EXPECT_NEAR(ball_volume(2, r), kPi * (std::sinh(2 * r) - 2 * r), 1e-12 * ball_volume(2, r));
  }
  // Composite Simpson oracle for d = 3.
  const int n = 20000;
  const double a = 0.5, b = 2.5, hstep = (b - a) / n;
  double s = std::pow(std::sinh(a), 3) + std::pow(std::sinh(b), 3);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * std::pow(std::sinh(a + i * hstep), 3);
  EXPECT_NEAR(sinh_power_integral(3, a, b), s * hstep / 3, 1e-9);
  EXPECT_EQ(sinh_power_integral(2, 1.0, 1.0), 0.0);
}

TEST(Volumes, BplusRegion) {
  const PolarPoint z{2.0, Direction::basis(2, 0)};
  EXPECT_TRUE(bplus_region_test(z, 0.5, {1.7, Direction::basis(2, 0)}));
  EXPECT_FALSE(bplus_region_test(z, 0.5, {2.2, Direction::basis(2, 0)}));  // outside B(0, r)
  EXPECT_FALSE(bplus_region_test(z, 0.5, {1.0, Direction::basis(2, 0)}));  // too far
  EXPECT_TRUE(bplus_region_test(z, 4.0, PolarPoint::origin(2)));
}
