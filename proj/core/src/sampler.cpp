#include "hyperrst/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace hyperrst {
namespace {

constexpr std::size_t kKnots = 4096;

double sinh_pow(int d, double s) { return std::pow(std::sinh(s), d); }

std::vector<PolarPoint> draw_ball_points(const RadialLaw& law, int d, std::size_t n, Engine& eng) {
  std::vector<PolarPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = law.sample(eng);
    while (!(r > 0.0)) r = law.sample(eng);
    pts.push_back({r, sample_direction(d, eng)});
  }
  sort_by_radius(pts);
  return pts;
}

HalfPoint draw_half_point(int d, const HalfWindow& w, Engine& eng) {
  HalfPoint z;
  z.x.resize(d);
  for (double& c : z.x) c = w.half_width * (2.0 * uniform_open(eng) - 1.0);
  // CDF of the ordinate is proportional to y_min^{-d} - y^{-d}.
  const double a = std::pow(w.y_min, -d), b = std::pow(w.y_max, -d);
  const double u = uniform_open(eng);
  z.y = std::pow(a - u * (a - b), -1.0 / d);
  z.y = std::clamp(z.y, w.y_min, w.y_max);
  return z;
}

}  // namespace

void CloudConfig::validate() const {
  if (d < 1) throw std::invalid_argument("cloud dimension d must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("intensity lambda must be >= 0");
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("window radius R must be > 0");
}

void HalfWindow::validate() const {
  if (!(half_width > 0.0)) throw std::invalid_argument("half window width must be > 0");
  if (!(y_min > 0.0) || !(y_max > y_min)) throw std::invalid_argument("half window needs 0 < y_min < y_max");
}

bool HalfWindow::contains(const HalfPoint& z) const {
  if (z.y < y_min || z.y > y_max) return false;
  return std::all_of(z.x.begin(), z.x.end(), [&](double c) { return std::abs(c) <= half_width; });
}

double half_window_volume(int d, const HalfWindow& w) {
  w.validate();
  return std::pow(2.0 * w.half_width, d) * (std::pow(w.y_min, -d) - std::pow(w.y_max, -d)) / d;
}

double distance_to_window_boundary(const HalfPoint& z, const HalfWindow& w) {
  if (!w.contains(z)) return 0.0;
  double best = std::min(std::log(z.y / w.y_min), std::log(w.y_max / z.y));
  for (double c : z.x) {
    // Distance to the vertical totally geodesic hyperplane {x_i = const}.
    best = std::min(best, std::asinh((w.half_width - std::abs(c)) / z.y));
  }
  return best;
}

// --- RadialLaw ---------------------------------------------------------------

RadialLaw::RadialLaw(int d, double R) : d_(d), R_(R) {
  if (d < 1) throw std::invalid_argument("radial law needs d >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("radial law needs R > 0");
  if (d_ == 1) return;
  knots_.resize(kKnots + 1);
  cumulative_.resize(kKnots + 1);
  cumulative_[0] = 0.0;
  for (std::size_t k = 0; k <= kKnots; ++k) knots_[k] = R_ * static_cast<double>(k) / kKnots;
  knots_[kKnots] = R_;
  for (std::size_t k = 1; k <= kKnots; ++k) {
    cumulative_[k] = cumulative_[k - 1] + sinh_power_integral(d_, knots_[k - 1], knots_[k]);
  }
}

double RadialLaw::partial_integral(std::size_t knot, double r) const {
  auto f = [this](double s) { return sinh_pow(d_, s); };
  return boost::math::quadrature::gauss<double, 15>::integrate(f, knots_[knot], r);
}

double RadialLaw::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= R_) return 1.0;
  if (d_ == 1) return (std::cosh(r) - 1.0) / (std::cosh(R_) - 1.0);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(r / R_ * kKnots), kKnots - 1);
  return (cumulative_[k] + partial_integral(k, r)) / cumulative_.back();
}

double RadialLaw::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile level outside [0, 1]");
  if (d_ == 1) {
    const double sh = std::sinh(0.5 * R_);
    return std::min(R_, acosh1p(u * 2.0 * sh * sh));
  }
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t k = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  k = std::min(k, kKnots - 1);
  double lo = knots_[k], hi = knots_[k + 1];
  const double need = target - cumulative_[k];
  const double span = cumulative_[k + 1] - cumulative_[k];
  double r = span > 0.0 ? lo + (hi - lo) * (need / span) : lo;
  for (int iter = 0; iter < 60; ++iter) {
    const double g = partial_integral(k, r) - need;
    if (g > 0.0) hi = r; else lo = r;
    const double dens = sinh_pow(d_, r);
    double next = dens > 0.0 ? r - g / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) < 1e-15 * std::max(1.0, r) || hi - lo < 1e-14) return next;
    r = next;
  }
  return r;
}

double RadialLaw::sample(Engine& eng) const { return quantile(uniform_open(eng)); }

// --- sampling ----------------------------------------------------------------

Direction sample_direction(int d, Engine& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  for (;;) {
    double n2 = 0.0;
    for (double& c : v) {
      c = gauss(eng);
      n2 += c * c;
    }
    if (n2 > 1e-300) return Direction(std::move(v));
  }
}

void sort_by_radius(std::vector<PolarPoint>& points) {
  std::sort(points.begin(), points.end(), [](const PolarPoint& a, const PolarPoint& b) {
    if (a.r != b.r) return a.r < b.r;
    return std::lexicographical_compare(a.u.components().begin(), a.u.components().end(),
                                        b.u.components().begin(), b.u.components().end());
  });
}

PointCloud sample_ball(const CloudConfig& cfg, std::uint64_t replica) {
  cfg.validate();
  Engine eng = make_engine(cfg.seed, replica, StreamRole::kCloud);
  const double mean = cfg.lambda * ball_volume(cfg.d, cfg.R);
  std::size_t n = 0;
  if (mean > 0.0) n = static_cast<std::size_t>(std::poisson_distribution<long long>(mean)(eng));
  RadialLaw law(cfg.d, cfg.R);
  return {cfg, draw_ball_points(law, cfg.d, n, eng)};
}

PointCloud sample_ball_n(const CloudConfig& cfg, std::size_t n, std::uint64_t replica) {
  cfg.validate();
  Engine eng = make_engine(cfg.seed, replica, StreamRole::kCloud);
  RadialLaw law(cfg.d, cfg.R);
  return {cfg, draw_ball_points(law, cfg.d, n, eng)};
}

std::vector<HalfPoint> sample_half(double lambda, int d, const HalfWindow& w, std::uint64_t seed,
                                   std::uint64_t replica) {
  if (!(lambda > 0.0)) throw std::invalid_argument("intensity lambda must be > 0");
  if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
  w.validate();
  Engine eng = make_engine(seed, replica, StreamRole::kHalfCloud);
  std::poisson_distribution<long long> count(lambda * half_window_volume(d, w));
  const auto n = static_cast<std::size_t>(count(eng));
  std::vector<HalfPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(draw_half_point(d, w, eng));
  return pts;
}

std::vector<HalfPoint> sample_half_n(std::size_t n, int d, const HalfWindow& w, std::uint64_t seed,
                                     std::uint64_t replica) {
  if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
  w.validate();
  Engine eng = make_engine(seed, replica, StreamRole::kHalfCloud);
  std::vector<HalfPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(draw_half_point(d, w, eng));
  return pts;
}

}  // namespace hyperrst
