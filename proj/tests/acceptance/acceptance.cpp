// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperrst/experiments.hpp"
#include "hyperrst/forest.hpp"
#include "hyperrst/geometry.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/sampler.hpp"
#include "hyperrst/serialize.hpp"
#include "oracles.hpp"

using namespace hyperrst;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    out.pass = false;
    out.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %-28s %8.1fs  %s\n", out.pass ? "PASS" : "FAIL", id, title, secs, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome geometry_suite() {
  Engine eng(20240601);
  std::uniform_real_distribution<double> ur(0.0, 6.0);
  double worst_dist = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const int d = 1 + k % 3;
    const PolarPoint a{ur(eng), sample_direction(d, eng)}, b{ur(eng), sample_direction(d, eng)};
    const double ref = static_cast<double>(oracle::dist_polar_ld(a, b));
    const BallPoint ba = polar_to_ball(a), bb = polar_to_ball(b);
    worst_dist = std::max({worst_dist, std::abs(dist_polar(a, b) - ref), std::abs(dist_ball(ba, bb) - ref),
                           std::abs(dist_half(ball_to_half(ba, 0.0), ball_to_half(bb, 0.0)) - ref),
                           std::abs(dist_half(ball_to_half(ba, 1.5), ball_to_half(bb, 1.5)) - ref)});
  }
  double worst_angle = 0.0;
  std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double h = (k % 4) * 1.0;
    const HalfPoint z{{ux(eng)}, uy(eng) * std::exp(h) * 0.999 + 1e-6};
    worst_angle = std::max(worst_angle, std::abs(angle_from_apex(h, z) - oracle::apex_angle_tangent(h, z)));
  }
  double worst_star = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const int d = 1 + k % 3;
    const PolarPoint a{ur(eng), sample_direction(d, eng)}, b{ur(eng), sample_direction(d, eng)};
    if (angle_between(a.u, b.u) > 3.1) continue;
    const StarPath path(a, b);
    const PolarPoint e0 = path.eval(0.0), e1 = path.eval(1.0);
    if (e0.r != a.r || e1.r != b.r || !(e0.u == a.u) || !(e1.u == b.u)) worst_star = 1.0;
    for (int j = 1; j < 16; ++j) {
      const double t = j / 16.0;
      worst_star = std::max(worst_star, std::abs(path.eval(t).r - ((1 - t) * a.r + t * b.r)));
    }
  }
  return {worst_dist <= 1e-10 && worst_angle <= 1e-9 && worst_star <= 1e-12,
          fmt("max dist err %.2e (tol 1e-10), angle err %.2e (tol 1e-9), star-path err %.2e (tol 1e-12)", worst_dist,
              worst_angle, worst_star)};
}

Outcome construction_suite() {
  int rst_bad = 0, dsf_bad = 0, violations = 0;
  const HalfWindow w{10.0, 0.05, 10.0};
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const PointCloud cloud = sample_ball_n({1 + static_cast<int>(rep % 2), 1.0, 5.0, 77}, 2000, rep);
    const RadialTree tree = build_rst(cloud);
    rst_bad += tree.parents() != oracle::rst_parents(cloud);
    violations += static_cast<int>(validate(tree).violations.size());
    const auto pts = sample_half_n(2000, 1 + static_cast<int>(rep % 2), w, 78, rep);
    const HalfForest f = build_dsf(pts);
    dsf_bad += f.parent != oracle::dsf_parents(pts);
    violations += static_cast<int>(validate_dsf(f).size());
  }
  return {rst_bad == 0 && dsf_bad == 0 && violations == 0,
          fmt("50 clouds n=2000: RST mismatches %.0f, DSF mismatches %.0f, violations %.0f", rst_bad, dsf_bad,
              violations)};
}

Outcome planarity_suite() {
  std::size_t total = 0, worst = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const std::size_t c = planarity_check(build_rst(sample_ball({1, 30.0, 5.0, 1}, rep)));
    total += c;
    worst = std::max(worst, c);
  }
  return {total == 0, fmt("100 replicas d=1 lambda=30 R=5: crossings %.0f", static_cast<double>(total))};
}

Outcome mbd_suite() {
  const double r = 2.5, r_prime = 4.5;
  double worst = 0.0, grid_excess = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const RadialTree tree = build_rst(sample_ball({1, 30.0, 5.0, 4242}, rep));
    for (const auto& c : level_crossings(tree, r)) {
      const double fast = mbd(tree, c, r_prime);
      std::vector<double> levels;
      for (int k = 0; k < 1000; ++k) levels.push_back(r + (r_prime - r) * k / 999.0);
      grid_excess = std::max(grid_excess, oracle::mbd_on_levels(tree, c, levels) - fast);
      for (NodeId v : oracle::subtree_nodes(tree, c.child)) {
        if (tree.radius(v) > r && tree.radius(v) <= r_prime) levels.push_back(tree.radius(v));
      }
      worst = std::max(worst, std::abs(oracle::mbd_on_levels(tree, c, levels) - fast));
      ++checked;
    }
  }
  return {worst <= 1e-9 && grid_excess <= 1e-9,
          fmt("%.0f crossings on 20 trees: |fast - grid+vertex| max %.2e, grid above fast by %.2e (tol 1e-9)",
              static_cast<double>(checked), worst, grid_excess)};
}

Outcome straightness() {
  const StatReport rep = exp_straightness(ExperimentConfig{});
  const FitEstimate& f = rep.fit("log_mean_slope");
  const bool ok = f.estimate >= -1.3 && f.estimate <= -0.7 && !f.ci.contains(0.0);
  return {ok, fmt("slope %.3f in [-1.3, -0.7], 95%% CI [%.3f, %.3f] excludes 0, R2 %.3f", f.estimate, f.ci.lo, f.ci.hi,
                  f.r2)};
}

Outcome moments() {
  ExperimentConfig cfg;
  cfg.p = 2.0;
  const FitEstimate m = exp_mbd_moment(cfg).fit("log_mean_slope");
  cfg.p = 3.0;
  const FitEstimate a = exp_annulus(cfg).fit("log_mean_slope");
  const double target_a = cfg.base.d - 3.0;
  const bool ok = std::abs(m.estimate + 2.0) <= 0.5 && std::abs(a.estimate - target_a) <= 0.3 * std::abs(target_a);
  return {ok, fmt("p=2 slope %.3f in [-2.5, -1.5]; annulus p=3 slope %.3f in [%.2f, %.2f]", m.estimate, a.estimate,
                  target_a * 1.3, target_a * 0.7)};
}

Outcome good_points() {
  const StatReport rep = exp_good_points(ExperimentConfig{});
  const double z = rep.scalar("max_abs_z_score");
  return {z <= 3.0, fmt("%.0f cells, max |z| %.2f (tol 3)", static_cast<double>(rep.cells.size()), z)};
}

Outcome coupling() {
  const StatReport rep = exp_coupling(ExperimentConfig{});
  bool ok = rep.cells.back().mean > 0.99;
  double min_lo = 1.0;
  for (const auto& f : rep.fits) {
    ok = ok && f.ci.lo > 0.0;
    min_lo = std::min(min_lo, f.ci.lo);
  }
  return {ok, fmt("mean at h=%.0f is %.6f (> 0.99); smallest increment CI lower bound %.2e (> 0); rejected %.0f",
                  rep.cells.back().coords[0].second, rep.cells.back().mean, min_lo, rep.scalar("rejected_replicas"))};
}

Outcome bplus() {
  const ExperimentConfig cfg;
  const StatReport rep = exp_bplus_volume(cfg);
  const FitEstimate& f = rep.fit("log_volume_slope");
  const double need = cfg.base.d / 2.0 - 0.1;
  return {f.estimate >= need, fmt("exponent %.3f >= %.2f, 95%% CI [%.3f, %.3f]", f.estimate, need, f.ci.lo, f.ci.hi)};
}

Outcome determinism() {
  ExperimentConfig cfg;
  cfg.replicas = 12;
  cfg.bootstrap = 200;
  int differing = 0;
  for (const auto& name : experiment_names()) {
    const StatReport a = run_experiment(name, cfg), b = run_experiment(name, cfg);
    differing += report_to_json(a) != report_to_json(b) || report_to_csv(a) != report_to_csv(b);
  }
  return {differing == 0, fmt("%.0f experiments run twice, %.0f differing outputs",
                              static_cast<double>(experiment_names().size()), differing)};
}

}  // namespace

int main() {
  criterion(1, "geometry oracles", 10, geometry_suite);
  criterion(2, "construction oracles", 60, construction_suite);
  criterion(3, "planarity", 300, planarity_suite);
  criterion(4, "MBD oracle", 120, mbd_suite);
  criterion(5, "straightness envelope", 600, straightness);
  criterion(6, "moment decay", 900, moments);
  criterion(7, "good-point calibration", 300, good_points);
  criterion(8, "coupling trend", 600, coupling);
  criterion(9, "B+ volume bound", 300, bplus);
  criterion(10, "determinism", 1e9, determinism);
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
