#include "hyperrst/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hyperrst/forest.hpp"
#include "hyperrst/parallel.hpp"
#include "hyperrst/radial_tree.hpp"

namespace hyperrst {
namespace {

using Matrix = std::vector<std::vector<double>>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void require_grid(const std::vector<double>& g, const std::string& name) {
  require(!g.empty(), name + " must be nonempty");
  for (double v : g) require(std::isfinite(v), name + " entries must be finite");
}

Matrix run_replicas(const ExperimentConfig& cfg, std::size_t width,
                    const std::function<std::vector<double>(std::uint64_t)>& fn) {
  Matrix m(static_cast<std::size_t>(cfg.replicas));
  parallel_for(m.size(), [&](std::size_t i) {
    m[i] = fn(i);
    if (m[i].size() != width) throw std::logic_error("replica row has the wrong width");
  });
  return m;
}

// Rows containing a NaN mark rejected replicas.
Matrix accepted_rows(const Matrix& m) {
  Matrix out;
  for (const auto& row : m) {
    if (std::none_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) out.push_back(row);
  }
  return out;
}

std::vector<double> column(const Matrix& m, std::size_t c) {
  std::vector<double> v;
  v.reserve(m.size());
  for (const auto& row : m) v.push_back(row[c]);
  return v;
}

std::vector<double> column_means(const Matrix& m, std::size_t width) {
  std::vector<double> out(width, kNaN);
  for (std::size_t c = 0; c < width; ++c) {
    if (!m.empty()) out[c] = stats::mean(column(m, c));
  }
  return out;
}

CellEstimate make_cell(const Matrix& m, std::size_t c, Coords coords) {
  const auto v = column(m, c);
  CellEstimate cell;
  cell.coords = std::move(coords);
  cell.mean = v.empty() ? kNaN : stats::mean(v);
  cell.se = stats::std_error(v);
  return cell;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& means, const std::vector<std::size_t>& cols) {
  std::vector<double> xs, ys;
  for (std::size_t c : cols) {
    if (!(means[c] > 0.0)) return kNaN;
    xs.push_back(x[c]);
    ys.push_back(std::log(means[c]));
  }
  return stats::ols(xs, ys).slope;
}

// OLS of log cell means against x over the selected columns, with a replica
// bootstrap interval for the slope.
FitEstimate log_slope_fit(const std::string& name, const std::vector<double>& x, const Matrix& m,
                          const std::vector<std::size_t>& cols, const ExperimentConfig& cfg) {
  FitEstimate f;
  f.name = name;
  f.level = cfg.confidence;
  const auto means = column_means(m, x.size());
  std::vector<double> xs, ys;
  for (std::size_t c : cols) {
    if (!(means[c] > 0.0)) {
      f.estimate = f.r2 = f.se = kNaN;
      f.ci = {kNaN, kNaN};
      return f;
    }
    xs.push_back(x[c]);
    ys.push_back(std::log(means[c]));
  }
  const auto line = stats::ols(xs, ys);
  f.estimate = line.slope;
  f.r2 = line.r2;
  f.se = line.slope_se;
  f.ci = stats::bootstrap_interval(
      m, [&](const std::vector<double>& mu) { return log_slope(x, mu, cols); }, cfg.bootstrap, cfg.confidence,
      cfg.base.seed);
  return f;
}

std::vector<std::size_t> all_columns(std::size_t n) {
  std::vector<std::size_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = i;
  return c;
}

StatReport new_report(const std::string& name, const ExperimentConfig& cfg) {
  cfg.validate();
  StatReport r;
  r.experiment = name;
  r.seed = cfg.base.seed;
  r.replicas = cfg.replicas;
  r.config = cfg;
  return r;
}

void require_levels_inside(const ExperimentConfig& cfg, const std::vector<double>& levels, double extra) {
  const double R = cfg.base.R;
  for (double r0 : levels) {
    require(r0 > 1.0 && r0 < R - 1.0, "levels must lie in (1, R - 1)");
    require(r0 + extra <= cfg.r_prime(), "levels plus their cut must stay below R'");
  }
}

std::vector<Direction> probe_directions(const ExperimentConfig& cfg, std::uint64_t replica) {
  Engine eng = make_engine(cfg.base.seed, replica, StreamRole::kProbe);
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(cfg.probes));
  for (int k = 0; k < cfg.probes; ++k) out.push_back(sample_direction(cfg.base.d, eng));
  return out;
}

// Sum over all crossings of S(r) of MBD_r^{r_prime}^p, scaled by the cap
// fraction: by rotation invariance its mean equals the mean of the sum
// restricted to a uniformly placed cap of that half-angle.
double cap_moment(const RadialTree& tree, double r, double r_prime, double p, double half_angle) {
  double s = 0.0;
  for (const auto& rec : deviation_records(tree, r, r_prime)) s += std::pow(rec.mbd, p);
  return cap_fraction(tree.d(), half_angle) * s;
}

// Uniform direction in the cap of half-angle alpha around the first axis.
Direction sample_cap_direction(int d, double alpha, Engine& eng) {
  const double target = uniform_open(eng) * cap_fraction(d, alpha);
  double phi;
  if (d == 1) {
    phi = target * std::numbers::pi;
  } else {
    double lo = 0.0, hi = alpha;
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cap_fraction(d, mid) < target ? lo : hi) = mid;
    }
    phi = 0.5 * (lo + hi);
  }
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c[0] = std::cos(phi);
  if (d == 1) {
    c[1] = (uniform_open(eng) < 0.5 ? -1.0 : 1.0) * std::sin(phi);
  } else {
    std::normal_distribution<double> g;
    double n2 = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
      c[i] = g(eng);
      n2 += c[i] * c[i];
    }
    const double scale = std::sin(phi) / std::sqrt(n2);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] *= scale;
  }
  return Direction(std::move(c));
}

std::string fmt(double v) {
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  base.validate();
  const double R = base.R;
  require(replicas >= 1, "replicas must be >= 1");
  require_grid(r0_grid, "r0_grid");
  for (double r : r0_grid) require(r > 0.0 && r < R, "r0_grid entries must lie in (0, R)");
  require(p >= 1.0, "moment order p must be >= 1");
  require(A > 0.0, "A must be > 0");
  require(delta > 0.0, "delta must be > 0");
  require_grid(h_grid, "h_grid");
  for (double h : h_grid) require(h >= 0.0, "h_grid entries must be >= 0");
  require(r_prime_gap >= 0.0 && r_prime_gap < R, "r_prime_gap must lie in [0, R)");
  require(theta > 0.0 && theta <= std::numbers::pi, "theta must lie in (0, pi]");
  require(probes >= 1, "probes must be >= 1");
  require(bootstrap >= 1, "bootstrap must be >= 1");
  require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  require(good_r0 > 0.0 && good_r0 < R, "good_r0 must lie in (0, R)");
  require_grid(A_grid, "A_grid");
  for (double a : A_grid) require(a > 0.0, "A_grid entries must be > 0");
  require_grid(delta_grid, "delta_grid");
  for (double dl : delta_grid) require(dl > 0.0, "delta_grid entries must be > 0");
  require(coupling_A > 0.0, "coupling_A must be > 0");
  require(coupling_a >= 0.0, "coupling_a must be >= 0");
  window().validate();
  require_grid(bplus_r_grid, "bplus_r_grid");
  for (double r : bplus_r_grid) require(r > 0.0, "bplus_r_grid entries must be > 0");
  require_grid(bplus_rho_grid, "bplus_rho_grid");
  for (double rho : bplus_rho_grid) require(rho >= 0.0, "bplus_rho_grid entries must be >= 0");
  require(bplus_samples >= 1, "bplus_samples must be >= 1");
  require(confinement_h > 0.0 && confinement_h < R, "confinement_h must lie in (0, R)");
  require_grid(confinement_A_grid, "confinement_A_grid");
  for (double a : confinement_A_grid) require(a > 0.0, "confinement_A_grid entries must be > 0");
  require(tail_leaves >= 1, "tail_leaves must be >= 1");
}

const FitEstimate& StatReport::fit(const std::string& name) const {
  for (const auto& f : fits) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("no fit named " + name);
}

double StatReport::scalar(const std::string& name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  throw std::out_of_range("no scalar named " + name);
}

StatReport exp_straightness(const ExperimentConfig& cfg) {
  StatReport rep = new_report("straightness", cfg);
  require_levels_inside(cfg, cfg.r0_grid, 0.0);
  const auto& grid = cfg.r0_grid;
  const double rp = cfg.r_prime();
  rep.replica_values = run_replicas(cfg, grid.size(), [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    std::vector<double> row;
    for (double r0 : grid) {
      double m = 0.0;
      for (const auto& rec : deviation_records(tree, r0, rp)) m = std::max(m, rec.mbd);
      row.push_back(m);
    }
    return row;
  });
  const Matrix& m = rep.replica_values;
  for (std::size_t c = 0; c < grid.size(); ++c) rep.cells.push_back(make_cell(m, c, {{"r0", grid[c]}, {"r_prime", rp}}));
  rep.fits.push_back(log_slope_fit("log_mean_slope", grid, m, all_columns(grid.size()), cfg));
  bool decreasing = true;
  for (std::size_t c = 1; c < rep.cells.size(); ++c) decreasing = decreasing && rep.cells[c].mean < rep.cells[c - 1].mean;
  rep.scalars.emplace_back("log_mean_decreasing", decreasing ? 1.0 : 0.0);
  return rep;
}

StatReport exp_mbd_moment(const ExperimentConfig& cfg) {
  StatReport rep = new_report("mbd_moment", cfg);
  require_levels_inside(cfg, cfg.r0_grid, 0.0);
  const auto& grid = cfg.r0_grid;
  const double rp = cfg.r_prime();
  rep.replica_values = run_replicas(cfg, grid.size(), [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    std::vector<double> row;
    for (double r0 : grid) row.push_back(cap_moment(tree, r0, rp, cfg.p, cfg.A * std::exp(-r0)));
    return row;
  });
  for (std::size_t c = 0; c < grid.size(); ++c) {
    rep.cells.push_back(make_cell(rep.replica_values, c, {{"r0", grid[c]}, {"cap", cfg.A * std::exp(-grid[c])}}));
  }
  rep.fits.push_back(log_slope_fit("log_mean_slope", grid, rep.replica_values, all_columns(grid.size()), cfg));
  rep.scalars.emplace_back("p", cfg.p);
  rep.scalars.emplace_back("expected_slope", -cfg.p);
  return rep;
}

StatReport exp_annulus(const ExperimentConfig& cfg) {
  StatReport rep = new_report("annulus", cfg);
  require_levels_inside(cfg, cfg.r0_grid, cfg.delta);
  const auto& grid = cfg.r0_grid;
  rep.replica_values = run_replicas(cfg, grid.size(), [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    std::vector<double> row;
    for (double r : grid) row.push_back(cap_moment(tree, r, r + cfg.delta, cfg.p, cfg.theta));
    return row;
  });
  for (std::size_t c = 0; c < grid.size(); ++c) {
    rep.cells.push_back(make_cell(rep.replica_values, c, {{"r", grid[c]}, {"delta", cfg.delta}}));
  }
  rep.fits.push_back(log_slope_fit("log_mean_slope", grid, rep.replica_values, all_columns(grid.size()), cfg));
  rep.scalars.emplace_back("p", cfg.p);
  rep.scalars.emplace_back("expected_slope", cfg.base.d - cfg.p);
  return rep;
}

StatReport exp_good_points(const ExperimentConfig& cfg) {
  StatReport rep = new_report("good_points", cfg);
  const double r0 = cfg.good_r0;
  const double dmax = *std::max_element(cfg.delta_grid.begin(), cfg.delta_grid.end());
  require(r0 + dmax <= cfg.base.R, "good_r0 + delta must not exceed R");
  const int d = cfg.base.d;
  const double scale = std::exp(-r0);
  struct Cell {
    double A, delta;
  };
  std::vector<Cell> cells;
  for (double a : cfg.A_grid) {
    for (double dl : cfg.delta_grid) cells.push_back({a, dl});
  }
  rep.replica_values = run_replicas(cfg, cells.size(), [&](std::uint64_t rep_id) {
    const PointCloud cloud = sample_ball(cfg.base, rep_id);
    const auto probes = probe_directions(cfg, rep_id);
    std::vector<std::pair<double, const PolarPoint*>> near;
    for (const auto& q : cloud.points) {
      if (q.r >= r0 - 1.0 && q.r < r0 + dmax) near.emplace_back(q.r, &q);
    }
    std::vector<double> row(cells.size(), 0.0);
    std::vector<double> ang(near.size());
    for (const auto& u : probes) {
      for (std::size_t k = 0; k < near.size(); ++k) ang[k] = angle_between(u, near[k].second->u);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const double wide = 3.0 * cells[c].A * scale, narrow = cells[c].A * scale;
        bool void1 = true, occupied2 = false;
        for (std::size_t k = 0; k < near.size() && void1; ++k) {
          const double r = near[k].first;
          if (r >= r0 && r < r0 + cells[c].delta && ang[k] <= wide) void1 = false;
          if (r < r0 && ang[k] <= narrow) occupied2 = true;
        }
        if (void1 && occupied2) row[c] += 1.0;
      }
    }
    for (double& v : row) v /= static_cast<double>(probes.size());
    return row;
  });
  const double area = sphere_area(d);
  double max_z = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto cell = make_cell(rep.replica_values, c, {{"A", cells[c].A}, {"delta", cells[c].delta}, {"r0", r0}});
    const double v1 = cap_fraction(d, std::min(3.0 * cells[c].A * scale, std::numbers::pi)) * area *
                      sinh_power_integral(d, r0, r0 + cells[c].delta);
    const double v2 = cap_fraction(d, std::min(cells[c].A * scale, std::numbers::pi)) * area *
                      sinh_power_integral(d, std::max(r0 - 1.0, 0.0), r0);
    const double lam = cfg.base.lambda;
    const double analytic = std::exp(-lam * v1) * -std::expm1(-lam * v2);
    const double diff = cell.mean - analytic;
    const double z = cell.se > 0.0 ? diff / cell.se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    max_z = std::max(max_z, std::abs(z));
    cell.extra = {{"analytic", analytic}, {"z_score", z}, {"vol_psi1", v1}, {"vol_psi2", v2}};
    rep.cells.push_back(std::move(cell));
  }
  rep.scalars.emplace_back("max_abs_z_score", max_z);
  return rep;
}

StatReport exp_level_counts(const ExperimentConfig& cfg) {
  StatReport rep = new_report("level_counts", cfg);
  const auto& grid = cfg.r0_grid;
  const std::size_t n = grid.size();
  rep.replica_values = run_replicas(cfg, 2 * n, [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    const auto probes = probe_directions(cfg, rep_id);
    std::vector<double> row(2 * n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const auto crossings = level_crossings(tree, grid[c]);
      const double cap = std::exp(-grid[c]);
      for (const auto& u : probes) {
        double count = 0.0;
        for (const auto& x : crossings) {
          if (angle_between(u, x.point.u) <= cap) count += 1.0;
        }
        row[c] += std::pow(count, cfg.p);
        row[n + c] += count;
      }
      row[c] /= static_cast<double>(probes.size());
      row[n + c] /= static_cast<double>(probes.size());
    }
    return row;
  });
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    auto cell = make_cell(rep.replica_values, c, {{"r0", grid[c]}});
    const auto first = make_cell(rep.replica_values, n + c, {});
    cell.extra = {{"first_moment", first.mean}, {"first_moment_se", first.se}};
    lo = std::min(lo, cell.mean);
    hi = std::max(hi, cell.mean);
    rep.cells.push_back(std::move(cell));
  }
  std::vector<double> x(grid);
  x.resize(2 * n, 0.0);
  rep.fits.push_back(log_slope_fit("log_mean_slope", x, rep.replica_values, all_columns(n), cfg));
  rep.scalars.emplace_back("max_over_min", lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
  return rep;
}

StatReport exp_bplus_volume(const ExperimentConfig& cfg) {
  StatReport rep = new_report("bplus_volume", cfg);
  const int d = cfg.base.d;
  struct Cell {
    double r, rho;
  };
  std::vector<Cell> cells;
  for (double r : cfg.bplus_r_grid) {
    for (double rho : cfg.bplus_rho_grid) cells.push_back({r, rho});
  }
  std::vector<RadialLaw> laws;
  for (double r : cfg.bplus_r_grid) laws.emplace_back(d, r);
  const std::size_t nrho = cfg.bplus_rho_grid.size();
  rep.replica_values = run_replicas(cfg, cells.size(), [&](std::uint64_t rep_id) {
    Engine eng = make_engine(cfg.base.seed, rep_id, StreamRole::kIntegration);
    std::vector<double> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto [r, rho] = cells[c];
      if (rho == 0.0) {
        row.push_back(0.0);
        continue;
      }
      const RadialLaw& law = laws[c / nrho];
      const PolarPoint z{r, Direction::basis(static_cast<std::size_t>(d) + 1)};
      const double lo = std::max(r - rho, 0.0);
      const double alpha = rho >= r ? std::numbers::pi : std::asin(std::min(1.0, std::sinh(rho) / std::sinh(r)));
      const double proposal = cap_fraction(d, alpha) * sphere_area(d) * sinh_power_integral(d, lo, r);
      const double f_lo = law.cdf(lo);
      std::size_t hits = 0;
      for (int k = 0; k < cfg.bplus_samples; ++k) {
        PolarPoint q;
        q.r = law.quantile(f_lo + uniform_open(eng) * (1.0 - f_lo));
        q.u = sample_cap_direction(d, alpha, eng);
        if (bplus_region_test(z, rho, q)) ++hits;
      }
      row.push_back(proposal * static_cast<double>(hits) / cfg.bplus_samples);
    }
    return row;
  });
  std::vector<double> x;
  std::vector<std::size_t> fit_cols;
  double containment = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [r, rho] = cells[c];
    auto cell = make_cell(rep.replica_values, c, {{"r", r}, {"rho", rho}, {"min_rho_r", std::min(rho, r)}});
    cell.extra = {{"ball_volume_r", ball_volume(d, r)}};
    x.push_back(std::min(rho, r));
    if (cell.mean > 0.0) fit_cols.push_back(c);
    if (rho >= 2.0 * r) containment = std::min(containment, cell.mean / ball_volume(d, r));
    rep.cells.push_back(std::move(cell));
  }
  require(fit_cols.size() >= 2, "bplus grid needs at least two cells with positive volume");
  rep.fits.push_back(log_slope_fit("log_volume_slope", x, rep.replica_values, fit_cols, cfg));
  rep.scalars.emplace_back("required_slope", d / 2.0 - 0.1);
  if (std::isfinite(containment)) rep.scalars.emplace_back("containment_ratio_min", containment);
  return rep;
}

StatReport exp_coupling(const ExperimentConfig& cfg) {
  StatReport rep = new_report("coupling", cfg);
  const auto& hs = cfg.h_grid;
  const HalfWindow window = cfg.window();
  const RegionSpec K{RegionSpec::Kind::kCylPrime, cfg.coupling_A, cfg.coupling_a, 0.0};
  K.validate();
  require(cfg.coupling_A < window.half_width, "region Cyl' must fit inside the window");
  require(0.5 * std::exp(-cfg.coupling_a) >= window.y_min && 1.5 <= window.y_max,
          "region Cyl' must fit inside the window");
  rep.replica_values = run_replicas(cfg, hs.size(), [&](std::uint64_t rep_id) {
    const HalfNeighborIndex index(sample_half(cfg.base.lambda, cfg.base.d, window, cfg.base.seed, rep_id));
    std::vector<double> row;
    for (double h : hs) {
      const auto res = coupling_fraction(index, window, K, h);
      if (!res.valid()) return std::vector<double>(hs.size(), kNaN);
      row.push_back(res.fraction);
    }
    return row;
  });
  const Matrix ok = accepted_rows(rep.replica_values);
  const auto rejected = rep.replica_values.size() - ok.size();
  if (ok.empty()) throw std::runtime_error("every coupling replica failed the window margin audit");
  double first = -1.0;
  for (std::size_t c = 0; c < hs.size(); ++c) {
    rep.cells.push_back(make_cell(ok, c, {{"h", hs[c]}}));
    if (first < 0.0 && rep.cells.back().mean > 0.99) first = hs[c];
  }
  double min_lower = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c + 1 < hs.size(); ++c) {
    FitEstimate f;
    f.name = "increment_h" + fmt(hs[c]) + "_h" + fmt(hs[c + 1]);
    f.level = cfg.confidence;
    f.estimate = rep.cells[c + 1].mean - rep.cells[c].mean;
    std::vector<double> diffs;
    for (const auto& row : ok) diffs.push_back(row[c + 1] - row[c]);
    f.se = stats::std_error(diffs);
    f.ci = stats::bootstrap_interval(
        ok, [c](const std::vector<double>& mu) { return mu[c + 1] - mu[c]; }, cfg.bootstrap, cfg.confidence,
        cfg.base.seed);
    min_lower = std::min(min_lower, f.ci.lo);
    rep.fits.push_back(f);
  }
  rep.scalars.emplace_back("rejected_replicas", static_cast<double>(rejected));
  rep.scalars.emplace_back("first_h_above_0_99", first);
  if (hs.size() > 1) rep.scalars.emplace_back("min_increment_lower", min_lower);
  return rep;
}

StatReport exp_confinement(const ExperimentConfig& cfg) {
  StatReport rep = new_report("confinement", cfg);
  const double h = cfg.confinement_h;
  const double rp = cfg.r_prime();
  require(h < rp, "confinement_h must lie below R'");
  const auto& grid = cfg.confinement_A_grid;
  const double scale = std::exp(-h);
  rep.replica_values = run_replicas(cfg, grid.size(), [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    const auto records = deviation_records(tree, h, rp);
    const auto probes = probe_directions(cfg, rep_id);
    std::vector<double> row(grid.size(), 0.0);
    std::vector<double> ang(records.size());
    for (const auto& u : probes) {
      for (std::size_t k = 0; k < records.size(); ++k) ang[k] = angle_between(u, records[k].crossing.point.u);
      for (std::size_t c = 0; c < grid.size(); ++c) {
        bool confined = true;
        for (std::size_t k = 0; k < records.size() && confined; ++k) {
          if (ang[k] <= 2.0 * grid[c] * scale && records[k].mbd > grid[c] * scale) confined = false;
        }
        if (confined) row[c] += 1.0;
      }
    }
    for (double& v : row) v /= static_cast<double>(probes.size());
    return row;
  });
  bool monotone = true;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    rep.cells.push_back(make_cell(rep.replica_values, c, {{"A", grid[c]}, {"h", h}, {"r_prime", rp}}));
    if (c > 0) monotone = monotone && rep.cells[c].mean >= rep.cells[c - 1].mean;
  }
  rep.scalars.emplace_back("non_decreasing_in_A", monotone ? 1.0 : 0.0);
  return rep;
}

StatReport exp_direction_convergence(const ExperimentConfig& cfg) {
  StatReport rep = new_report("direction_convergence", cfg);
  const auto& grid = cfg.r0_grid;
  std::vector<double> worst(static_cast<std::size_t>(cfg.replicas), 0.0);
  rep.replica_values = run_replicas(cfg, grid.size(), [&](std::uint64_t rep_id) {
    const RadialTree tree = build_rst(sample_ball(cfg.base, rep_id));
    std::vector<std::pair<std::size_t, NodeId>> leaves;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const auto id = static_cast<NodeId>(i);
      if (tree.children(id).empty()) leaves.emplace_back(trajectory(tree, id).size(), id);
    }
    std::sort(leaves.begin(), leaves.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      if (tree.radius(a.second) != tree.radius(b.second)) return tree.radius(a.second) > tree.radius(b.second);
      return a.second < b.second;
    });
    leaves.resize(std::min(leaves.size(), static_cast<std::size_t>(cfg.tail_leaves)));
    std::vector<double> row(grid.size(), 0.0);
    if (leaves.empty()) return row;
    double excess = 0.0;
    for (const auto& [len, leaf] : leaves) {
      const LevelCrossing tip = crossing_on_edge(tree, leaf, tree.radius(leaf));
      for (std::size_t c = 0; c < grid.size(); ++c) {
        if (!(grid[c] < tip.level)) continue;
        const double total = cfd(tree, grid[c], tip);
        const double net = origin_angle(ancestor_at_level(tree, tip, grid[c]).point, tip.point);
        excess = std::max(excess, net - total);
        row[c] += total;
      }
    }
    worst[rep_id] = excess;
    for (double& v : row) v /= static_cast<double>(leaves.size());
    return row;
  });
  std::size_t shrinking = 0;
  for (const auto& row : rep.replica_values) {
    if (row.back() < row.front()) ++shrinking;
  }
  for (std::size_t c = 0; c < grid.size(); ++c) rep.cells.push_back(make_cell(rep.replica_values, c, {{"r", grid[c]}}));
  rep.scalars.emplace_back("fraction_tail_shrinks",
                           static_cast<double>(shrinking) / static_cast<double>(rep.replica_values.size()));
  rep.scalars.emplace_back("max_net_minus_total", *std::max_element(worst.begin(), worst.end()));
  return rep;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"straightness", "mbd_moment",  "annulus",
                                              "good_points",  "level_counts", "bplus_volume",
                                              "coupling",     "confinement", "direction_convergence"};
  return names;
}

StatReport run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "straightness") return exp_straightness(cfg);
  if (name == "mbd_moment") return exp_mbd_moment(cfg);
  if (name == "annulus") return exp_annulus(cfg);
  if (name == "good_points") return exp_good_points(cfg);
  if (name == "level_counts") return exp_level_counts(cfg);
  if (name == "bplus_volume") return exp_bplus_volume(cfg);
  if (name == "coupling") return exp_coupling(cfg);
  if (name == "confinement") return exp_confinement(cfg);
  if (name == "direction_convergence") return exp_direction_convergence(cfg);
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace hyperrst
