#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperrst/sampler.hpp"
#include "hyperrst/stats.hpp"

namespace hyperrst {

/// Parameters shared by all Monte Carlo experiments. Each experiment reads
/// the fields it needs and ignores the rest.
struct ExperimentConfig {
  CloudConfig base;
  int replicas = 100;
  std::vector<double> r0_grid{1.5, 2.0, 2.5, 3.0, 3.5};
  double p = 2.0;
  double A = 3.0;
  double delta = 0.3;
  std::vector<double> h_grid{2.0, 4.0, 6.0, 8.0, 10.0};
  std::string output_path;

  double r_prime_gap = 0.5;  // deviations are cut at R' = R - r_prime_gap
  double theta = 0.5;        // cap half-angle of the annulus sums
  int probes = 32;           // probe directions per replica
  int bootstrap = 1000;
  double confidence = 0.95;

  double good_r0 = 2.0;
  std::vector<double> A_grid{0.05, 0.1, 0.2};
  std::vector<double> delta_grid{0.05, 0.1, 0.2};

  double coupling_A = 250.0;  // width of the compact set Cyl'(coupling_A, coupling_a)
  double coupling_a = 0.5;
  double window_half_width = 253.5;
  double window_y_min = 0.067;
  double window_y_max = 6.7;

  std::vector<double> bplus_r_grid{1.0, 2.0, 3.0, 4.0};
  std::vector<double> bplus_rho_grid{0.25, 0.5, 1.0, 2.0, 3.0, 8.0};
  int bplus_samples = 4000;

  double confinement_h = 2.0;
  std::vector<double> confinement_A_grid{1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 8.0};

  int tail_leaves = 8;

  double r_prime() const { return base.R - r_prime_gap; }
  HalfWindow window() const { return {window_half_width, window_y_min, window_y_max}; }

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

using Coords = std::vector<std::pair<std::string, double>>;

struct CellEstimate {
  Coords coords;
  double mean = 0.0;
  double se = 0.0;  // across replicas
  Coords extra;
};

struct FitEstimate {
  std::string name;
  double estimate = 0.0;
  double r2 = 0.0;
  double se = 0.0;
  stats::Interval ci;  // replica bootstrap
  double level = 0.95;
};

struct StatReport {
  std::string experiment;
  std::uint64_t seed = 0;
  int replicas = 0;
  ExperimentConfig config;
  std::vector<CellEstimate> cells;
  std::vector<FitEstimate> fits;
  Coords scalars;
  std::vector<std::vector<double>> replica_values;  // replica x cell

  /// Throws std::out_of_range when absent.
  const FitEstimate& fit(const std::string& name) const;
  double scalar(const std::string& name) const;
};

/// Max over the crossings z of S(r0) of MBD_{r0}^{R'}(z); log-mean slope in r0.
StatReport exp_straightness(const ExperimentConfig& cfg);

/// Sum of MBD_{r0}^{R'}(z)^p over crossings in a cap of half-angle A e^{-r0}.
StatReport exp_mbd_moment(const ExperimentConfig& cfg);

/// Sum of MBD_r^{r+delta}(z)^p over crossings in a cap of half-angle theta.
StatReport exp_annulus(const ExperimentConfig& cfg);

/// Probability that a point of S(good_r0) is good, over A_grid x delta_grid,
/// with the exact Poisson void benchmark.
StatReport exp_good_points(const ExperimentConfig& cfg);

/// p-th moment of the number of crossings of S(r0) in a cap of half-angle e^{-r0}.
StatReport exp_level_counts(const ExperimentConfig& cfg);

/// Importance-sampled volume of B+(z, rho) over bplus_r_grid x bplus_rho_grid.
StatReport exp_bplus_volume(const ExperimentConfig& cfg);

/// Fraction of points of Cyl'(A, coupling_a) whose RST(h) and DSF parents agree.
StatReport exp_coupling(const ExperimentConfig& cfg);

/// Probability that every crossing of S(h) within 2A e^{-h} of a probe has
/// MBD_h^{R'} <= A e^{-h}, over confinement_A_grid.
StatReport exp_confinement(const ExperimentConfig& cfg);

/// Tail angular variation beyond r of the deepest backward paths.
StatReport exp_direction_convergence(const ExperimentConfig& cfg);

const std::vector<std::string>& experiment_names();

/// Dispatches by name; throws std::invalid_argument for unknown names.
StatReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace hyperrst
