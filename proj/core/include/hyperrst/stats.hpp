#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hyperrst::stats {

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> v);
/// Standard error of the mean.
double std_error(std::span<const double> v);
/// Linear-interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> v, double q);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_se = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LineFit ols(std::span<const double> x, std::span<const double> y);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Percentile bootstrap over replicas. `per_replica[i][c]` is replica i's
/// value in cell c; each resample averages the cells over replicas drawn with
/// replacement and evaluates `statistic` on the cell means. Deterministic in seed.
Interval bootstrap_interval(const std::vector<std::vector<double>>& per_replica,
                            const std::function<double(const std::vector<double>&)>& statistic, int resamples,
                            double level, std::uint64_t seed);

}  // namespace hyperrst::stats
