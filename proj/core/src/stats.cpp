#include "hyperrst/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperrst/rng.hpp"

namespace hyperrst::stats {

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double std_error(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  return stddev(v) / std::sqrt(static_cast<double>(v.size()));
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ols needs two or more paired points");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    rss += e * e;
  }
  f.r2 = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  if (x.size() > 2) f.slope_se = std::sqrt(rss / static_cast<double>(x.size() - 2) / sxx);
  return f;
}

Interval bootstrap_interval(const std::vector<std::vector<double>>& per_replica,
                            const std::function<double(const std::vector<double>&)>& statistic, int resamples,
                            double level, std::uint64_t seed) {
  if (per_replica.empty()) throw std::invalid_argument("bootstrap needs replicas");
  if (resamples < 1) throw std::invalid_argument("bootstrap needs resamples >= 1");
  const std::size_t n = per_replica.size();
  const std::size_t cells = per_replica.front().size();
  Engine eng = make_engine(seed, 0, StreamRole::kBootstrap);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(resamples));
  std::vector<double> means(cells);
  for (int b = 0; b < resamples; ++b) {
    std::fill(means.begin(), means.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = per_replica[pick(eng)];
      for (std::size_t c = 0; c < cells; ++c) means[c] += row[c];
    }
    for (double& m : means) m /= static_cast<double>(n);
    const double v = statistic(means);
    if (std::isfinite(v)) values.push_back(v);
  }
  if (values.empty()) return {std::nan(""), std::nan("")};
  const double tail = 0.5 * (1.0 - level);
  return {quantile(values, tail), quantile(values, 1.0 - tail)};
}

}  // namespace hyperrst::stats
