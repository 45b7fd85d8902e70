#include <benchmark/benchmark.h>

#include "hyperrst/forest.hpp"
#include "hyperrst/radial_tree.hpp"
#include "hyperrst/sampler.hpp"

using namespace hyperrst;

static void BM_SampleBall(benchmark::State& state) {
  // About 13k points for d = 1 and 35k for d = 2.
  const int d = static_cast<int>(state.range(0));
  const CloudConfig cfg{d, d == 1 ? 30.0 : 1.0, d == 1 ? 5.0 : 4.5, 1};
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_ball(cfg, rep++));
}
BENCHMARK(BM_SampleBall)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_BuildRst(benchmark::State& state) {
  const PointCloud cloud = sample_ball_n({static_cast<int>(state.range(1)), 1.0, 6.0, 2}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_rst(cloud));
}
BENCHMARK(BM_BuildRst)
    ->ArgsProduct({{2000, 8000, 32000}, {1, 2}})
    ->Unit(benchmark::kMillisecond);

static void BM_BuildDsf(benchmark::State& state) {
  const auto pts = sample_half_n(static_cast<std::size_t>(state.range(0)), 1, {50.0, 0.05, 5.0}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_dsf(pts));
}
BENCHMARK(BM_BuildDsf)->Arg(2000)->Arg(8000)->Arg(32000)->Unit(benchmark::kMillisecond);

static void BM_DeviationRecords(benchmark::State& state) {
  const RadialTree tree = build_rst(sample_ball({1, 30.0, 5.0, 4}));
  for (auto _ : state) benchmark::DoNotOptimize(deviation_records(tree, 2.0, 4.5));
}
BENCHMARK(BM_DeviationRecords)->Unit(benchmark::kMillisecond);

static void BM_Planarity(benchmark::State& state) {
  const RadialTree tree = build_rst(sample_ball({1, 30.0, 5.0, 5}));
  for (auto _ : state) benchmark::DoNotOptimize(planarity_check(tree));
}
BENCHMARK(BM_Planarity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
