#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "escapelab/disk_area.hpp"
#include "escapelab/rng.hpp"

using namespace escapelab;

namespace {

geom::DiskConfig random_config(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VecN> centers;
  std::vector<double> radii;
  for (std::size_t i = 0; i < n; ++i) {
    centers.push_back(VecN{rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0)});
    radii.push_back(rng.next_uniform(0.5, 1.5));
  }
  return geom::DiskConfig(std::move(centers), std::move(radii));
}

}  // namespace

static void BM_LensArea(benchmark::State& state) {
  double d = 0.0;
  for (auto _ : state) {
    d += 1e-9;
    benchmark::DoNotOptimize(geom::lens_area(1.0 + d, 1.0, 1.0));
  }
}
BENCHMARK(BM_LensArea);

static void BM_IntersectionArea(benchmark::State& state) {
  const auto cfg = random_config(state.range(0), 1234);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::intersection_area_2d(cfg).area);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntersectionArea)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_UnionInclusionExclusion(benchmark::State& state) {
  const auto cfg = random_config(state.range(0), 77);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::union_area_2d(cfg).value);
  }
}
BENCHMARK(BM_UnionInclusionExclusion)->DenseRange(4, 12, 4);

static void BM_IncrementalClip(benchmark::State& state) {
  // random walk of unit disks, the access pattern of the escape quadrature
  const std::size_t steps = state.range(0);
  Rng rng(4321);
  std::vector<Vec2> walk;
  Vec2 pos{0.0, 0.0};
  for (std::size_t i = 0; i < steps; ++i) {
    const double angle = rng.next_uniform(0.0, 2.0 * 3.14159265358979323846);
    pos += Vec2{0.01 * std::cos(angle), 0.01 * std::sin(angle)};
    walk.push_back(pos);
  }
  for (auto _ : state) {
    geom::DiskIntersectionAccumulator acc(1.0);
    for (const Vec2 c : walk) acc.add_disk(c);
    benchmark::DoNotOptimize(acc.area());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IncrementalClip)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

BENCHMARK_MAIN();
