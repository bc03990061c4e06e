#include <benchmark/benchmark.h>

#include "escapelab/closedform.hpp"
#include "escapelab/escape.hpp"
#include "escapelab/paths.hpp"
#include "escapelab/rng.hpp"
#include "escapelab/sampling.hpp"

using namespace escapelab;

static void BM_MeanEscapeQuadratureLine(benchmark::State& state) {
  escape::QuadratureSettings settings;
  settings.h = 1.0 / static_cast<double>(state.range(0));
  settings.t_cap = 3.0;
  const auto line = paths::Line::axis(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(escape::mean_escape_quadrature(line, settings).value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanEscapeQuadratureLine)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

static void BM_PathEscapeTimeChain(benchmark::State& state) {
  const paths::PolyChain chain({0.5, 0.5, 0.5},
                               {VecN{1.0, 0.0}, VecN{0.0, 1.0}, VecN{-1.0, 0.0}});
  const paths::UnitSpeedPath path = chain;
  Rng rng(5);
  for (auto _ : state) {
    const VecN x = geom::uniform_ball_sample(2, rng);
    benchmark::DoNotOptimize(escape::path_escape_time(path, x).t);
  }
}
BENCHMARK(BM_PathEscapeTimeChain);

static void BM_MeanEscapeMonteCarlo(benchmark::State& state) {
  const auto line = paths::Line::axis(3);
  for (auto _ : state) {
    Rng rng(99);
    benchmark::DoNotOptimize(
        escape::mean_escape_monte_carlo(line, 3, state.range(0), rng).value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanEscapeMonteCarlo)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

static void BM_AdaptiveLineQuadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(escape::mean_escape_line_quadrature(1e-8).value);
  }
}
BENCHMARK(BM_AdaptiveLineQuadrature);

static void BM_ExpectedLinearEscape(benchmark::State& state) {
  std::size_t n = 1;
  for (auto _ : state) {
    n = n % 1000 + 1;
    benchmark::DoNotOptimize(closedform::expected_linear_escape(n));
  }
}
BENCHMARK(BM_ExpectedLinearEscape);

BENCHMARK_MAIN();
