#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "dechyp/fan.hpp"
#include "dechyp/flip.hpp"
#include "dechyp/surface.hpp"
#include "dechyp/triangle.hpp"

namespace {

dechyp::DecoratedSurface fixture(const char* name) {
  return dechyp::load_surface(std::string(DECHYP_FIXTURE_DIR) + "/" + name);
}

void BM_LiftTriangle(benchmark::State& state) {
  dechyp::DecoratedTriangle t;
  t.weights = {1.1, 1.3, 1.2};
  t.lengths = {1.4, 1.5, 1.6};
  for (auto _ : state) benchmark::DoNotOptimize(dechyp::lift_triangle(t));
}
BENCHMARK(BM_LiftTriangle);

void BM_Tilts(benchmark::State& state) {
  dechyp::DecoratedTriangle t;
  t.weights = {1.1, 1.3, 1.2};
  t.lengths = {1.4, 1.5, 1.6};
  for (auto _ : state) benchmark::DoNotOptimize(dechyp::matrix_tilts(t));
}
BENCHMARK(BM_Tilts);

void BM_FlipToDelaunay(benchmark::State& state) {
  const dechyp::DecoratedSurface s = fixture("tri444_skewed.json");
  for (auto _ : state) benchmark::DoNotOptimize(dechyp::flip_to_delaunay(s, s.weights()));
}
BENCHMARK(BM_FlipToDelaunay);

void BM_Fan(benchmark::State& state) {
  const dechyp::DecoratedSurface s = fixture("tri444.json");
  for (auto _ : state) benchmark::DoNotOptimize(dechyp::fan_sample(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Fan)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
