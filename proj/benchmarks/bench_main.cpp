#include <benchmark/benchmark.h>

#include <sphaera/reuleaux.hpp>
#include <sphaera/width_diameter.hpp>

using namespace sphaera;

namespace {

Body reuleaux(int n) {
  ReuleauxSpec spec;
  spec.n = n;
  spec.delta = 1.0;
  return regular_reuleaux(spec);
}

void BM_WidthGivenSupport(benchmark::State& state) {
  const Body body = reuleaux(static_cast<int>(state.range(0)));
  const auto ks = polar_boundary_sample(body, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(width_given_support(body, ks[i++ % ks.size()]));
}
BENCHMARK(BM_WidthGivenSupport)->Arg(3)->Arg(9);

void BM_Diameter(benchmark::State& state) {
  const Body body = reuleaux(static_cast<int>(state.range(0)));
  const SweepOptions opts{static_cast<std::size_t>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(diameter(body, opts).delta);
}
BENCHMARK(BM_Diameter)->Args({3, 512})->Args({3, 2048})->Args({9, 2048})->Unit(benchmark::kMillisecond);

void BM_CheckConstantWidth(benchmark::State& state) {
  const Body body = reuleaux(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_constant_width(body).verdict);
}
BENCHMARK(BM_CheckConstantWidth)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_WidthOracle(benchmark::State& state) {
  const Body body = reuleaux(5);
  const SpherePoint k = polar_boundary_sample(body, 1).front();
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(width_oracle(body, k, grid));
}
BENCHMARK(BM_WidthOracle)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
