#include <benchmark/benchmark.h>

#include "metent/covering.hpp"
#include "metent/set_cover.hpp"

namespace {

void BM_CoveringEllipse(benchmark::State& state) {
  const auto k = metent::Body::ellipsoid({4.0, 1.0});
  const auto d = metent::Body::ball(2, 1.0);
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(metent::covering_bounds(k, d, 1.0, budget, 3));
}
BENCHMARK(BM_CoveringEllipse)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_CoveringInterval(benchmark::State& state) {
  const auto k = metent::Body::ball(1, 20.0);
  const auto d = metent::Body::ball(1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(metent::covering_bounds(k, d, 1.0, 2000, 1));
}
BENCHMARK(BM_CoveringInterval)->Unit(benchmark::kMillisecond);

void BM_GreedySeparated(benchmark::State& state) {
  const auto k = metent::Body::vpolytope({{2.0, 0.0}, {1.0, 1.7}, {-1.0, 1.7}});
  const auto d = metent::Body::ball(2, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(metent::greedy_separated(k, d, 0.5, 20000, 9));
}
BENCHMARK(BM_GreedySeparated)->Unit(benchmark::kMillisecond);

void BM_ExactDiskCover(benchmark::State& state) {
  const auto k = metent::Body::ball(2, 1.9);
  const auto d = metent::Body::ball(2, 1.0);
  const auto lattice = metent::symmetric_lattice(k, 0.05);
  for (auto _ : state)
    benchmark::DoNotOptimize(metent::exact_cover_small(k, d, 1.0, lattice, 200000));
}
BENCHMARK(BM_ExactDiskCover)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
