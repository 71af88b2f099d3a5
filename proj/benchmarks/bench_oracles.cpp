#include <benchmark/benchmark.h>

#include <vector>

#include "metent/body.hpp"
#include "metent/lp.hpp"
#include "metent/sampling.hpp"

namespace {

std::vector<metent::Vector> directions(std::size_t n, std::size_t count) {
  metent::Rng rng(17);
  std::vector<metent::Vector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(metent::random_direction(rng, n));
  return out;
}

metent::Body hexagon() {
  return metent::Body::vpolytope({{1.0, 0.0}, {0.5, 0.9}, {-0.5, 0.9}});
}

void BM_GaugeEllipsoid(benchmark::State& state) {
  const auto body = metent::Body::ellipsoid({4.0, 1.0});
  const auto dirs = directions(2, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(metent::gauge(body, dirs[i++ & 255]));
}
BENCHMARK(BM_GaugeEllipsoid);

void BM_GaugePolytopeFacets(benchmark::State& state) {
  const auto body = hexagon();
  const auto dirs = directions(2, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(metent::gauge(body, dirs[i++ & 255]));
}
BENCHMARK(BM_GaugePolytopeFacets);

void BM_GaugePolytopeLP(benchmark::State& state) {
  const auto body = hexagon();
  const auto dirs = directions(2, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(metent::vpolytope_gauge_lp(body, dirs[i++ & 255]));
}
BENCHMARK(BM_GaugePolytopeLP);

void BM_GaugeIntersect(benchmark::State& state) {
  const auto body = metent::Body::intersect({hexagon(), metent::Body::ball(2, 0.95)});
  const auto dirs = directions(2, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(metent::gauge(body, dirs[i++ & 255]));
}
BENCHMARK(BM_GaugeIntersect);

void BM_GaugeMinkowski(benchmark::State& state) {
  const auto body = metent::Body::minkowski({hexagon(), metent::Body::ball(2, 0.5)});
  const auto dirs = directions(2, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(metent::gauge(body, dirs[i++ & 63]));
}
BENCHMARK(BM_GaugeMinkowski);

void BM_SimplexDense(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  metent::Rng rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  metent::lp::DenseMatrix a(m, 2 * m);
  std::vector<double> b(m);
  std::vector<double> c(2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < m; ++j) a(r, j) = u(rng);
    a(r, m + r) = 1.0;
    b[r] = 1.0 + u(rng);
  }
  for (std::size_t j = 0; j < m; ++j) c[j] = -u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(metent::lp::minimize(c, a, b));
}
BENCHMARK(BM_SimplexDense)->Arg(4)->Arg(16)->Arg(48);

}  // namespace
