#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "metent/constructions.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

using namespace metent;

namespace {

SeparatedSet points_1d(std::vector<double> xs, double sep, const Body& container) {
  SeparatedSet s{{}, sep, Body::ball(1, 1.0), container};
  for (double x : xs) s.points.push_back({x});
  return s;
}

std::vector<double> arithmetic(double from, double step, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(from + step * i);
  return v;
}

double min_gauge_gap(const std::vector<Vector>& pts, const Body& g) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, gauge(g, pts[i] - pts[j]));
  return best;
}

Body rotated_square(double circumradius, double angle) {
  const Vector v1{circumradius * std::cos(angle), circumradius * std::sin(angle)};
  const Vector v2{-v1[1], v1[0]};
  return Body::vpolytope({v1, v2});
}

CombinerInput planar_instance(const Body& k, double a, double b, double A, double B,
                              std::uint64_t seed) {
  const std::size_t n = k.dim();
  const Body d = Body::ball(n, 1.0);
  SeparationOptions ff;
  ff.strategy = PackingStrategy::first_fit;
  auto xs = greedy_separated(Body::intersect({k, Body::ball(n, A)}), d, a, 3000, derive_seed(seed, 0), ff);
  auto ys = greedy_separated(Body::intersect({k, Body::ball(n, B)}), d, b, 3000, derive_seed(seed, 1), ff);
  xs.container = k;
  ys.container = k;
  return {xs, ys, a, b, A, B};
}

}  // namespace

TEST_CASE("one-dimensional primal combination") {
  const Body k = Body::ball(1, 40.0);
  const CombinerInput in{points_1d(arithmetic(-39.0, 13.0, 7), 13.0, k),
                         points_1d(arithmetic(-4.0, 1.0, 9), 1.0, k), 13.0, 1.0, 40.0, 4.0};
  const auto z = primal_combine(in);
  REQUIRE(z.points.size() == 63);
  std::vector<double> vals;
  for (const auto& p : z.points) vals.push_back(p[0]);
  std::sort(vals.begin(), vals.end());
  CHECK(std::adjacent_find(vals.begin(), vals.end()) == vals.end());
  double gap = 1e300;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) gap = std::min(gap, vals[i + 1] - vals[i]);
  // Input gaps equal a and b exactly, so the product gap is exactly b/2.
  CHECK(gap == doctest::Approx(0.5));
  CHECK(z.separation == doctest::Approx(0.5));
}

TEST_CASE("strictly separated inputs give a strictly separated product") {
  const Body k = Body::ball(1, 40.0);
  const CombinerInput in{points_1d(arithmetic(-39.0, 13.5, 6), 13.0, k),
                         points_1d(arithmetic(-3.3, 1.1, 7), 1.0, k), 13.0, 1.0, 40.0, 4.0};
  const auto z = primal_combine(in);
  CHECK(z.points.size() == 42);
  CHECK(min_gauge_gap(z.points, Body::ball(1, 1.0)) > 0.5);
}

TEST_CASE("singletons combine to a singleton") {
  const Body k = Body::ball(2, 50.0);
  SeparatedSet x{{{10.0, 0.0}}, 13.0, Body::ball(2, 1.0), k};
  SeparatedSet y{{{0.0, 1.0}}, 1.0, Body::ball(2, 1.0), k};
  const auto z = primal_combine({x, y, 13.0, 1.0, 40.0, 4.0});
  REQUIRE(z.points.size() == 1);
  CHECK(z.points[0] == Vector{5.0, 0.5});
}

TEST_CASE("combiner hypotheses are enforced") {
  const Body k = Body::ball(1, 40.0);
  const auto xs = points_1d({-20.0, 20.0}, 13.0, k);
  const auto ys = points_1d({-1.0, 1.0}, 1.0, k);
  CHECK_THROWS_AS(primal_combine({xs, ys, 13.0, 1.0, 10.0, 4.0}), InputError);   // A <= a
  CHECK_THROWS_AS(primal_combine({xs, ys, 11.0, 1.0, 40.0, 4.0}), InputError);   // a <= 3B
  CHECK_THROWS_AS(primal_combine({xs, ys, 13.0, 5.0, 40.0, 4.0}), InputError);   // B <= b
  CHECK_THROWS_AS(primal_combine({xs, points_1d({-6.0, 6.0}, 1.0, k), 13.0, 1.0, 40.0, 4.0}),
                  InputError);  // yset outside K ∩ B D
  CHECK_THROWS_AS(primal_combine({xs, points_1d({0.0, 0.5}, 1.0, k), 13.0, 1.0, 40.0, 4.0}),
                  InputError);  // yset not separated
  CHECK_THROWS_AS(primal_combine({xs, points_1d({-1.0, 1.0}, 1.0, Body::ball(1, 41.0)), 13.0, 1.0,
                                  40.0, 4.0}),
                  InputError);  // different containers
  CHECK_THROWS_AS(primal_combine({xs, ys, 13.0, 1.0, 40.0, 4.0}, 1.5), InputError);
}

TEST_CASE("random planar primal combinations") {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const Body k = Body::ellipsoid({40.0 + 20.0 * u(rng), 5.0 + 30.0 * u(rng)});
    const auto in = planar_instance(k, 13.0, 1.0, 40.0, 4.0, 100 + trial);
    const auto z = primal_combine(in);
    CHECK(z.points.size() == in.xset.points.size() * in.yset.points.size());
    CHECK(min_gauge_gap(z.points, Body::ball(2, 1.0)) > 0.5);
    for (const auto& p : z.points) CHECK(contains(k, p));
  }
}

TEST_CASE("small weights keep most of the inner separation") {
  const Body k = Body::ball(2, 200.0);
  for (double eps : {0.5, 0.25, 0.1}) {
    const double b = 1.0;
    const double big_b = 4.0;
    const double a = 3.0 * (1.0 - eps) / eps * big_b + 1.0;
    const auto in = planar_instance(k, a, b, a + 20.0, big_b, 7);
    const auto z = primal_combine(in, eps);
    CAPTURE(eps);
    CHECK(z.separation == doctest::Approx((1.0 - eps) * b));
    CHECK(min_gauge_gap(z.points, Body::ball(2, 1.0)) > (1.0 - eps) * b);
  }
}

TEST_CASE("dual mixing weight and body") {
  CHECK(dual_mixing_weight(13.0, 1.0) == doctest::Approx(0.52));
  const Body m = dual_mixed_body(Body::ball(2, 1.0), 13.0, 1.0, 4.0);
  // 0.52 D + 0.12 D = 0.64 D.
  CHECK(support(m, {1.0, 0.0}).value == doctest::Approx(0.64));
}

TEST_CASE("dual combination on random squares") {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const Body k = rotated_square(12.0 + 10.0 * u(rng), std::numbers::pi * u(rng));
    const Body polar = Body::polar(k);
    SeparationOptions ff;
    ff.strategy = PackingStrategy::first_fit;
    const auto xs = greedy_separated(Body::ball(2, 1.0), polar, 13.0, 1500, 5 + trial, ff);
    const auto ys = mixed_gauge_separated(k, 13.0, 1.0, 4.0, 300, 9 + trial);
    const auto z = dual_combine({xs, ys, 13.0, 1.0, 40.0, 4.0}, k);
    CHECK(z.points.size() == xs.points.size() * ys.points.size());
    for (const auto& p : z.points) CHECK(norm(p) <= 1.0 + 1e-9);
    CHECK(min_gauge_gap(z.points, polar) > 0.5);
  }
}

TEST_CASE("dual combination for the self-dual ball in one dimension") {
  const Body k = Body::ball(1, 1.0);
  const auto xs = points_1d({0.0}, 13.0, Body::ball(1, 1.0));
  const auto ys = mixed_gauge_separated(k, 13.0, 1.0, 4.0, 2000, 3);
  // The mixed gauge is the euclidean one scaled by 1/0.64.
  CHECK(ys.points.size() == 4);
  const auto z = dual_combine({xs, ys, 13.0, 1.0, 40.0, 4.0}, k);
  CHECK(z.points.size() == ys.points.size());
}

TEST_CASE("net transfer on the interval") {
  const Body k = Body::ball(1, 2.0);
  const std::vector<Vector> s{{2.0}, {-2.0}};
  // conv(S)° = [-1/2, 1/2], so {±1/2} is a 1·conv(S)°-net of D; a far net
  // point is pulled back into D.
  const std::vector<Vector> net{{-0.5}, {0.5}, {1.4}};
  const auto out = net_transfer_polar(s, k, 1.0, net);
  REQUIRE(out.size() == 3);
  CHECK(out[0][0] == doctest::Approx(-0.5));
  CHECK(out[1][0] == doctest::Approx(0.5));
  CHECK(std::abs(out[2][0]) <= 1.0 + 1e-9);
  for (double y = -1.0; y <= 1.0; y += 0.01) {
    double best = 1e300;
    for (const auto& z : out) best = std::min(best, 0.5 * std::abs(y - z[0]));
    CHECK(best <= 4.0 * 0.5);
  }
}

TEST_CASE("net transfer on the square") {
  const Body k = Body::vpolytope({{1.0, 1.0}, {1.0, -1.0}});
  const std::vector<Vector> s = k.vertices();
  const auto cover = covering_bounds(Body::ball(2, 1.0), Body::polar(k), 1.0, 4000, 2);
  NetTransferOptions opts;
  opts.verify_samples = 1000;
  const auto out = net_transfer_polar(s, k, 1.0, cover.centers, opts);
  CHECK(out.size() == cover.centers.size());
  for (const auto& p : out) CHECK(norm(p) <= 1.0 + 1e-9);
}

TEST_CASE("net transfer rejects bad inputs") {
  const Body k = Body::ball(1, 2.0);
  CHECK_THROWS_AS(net_transfer_polar({{3.0}}, k, 1.0, {{0.0}}), InputError);
  CHECK_THROWS_AS(net_transfer_polar({{0.1}}, Body::ball(1, 5.0), 1.0, {{0.0}}), InputError);
  CHECK_THROWS_AS(net_transfer_polar({{2.0}}, k, 0.1, {{0.0}}), InputError);
}

TEST_CASE("diameter realizing sets") {
  const auto seg = diameter_realizing_separated(Body::ball(1, 5.0), 2000, 1);
  const auto has = [](const SeparatedSet& s, const Vector& p, double tol) {
    return std::any_of(s.points.begin(), s.points.end(),
                       [&](const Vector& q) { return norm(q - p) <= tol; });
  };
  CHECK(has(seg.set, {5.0}, 1e-9));
  CHECK(has(seg.set, {-5.0}, 1e-9));
  CHECK(seg.diameter == doctest::Approx(10.0));

  const auto ell = diameter_realizing_separated(Body::ellipsoid({3.0, 1.0}), 4000, 2);
  CHECK(std::abs(std::abs(ell.endpoint[0]) - 3.0) < 1e-3);
  CHECK(ell.diameter_slack >= 0.0);
  CHECK(ell.diameter_slack < 1e-3);

  CHECK_THROWS_AS(diameter_realizing_separated(Body::ball(2, 0.9), 2000, 1), InputError);
}

TEST_CASE("diameter realizing sets are at least the packing bound") {
  Rng rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<Vector> verts;
    for (int i = 0; i < 4; ++i) verts.push_back((2.0 + 2.0 * trial) * random_direction(rng, 2));
    const Body k = Body::vpolytope(verts);
    const auto real = diameter_realizing_separated(k, 3000, trial);
    const auto cover = covering_bounds(k, Body::ball(2, 1.0), 1.0, 3000, derive_seed(trial, 0));
    CHECK(real.set.points.size() >= cover.lower);
  }
}

TEST_CASE("telescope on a hand-built sequence from a small start") {
  IterationSequence seq;
  seq.values = {16.0, 20.0, 30.0, 45.0, 70.0};
  seq.s = 4;
  const auto sched = telescope_schedule(seq);
  CHECK(sched.failing == std::vector<std::size_t>{2, 3});
  CHECK(to_string(sched.collapses.front().group) == "odd");
}
