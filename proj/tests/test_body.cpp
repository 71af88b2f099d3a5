#include <doctest.h>

#include <cmath>
#include <vector>

#include "metent/body.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

using namespace metent;

namespace {

const Body kSquare = Body::vpolytope({{1.0, 1.0}, {1.0, -1.0}});

double ellipsoid_gauge(const Vector& axes, const Vector& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += (z[i] / axes[i]) * (z[i] / axes[i]);
  return std::sqrt(s);
}

double ellipsoid_support(const Vector& axes, const Vector& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (axes[i] * u[i]) * (axes[i] * u[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("constructors reject degenerate input") {
  CHECK_THROWS_AS(Body::ball(0, 1.0), InputError);
  CHECK_THROWS_AS(Body::ball(2, -1.0), InputError);
  CHECK_THROWS_AS(Body::ellipsoid({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(Body::vpolytope({{1.0, 1.0}}), InputError);
  CHECK_THROWS_AS(Body::minkowski({Body::ball(2, 1.0), Body::ball(3, 1.0)}), InputError);
  CHECK_THROWS_AS(Body::scale(0.0, Body::ball(2, 1.0)), InputError);
}

TEST_CASE("ellipsoid support and gauge match closed forms") {
  const Vector axes{4.0, 1.0};
  const Body e = Body::ellipsoid(axes);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vector u = random_direction(rng, 2);
    const Vector z = 3.0 * u;
    CHECK(support(e, u).value == doctest::Approx(ellipsoid_support(axes, u)));
    CHECK(support(e, u).exact);
    CHECK(gauge(e, z) == doctest::Approx(ellipsoid_gauge(axes, z)));
  }
  CHECK(e.circumradius() == doctest::Approx(4.0));
  CHECK(e.inradius() == doctest::Approx(1.0));
}

TEST_CASE("square polytope gauge agrees with the linear program") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vector z = 2.5 * random_direction(rng, 2);
    const double expected = std::max(std::abs(z[0]), std::abs(z[1]));
    CHECK(gauge(kSquare, z) == doctest::Approx(expected));
    CHECK(vpolytope_gauge_lp(kSquare, z) == doctest::Approx(expected));
  }
  CHECK(kSquare.circumradius() == doctest::Approx(std::sqrt(2.0)));
  CHECK(kSquare.inradius() == doctest::Approx(1.0));
}

TEST_CASE("polar of the square is the cross-polytope") {
  const Body p = Body::polar(kSquare);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Vector z = random_direction(rng, 2);
    CHECK(gauge(p, z) == doctest::Approx(std::abs(z[0]) + std::abs(z[1])));
    CHECK(support(p, z).value == doctest::Approx(std::max(std::abs(z[0]), std::abs(z[1]))));
  }
  CHECK(contains(p, {0.5, 0.49}));
  CHECK_FALSE(contains(p, {0.5, 0.51}));
}

TEST_CASE("polar of an ellipsoid inverts its axes") {
  const Body p = Body::polar(Body::ellipsoid({4.0, 1.0}));
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Vector z = random_direction(rng, 2);
    CHECK(gauge(p, z) == doctest::Approx(ellipsoid_gauge({0.25, 1.0}, z)).epsilon(1e-7));
  }
}

TEST_CASE("minkowski sum of balls is a ball") {
  const Body m = Body::minkowski({Body::ball(2, 1.0), Body::ball(2, 2.0)});
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Vector u = random_direction(rng, 2);
    CHECK(support(m, u).value == doctest::Approx(3.0));
    const Interval g = gauge_bounds(m, 6.0 * u);
    CHECK(g.lo <= 2.0 + 1e-7);
    CHECK(g.hi >= 2.0 - 1e-7);
    CHECK(g.width() < 1e-6);
  }
}

TEST_CASE("scaled body gauge and support") {
  const Body s = Body::scale(2.0, kSquare);
  CHECK(gauge(s, {3.0, 1.0}) == doctest::Approx(1.5));
  CHECK(support(s, {1.0, 0.0}).value == doctest::Approx(2.0));
  CHECK(s.circumradius() == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("intersection of a square and a disk") {
  const Body k = Body::intersect({kSquare, Body::ball(2, 1.2)});
  const double diag = 1.0 / std::sqrt(2.0);
  const Interval h = support_bounds(k, {diag, diag});
  // The extreme point in the diagonal direction lies on the circle inside the square.
  CHECK(h.lo <= 1.2 + 1e-9);
  CHECK(h.hi >= 1.2 - 1e-9);
  CHECK(h.width() < 1e-5);
  const Interval axis = support_bounds(k, {1.0, 0.0});
  CHECK(axis.lo <= 1.0 + 1e-9);
  CHECK(axis.hi >= 1.0 - 1e-9);
  CHECK(gauge(k, {2.0, 0.0}) == doctest::Approx(2.0));
  CHECK(gauge(k, {1.2, 1.2}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("membership honors the slack shell") {
  const Body b = Body::ball(3, 2.0);
  CHECK(contains(b, {2.0, 0.0, 0.0}));
  CHECK_FALSE(contains(b, {2.0 + 1e-6, 0.0, 0.0}));
  CHECK(contains(b, {1.0, 1.0, 1.0}));
}

TEST_CASE("gauge is homogeneous and satisfies the triangle inequality") {
  const Body k = Body::intersect({Body::ellipsoid({3.0, 1.0}), Body::polar(kSquare)});
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_direction(rng, 2);
    const Vector y = random_direction(rng, 2);
    const double gx = gauge(k, x);
    CHECK(gauge(k, 3.0 * x) == doctest::Approx(3.0 * gx).epsilon(1e-6));
    CHECK(gauge(k, -1.0 * x) == doctest::Approx(gx).epsilon(1e-6));
    CHECK(gauge_bounds(k, x + y).lo <= gauge(k, x) + gauge(k, y) + 1e-7);
  }
}

TEST_CASE("planar minkowski sum of polygons matches the hull of vertex sums") {
  const std::vector<Vector> p{{1.5, 0.2}, {0.3, 1.4}, {-1.0, 0.9}};
  const std::vector<Vector> q{{0.7, 0.0}, {0.1, 0.6}};
  const Body bp = Body::vpolytope(p);
  const Body bq = Body::vpolytope(q);
  std::vector<Vector> sums;
  for (const auto& a : bp.vertices())
    for (const auto& b : bq.vertices()) sums.push_back(a + b);
  const Body hull = Body::vpolytope(sums);
  const Body sum = Body::minkowski({bp, bq});
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Vector z = 2.0 * random_direction(rng, 2);
    const Interval g = gauge_bounds(sum, z);
    const double expected = vpolytope_gauge_lp(hull, z);
    CHECK(g.lo <= expected + 1e-9);
    CHECK(g.hi >= expected - 1e-9);
    CHECK(g.width() <= 1e-8);
  }
}

TEST_CASE("planar minkowski sum of an ellipse and a polygon brackets tightly") {
  const Body sum = Body::minkowski({Body::ellipsoid({0.8, 0.5}), Body::vpolytope({{1.0, 1.0}, {1.0, -1.0}})});
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const Vector u = random_direction(rng, 2);
    const Interval g = gauge_bounds(sum, u);
    CHECK(g.width() <= 1e-8);
    // u / ||u|| lies on the boundary, so its support pairing is at least 1.
    const Vector x = (1.0 / g.hi) * u;
    CHECK(contains(sum, x));
    CHECK(support(sum, u).value >= dot(u, x) - 1e-9);
  }
}
