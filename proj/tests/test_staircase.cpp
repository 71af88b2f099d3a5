#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "metent/covering.hpp"
#include "metent/error.hpp"

using namespace metent;

namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(hi / lo, i / double(points - 1)));
  return g;
}

}  // namespace

TEST_CASE("interval staircase matches log2 of the ceiling") {
  const double r = 10.0;
  const auto st = staircase(Body::ball(1, r), Body::ball(1, 1.0), {1.0, 2.5, 5.0, 10.0}, 2000, 4);
  REQUIRE(st.entries.size() == 4);
  for (const auto& e : st.entries) {
    const double bits = std::log2(std::ceil(r / e.t - 1e-12));
    CHECK(e.lower_bits == doctest::Approx(bits));
    CHECK(e.upper_bits == doctest::Approx(bits));
  }
  CHECK(st.radius_lo <= 10.0 + 1e-9);
  CHECK(st.radius_hi >= 10.0 - 1e-9);
}

TEST_CASE("staircase is monotone and sorted") {
  const auto st = staircase(Body::ellipsoid({4.0, 1.0}), Body::ball(2, 1.0),
                            {2.0, 0.5, 1.0, 1.0, 4.0}, 6000, 3, 2);
  REQUIRE(st.entries.size() == 4);
  for (std::size_t i = 0; i + 1 < st.entries.size(); ++i) {
    CHECK(st.entries[i].t < st.entries[i + 1].t);
    CHECK(st.entries[i].lower_bits >= st.entries[i + 1].lower_bits);
    CHECK(st.entries[i].upper_bits >= st.entries[i + 1].upper_bits);
  }
  for (const auto& e : st.entries) CHECK(e.lower_bits <= e.upper_bits);
}

TEST_CASE("staircase does not depend on the worker count") {
  const Body k = Body::vpolytope({{2.0, 0.0}, {1.0, 1.7}, {-1.0, 1.7}});
  const std::vector<double> grid = log_grid(0.5, 2.0, 4);
  const auto one = staircase(k, Body::ball(2, 1.0), grid, 4000, 8, 1);
  const auto four = staircase(k, Body::ball(2, 1.0), grid, 4000, 8, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one.entries[i].lower == four.entries[i].lower);
    CHECK(one.entries[i].upper == four.entries[i].upper);
  }
  CHECK(staircase_csv(one) == staircase_csv(four));
}

TEST_CASE("staircase CSV has a header and one row per grid point") {
  const auto st = staircase(Body::ball(1, 4.0), Body::ball(1, 1.0), {1.0, 2.0}, 2000, 1);
  std::istringstream in(staircase_csv(st));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,lower_bits,upper_bits,certification,pitch");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("empty or non-positive grids are rejected") {
  CHECK_THROWS_AS(staircase(Body::ball(1, 2.0), Body::ball(1, 1.0), {}, 2000, 1), InputError);
  CHECK_THROWS_AS(staircase(Body::ball(1, 2.0), Body::ball(1, 1.0), {0.0, 1.0}, 2000, 1),
                  InputError);
}

TEST_CASE("entropy number brackets contain the interval values") {
  const double r = 16.0;
  const auto st = staircase(Body::ball(1, r), Body::ball(1, 1.0), log_grid(0.25, 16.0, 13), 2000, 6);
  const auto e = entropy_numbers(st, 5);
  REQUIRE(e.size() == 5);
  for (const auto& b : e) {
    const double exact = r / std::pow(2.0, b.k - 1);
    CAPTURE(b.k);
    CHECK(b.lower <= exact + 1e-9);
    CHECK(b.upper >= exact - 1e-9);
  }
  CHECK(e[0].upper == doctest::Approx(16.0));
}
