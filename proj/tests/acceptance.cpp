// Acceptance run: one PASS/FAIL line per criterion. The exit status is zero
// when every criterion matches the expectation table below; criteria that
// the default constants cannot satisfy are listed there as expected red.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "metent/constructions.hpp"
#include "metent/covering.hpp"
#include "metent/duality.hpp"
#include "metent/error.hpp"
#include "metent/functionals.hpp"
#include "metent/parallel.hpp"
#include "metent/sampling.hpp"
#include "metent/set_cover.hpp"

using namespace metent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double time_limit;  // seconds; <= 0: none
  bool expected_pass;
  std::function<Outcome()> run;
};

const Body& unit_disk() {
  static const Body d = Body::ball(2, 1.0);
  return d;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(hi / lo, i / double(points - 1)));
  g.back() = hi;
  return g;
}

// --- 1 ---------------------------------------------------------------------
Outcome interval_exactness() {
  const Body d = Body::ball(1, 1.0);
  int bad = 0;
  int total = 0;
  std::ostringstream first;
  for (int r = 1; r <= 20; ++r) {
    for (double t : {1.0, 2.0, r / 2.0}) {
      const auto est = covering_bounds(Body::ball(1, r), d, t, 2000, derive_seed(r, 1));
      const auto expected = static_cast<std::size_t>(std::ceil(r / t - 1e-12));
      ++total;
      if (est.lower != expected || est.upper != expected) {
        if (bad++ == 0) {
          first << " first miss R=" << r << " t=" << t << ": " << est.lower << "/" << est.upper
                << " vs " << expected;
        }
      }
    }
  }
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " exact" + first.str()};
}

// --- 2 ---------------------------------------------------------------------
Outcome interval_duality() {
  const std::vector<double> grid{0.5, 1.0, 2.0, 4.0};
  int bad = 0;
  for (int r = 1; r <= 12; ++r) {
    const Body k = Body::ball(1, r);
    const auto primal = staircase(k, Body::ball(1, 1.0), grid, 2000, 11);
    const auto dual = staircase(Body::ball(1, 1.0), Body::polar(k), grid, 2000, 11);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (primal.entries[i].lower_bits != dual.entries[i].lower_bits ||
          primal.entries[i].upper_bits != dual.entries[i].upper_bits) {
        ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(bad) + " mismatched grid points over R = 1..12"};
}

// --- 3 ---------------------------------------------------------------------
Outcome ellipse_duality() {
  const auto rep = duality_report(Body::ellipsoid({4.0, 1.0}), log_grid(0.5, 4.0, 6), {1.0},
                                  PaperConstants{}, 200000, 2024, default_workers());
  int overlapping = 0;
  for (const auto& o : rep.overlap) overlapping += (o && *o) ? 1 : 0;
  std::ostringstream d;
  d << overlapping << "/" << rep.overlap.size() << " brackets intersect";
  return {overlapping == static_cast<int>(rep.overlap.size()), d.str()};
}

// --- 4 ---------------------------------------------------------------------
Outcome disk_cover() {
  const Body k = Body::ball(2, 1.9);
  const auto est = exact_cover_small(k, unit_disk(), 1.0, symmetric_lattice(k, 0.05), 2000000);
  std::ostringstream d;
  d << "solver size " << est.upper << " (lower " << est.lower << ", "
    << (est.budget_exhausted ? "budget exhausted" : "search complete") << ")";
  return {est.upper == 7 && est.lower == 7 && !est.budget_exhausted, d.str()};
}

// --- 5 ---------------------------------------------------------------------
Outcome mean_widths() {
  MeanWidthOptions opts;
  opts.workers = default_workers();
  const auto seg = mean_width(std::vector<Vector>{{1.0, 0.0}}, 100000, 5, opts);
  const auto sq = mean_width(Body::vpolytope({{1.0, 1.0}, {1.0, -1.0}}), 100000, 6, opts);
  const double zs = std::abs(seg.estimate - 2.0 / std::numbers::pi) / seg.stderr_;
  const double zq = std::abs(sq.estimate - 4.0 / std::numbers::pi) / sq.stderr_;
  std::ostringstream d;
  d.precision(3);
  d << "segment z=" << zs << ", square z=" << zq;
  return {zs <= 3.0 && zq <= 3.0, d.str()};
}

// --- 6 ---------------------------------------------------------------------
double min_pair_gap(const std::vector<Vector>& pts, const std::function<double(const Vector&)>& g) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, g(pts[i] - pts[j]));
  return best;
}

Outcome combiner_suite() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int primal_bad = 0;
  int dual_bad = 0;
  SeparationOptions ff;
  ff.strategy = PackingStrategy::first_fit;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial < 500 ? 1 : 2;
    const double b = 0.5 + u(rng);
    const double big_b = b * (1.2 + 1.8 * u(rng));
    const double a = 3.0 * big_b * (1.05 + 0.95 * u(rng));
    const double big_a = a * (1.1 + 1.9 * u(rng));
    Vector axes(n);
    for (auto& x : axes) x = big_a * (0.4 + 1.2 * u(rng));
    const Body k = Body::ellipsoid(axes);
    const Body d = Body::ball(n, 1.0);
    const std::uint64_t seed = derive_seed(6, trial);
    try {
      auto xs = greedy_separated(Body::intersect({k, Body::ball(n, big_a)}), d, a, 1500,
                                 derive_seed(seed, 0), ff);
      auto ys = greedy_separated(Body::intersect({k, Body::ball(n, big_b)}), d, b, 1500,
                                 derive_seed(seed, 1), ff);
      xs.container = k;
      ys.container = k;
      const auto z = primal_combine({xs, ys, a, b, big_a, big_b});
      const bool ok = z.points.size() == xs.points.size() * ys.points.size() &&
                      min_pair_gap(z.points, [](const Vector& v) { return norm(v); }) > b / 2.0;
      primal_bad += ok ? 0 : 1;
    } catch (const std::exception&) {
      ++primal_bad;
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const double radius = 12.0 + 18.0 * u(rng);
    const double angle = std::numbers::pi * u(rng);
    const Vector v1{radius * std::cos(angle), radius * std::sin(angle)};
    const Vector v2{-v1[1], v1[0]};
    const Body k = Body::vpolytope({v1, v2});
    const std::uint64_t seed = derive_seed(66, trial);
    try {
      const auto xs = greedy_separated(unit_disk(), Body::polar(k), 13.0, 600, derive_seed(seed, 0), ff);
      const auto ys = mixed_gauge_separated(k, 13.0, 1.0, 4.0, 120, derive_seed(seed, 1));
      const auto z = dual_combine({xs, ys, 13.0, 1.0, 40.0, 4.0}, k);
      // Gauge of the polar of conv{±v1, ±v2}: the larger of |<z, v1>| and |<z, v2>|.
      const double gap = min_pair_gap(z.points, [&](const Vector& w) {
        return std::max(std::abs(dot(w, v1)), std::abs(dot(w, v2)));
      });
      const bool ok = z.points.size() == xs.points.size() * ys.points.size() && gap > 0.5 &&
                      std::all_of(z.points.begin(), z.points.end(),
                                  [](const Vector& p) { return norm(p) <= 1.0 + 1e-9; });
      dual_bad += ok ? 0 : 1;
    } catch (const std::exception&) {
      ++dual_bad;
    }
  }
  return {primal_bad == 0 && dual_bad == 0,
          "primal failures " + std::to_string(primal_bad) + "/1000, dual failures " +
              std::to_string(dual_bad) + "/200"};
}

// --- 7 ---------------------------------------------------------------------
Body random_planar_body(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < 0.5) return Body::ellipsoid({scale * (0.5 + u(rng)), scale * (0.5 + u(rng))});
  Rng local(rng());
  std::vector<Vector> pts;
  for (int i = 0; i < 3; ++i) pts.push_back((scale * (0.7 + 0.6 * u(rng))) * random_direction(local, 2));
  try {
    return Body::vpolytope(pts);
  } catch (const InputError&) {
    return Body::ball(2, scale);
  }
}

Outcome calculus_suite() {
  std::mt19937_64 rng(7);
  int sub_bad = 0;
  int trans_bad = 0;
  const std::size_t budget = 1000;
  for (int trial = 0; trial < 200; ++trial) {
    const Body a = random_planar_body(rng, 3.0);
    const Body b = random_planar_body(rng, 0.8);
    const Body c = random_planar_body(rng, 1.5);
    const std::uint64_t seed = derive_seed(77, trial);
    const auto ab = covering_bounds(a, b, 1.0, budget, derive_seed(seed, 0));
    const auto ac = covering_bounds(a, c, 1.0, budget, derive_seed(seed, 1));
    const auto cb = covering_bounds(c, b, 1.0, budget, derive_seed(seed, 2));
    if (ab.lower > ac.upper * cb.upper) ++sub_bad;
    const auto shifted =
        covering_bounds(Body::minkowski({a, c}), Body::minkowski({b, c}), 1.0, budget, derive_seed(seed, 3));
    if (shifted.lower > ab.upper) ++trans_bad;
  }
  return {sub_bad == 0 && trans_bad == 0, "submultiplicativity failures " + std::to_string(sub_bad) +
                                              "/200, translate-rule failures " +
                                              std::to_string(trans_bad) + "/200"};
}

// --- 8 ---------------------------------------------------------------------
Outcome sequence_fidelity() {
  std::ostringstream d;
  bool pass = true;
  double worst = 0.0;
  for (double r0 : {100.0, 1e4, 1e6}) {
    PaperConstants c;
    c.R0 = r0;
    for (auto kind : {SequenceKind::primal, SequenceKind::dual}) {
      try {
        const auto seq = iteration_sequence(kind, c, 1e3 * r0);
        for (std::size_t j = 0; j + 1 < seq.values.size(); ++j) {
          worst = std::max(worst, relation_residual(kind, seq.values[j], seq.values[j + 1], c));
        }
        if (r0 == 1e6) {
          const auto sched = telescope_schedule(seq);
          d << to_string(kind) << "@1e6 telescope failures " << sched.failing.size() << " over "
            << sched.collapses.size() << " collapses; ";
          pass = pass && sched.failing.empty();
        }
      } catch (const InputError& e) {
        pass = false;
        d << to_string(kind) << "@" << r0 << " not generated; ";
      }
    }
  }
  pass = pass && worst <= 1e-10;
  d << "max residual " << worst;
  return {pass, d.str()};
}

// --- 9 ---------------------------------------------------------------------
Outcome iteration_shadows() {
  const Body k = Body::ellipsoid({50.0, 1.0});
  std::ostringstream d;
  bool pass = true;
  for (auto kind : {SequenceKind::primal, SequenceKind::dual}) {
    try {
      const auto rec = check_iteration(k, kind, PaperConstants{}, 20000, 9);
      std::size_t bad = 0;
      for (const auto& f : rec.factors) bad += f.step.consistent ? 0 : 1;
      d << to_string(kind) << ": s=" << rec.sequence.s << ", " << bad << " inconsistent steps, product forms "
        << (rec.lemma_form.consistent && rec.corollary_form.consistent ? "consistent" : "violated")
        << "; ";
      pass = pass && rec.consistent();
    } catch (const InputError& e) {
      pass = false;
      d << to_string(kind) << ": " << e.what() << "; ";
    }
  }
  return {pass, d.str()};
}

// --- 10 --------------------------------------------------------------------
// Regression pins for the hexagon batch (seed 10, grid 0.5..2 x3, alpha 2).
constexpr double kPinnedBetaMax = 4.0;
constexpr double kPinnedBetaQuantile = 3.4594316186372973;

std::vector<DualityReport> hexagon_batch() {
  std::vector<DualityReport> reps;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(10, i));
    std::vector<Vector> verts;
    for (int v = 0; v < 3; ++v) verts.push_back((1.0 + 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng)) *
                                                random_direction(rng, 2));
    reps.push_back(duality_report(Body::vpolytope(verts), log_grid(0.5, 2.0, 3), {2.0}, PaperConstants{},
                                  3000, derive_seed(10, 100 + i), default_workers()));
  }
  return reps;
}

Outcome hexagon_beta() {
  const auto first = summarize_beta(hexagon_batch(), 2.0);
  const auto second = summarize_beta(hexagon_batch(), 2.0);
  const bool finite = std::all_of(first.values.begin(), first.values.end(),
                                  [](double v) { return std::isfinite(v); });
  const bool repeat = first.values == second.values;
  const bool pinned = std::abs(first.max - kPinnedBetaMax) <= 1e-12 &&
                      std::abs(first.quantile - kPinnedBetaQuantile) <= 1e-12;
  std::ostringstream d;
  d.precision(17);
  d << "beta max " << first.max << ", q90 " << first.quantile << (finite ? "" : ", non-finite values")
    << (repeat ? ", rerun identical" : ", rerun differs") << (pinned ? ", matches pins" : ", pins differ");
  return {finite && repeat && pinned, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 1.0, true, interval_exactness},   {2, 1.0, true, interval_duality},
      {3, 60.0, true, ellipse_duality},     {4, 120.0, true, disk_cover},
      {5, 5.0, true, mean_widths},          {6, 60.0, true, combiner_suite},
      {7, 0.0, true, calculus_suite},       {8, 0.0, false, sequence_fidelity},
      {9, 0.0, false, iteration_shadows},   {10, 0.0, true, hexagon_beta},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs > c.time_limit) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.time_limit)) + " s limit";
    }
    const bool surprise = o.pass != c.expected_pass;
    unexpected += surprise ? 1 : 0;
    std::printf("criterion %d: %s (%.2f s) %s%s\n", c.id, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str(), surprise ? "  [UNEXPECTED]" : (o.pass ? "" : "  [expected]"));
    std::fflush(stdout);
  }
  std::printf("%d criteria differ from the expectation table\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
