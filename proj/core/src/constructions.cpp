#include "metent/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covering_internal.hpp"
#include "metent/body_json.hpp"
#include "metent/error.hpp"
#include "metent/minimize.hpp"
#include "metent/sampling.hpp"

namespace metent {

namespace {

bool same_body(const Body& x, const Body& y) { return body_to_json(x) == body_to_json(y); }

// Smallest pairwise gauge distance is at least `sep` (strict: exceeds it).
// Pairs farther apart than sep * R(T) in euclidean norm are skipped.
struct PairCheck {
  bool ok = true;
  std::size_t i = 0;
  std::size_t j = 0;
};

PairCheck check_pairs(const std::vector<Vector>& pts, const detail::GaugeOracle& gauge, double sep,
                      bool strict) {
  PairCheck out;
  if (pts.empty()) return out;
  detail::CellGrid grid(pts.front().size(), (sep + kSeparationGuard) * gauge.outer);
  for (std::size_t i = 0; i < pts.size() && out.ok; ++i) {
    grid.for_neighbors(pts[i], [&](std::size_t j) {
      const Vector z = pts[i] - pts[j];
      const bool good = strict ? gauge.exceeds(z, sep + kSeparationGuard)
                               : gauge.upper(z) >= sep - kSeparationGuard;
      if (!good) out = {false, j, i};
      return good;
    });
    grid.insert(pts[i], i);
  }
  return out;
}

void require_hypotheses(const CombinerInput& in) {
  const double v[] = {in.a, in.b, in.A, in.B};
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("combiner radii must be positive");
  }
  if (!(in.A > in.a && in.a > 3.0 * in.B && in.B > in.b)) {
    std::ostringstream msg;
    msg << "combiner needs A > a > 3B > 3b, got A=" << in.A << " a=" << in.a << " B=" << in.B
        << " b=" << in.b;
    throw InputError(msg.str());
  }
}

// Throws unless the set is separated at `sep` (non-strict); returns whether
// every pair also clears it strictly.
bool require_pairs(const SeparatedSet& set, double sep, const char* name,
                   const OracleTolerance& tol) {
  if (set.points.empty()) return true;
  const detail::GaugeOracle gauge(set.ambient, tol);
  detail::CellGrid grid(set.points.front().size(), (sep + kSeparationGuard) * gauge.outer);
  bool strict = true;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    grid.for_neighbors(set.points[i], [&](std::size_t j) {
      const Vector z = set.points[i] - set.points[j];
      if (strict && gauge.exceeds(z, sep + kSeparationGuard)) return true;
      if (gauge.upper(z) < sep - kSeparationGuard) {
        throw InputError(std::string(name) + " is not separated at its declared radius");
      }
      strict = false;
      return true;
    });
    grid.insert(set.points[i], i);
  }
  return strict;
}

void certify(const std::vector<Vector>& pts, const Body& gauge_body, double sep, bool strict,
             const OracleTolerance& tol) {
  const detail::GaugeOracle gauge(gauge_body, tol);
  const auto res = check_pairs(pts, gauge, sep, strict);
  if (!res.ok) {
    std::ostringstream msg;
    msg << "product points " << res.i << " and " << res.j << " are not "
        << (strict ? "strictly " : "") << sep << "-separated";
    throw CertificationError(msg.str());
  }
}

}  // namespace

double primal_product_separation(double weight, double b) { return (1.0 - weight) * b; }

SeparatedSet primal_combine(const CombinerInput& in, double weight, const OracleTolerance& tol) {
  require_hypotheses(in);
  if (!(weight > 0.0 && weight < 1.0)) throw InputError("primal_combine: weight must be in (0,1)");
  // Cross pairs are at least w a - (1 - w) 2B apart; this must beat the target.
  if (!(weight * in.a > (1.0 - weight) * (2.0 * in.B + in.b))) {
    throw InputError("primal_combine: a too small for this weight");
  }
  const Body& k = in.xset.container;
  const Body& t_body = in.xset.ambient;
  if (!same_body(k, in.yset.container) || !same_body(t_body, in.yset.ambient)) {
    throw InputError("primal_combine: both sets must share container and gauge");
  }
  const double slack = 1.0 + tol.membership_slack;
  for (const auto& x : in.xset.points) {
    if (!contains(k, x, tol) || gauge_bounds(t_body, x, tol).lo > in.A * slack) {
      throw InputError("primal_combine: xset point outside K ∩ A T");
    }
  }
  for (const auto& y : in.yset.points) {
    if (!contains(k, y, tol) || gauge_bounds(t_body, y, tol).lo > in.B * slack) {
      throw InputError("primal_combine: yset point outside K ∩ B T");
    }
  }
  const bool x_strict = require_pairs(in.xset, in.a, "xset", tol);
  const bool strict = require_pairs(in.yset, in.b, "yset", tol) && x_strict;

  SeparatedSet out{{}, primal_product_separation(weight, in.b), t_body, k};
  out.points.reserve(in.xset.points.size() * in.yset.points.size());
  for (const auto& x : in.xset.points) {
    for (const auto& y : in.yset.points) out.points.push_back(weight * x + (1.0 - weight) * y);
  }
  for (const auto& z : out.points) {
    if (!contains(k, z, tol) || gauge_bounds(t_body, z, tol).lo > in.A * slack) {
      throw CertificationError("primal_combine: product point left K ∩ A T");
    }
  }
  certify(out.points, t_body, out.separation, strict, tol);
  return out;
}

double dual_mixing_weight(double a, double b) { return a / (2.0 * a - b); }

Body dual_mixed_body(const Body& k, double a, double b, double B) {
  const double alpha = dual_mixing_weight(a, b);
  return Body::minkowski(
      {Body::scale(alpha, Body::polar(k)), Body::ball(k.dim(), (1.0 - alpha) / B)});
}

SeparatedSet mixed_gauge_separated(const Body& k, double a, double b, double B,
                                   std::size_t budget, std::uint64_t seed) {
  SeparationOptions opts;
  opts.strategy = PackingStrategy::first_fit;
  return greedy_separated(Body::ball(k.dim(), 1.0), dual_mixed_body(k, a, b, B), b, budget, seed,
                          opts);
}

SeparatedSet dual_combine(const CombinerInput& in, const Body& k, const OracleTolerance& tol) {
  require_hypotheses(in);
  const double alpha = dual_mixing_weight(in.a, in.b);
  const double w = in.b / (2.0 * in.a);
  if (!((1.0 / in.a) / (1.0 - w) < (1.0 - alpha) / in.B)) {
    throw InputError("dual_combine: derived radius condition fails");
  }
  const std::size_t n = k.dim();
  const Body disk = Body::ball(n, 1.0);
  const Body polar = Body::polar(k);
  const double slack = 1.0 + tol.membership_slack;
  for (const auto* set : {&in.xset, &in.yset}) {
    for (const auto& p : set->points) {
      if (p.size() != n || norm(p) > slack) throw InputError("dual_combine: input point outside D");
    }
  }
  SeparatedSet xs = in.xset;
  xs.ambient = polar;
  SeparatedSet ys = in.yset;
  ys.ambient = dual_mixed_body(k, in.a, in.b, in.B);
  const bool x_strict = require_pairs(xs, in.a, "xset", tol);
  const bool strict = require_pairs(ys, in.b, "yset", tol) && x_strict;

  SeparatedSet out{{}, in.b / 2.0, polar, disk};
  for (const auto& x : in.xset.points) {
    for (const auto& y : in.yset.points) out.points.push_back(w * x + (1.0 - w) * y);
  }
  for (const auto& z : out.points) {
    if (norm(z) > slack) throw CertificationError("dual_combine: product point left D");
  }
  certify(out.points, polar, out.separation, strict, tol);
  return out;
}

std::vector<Vector> net_transfer_polar(const std::vector<Vector>& s, const Body& k, double rho,
                                       const std::vector<Vector>& net,
                                       const NetTransferOptions& opts) {
  if (!(rho > 0.0)) throw InputError("net_transfer_polar: rho must be positive");
  if (s.empty() || net.empty()) throw InputError("net_transfer_polar: empty input");
  const std::size_t n = k.dim();
  for (const auto& p : s) {
    if (p.size() != n) throw InputError("net_transfer_polar: dimension mismatch");
    if (!contains(k, p, opts.tol)) throw InputError("net_transfer_polar: S is not inside K");
  }
  const Body hull = Body::vpolytope(s);
  const Body disk = Body::ball(n, 1.0);
  const Body hull_plus_disk = Body::minkowski({hull, disk});
  const double slack = 1.0 + opts.tol.membership_slack;

  Rng rng(derive_seed(opts.seed, 0));
  for (const auto& x : uniform_in_body(k, opts.verify_samples, rng, 50 * opts.verify_samples, opts.tol)) {
    if (gauge_bounds(hull_plus_disk, x, opts.tol).lo > slack) {
      throw InputError("net_transfer_polar: K is not inside conv(S) + D at " + to_string(x));
    }
  }

  std::vector<Vector> check = uniform_in_body(disk, opts.verify_samples, rng,
                                              50 * opts.verify_samples, opts.tol);
  for (std::size_t i = 0; i < opts.verify_samples / 4; ++i) check.push_back(random_direction(rng, n));

  // h_conv(S) is the gauge of conv(S)°, exact through the vertices.
  auto hull_dist = [&](const Vector& z) { return support(hull, z).value; };
  for (const auto& y : check) {
    const bool hit = std::any_of(net.begin(), net.end(),
                                 [&](const Vector& c) { return hull_dist(y - c) <= rho * slack; });
    if (!hit) throw InputError("net_transfer_polar: net misses a sample point of D");
  }

  std::vector<Vector> out;
  out.reserve(net.size());
  for (const auto& y : net) {
    if (norm(y) <= 1.0) {
      out.push_back(y);
      continue;
    }
    // A point of D closest to y in the conv(S)° gauge, over projections onto D.
    auto project = [](Vector w) {
      const double r = norm(w);
      return r > 1.0 ? (1.0 / r) * w : w;
    };
    const auto res = simplex_minimize(
        [&](std::span<const double> w) { return hull_dist(project(Vector(w.begin(), w.end())) - y); },
        (1.0 / norm(y)) * y);
    out.push_back(project(res.x));
  }

  const Body polar = Body::polar(k);
  const double bound = (2.0 * rho + 2.0) * slack;
  for (const auto& y : check) {
    const bool hit = std::any_of(out.begin(), out.end(), [&](const Vector& z) {
      return gauge_bounds(polar, y - z, opts.tol).hi <= bound;
    });
    if (!hit) throw CertificationError("net_transfer_polar: transferred net misses " + to_string(y));
  }
  return out;
}

DiameterRealization diameter_realizing_separated(const Body& k, std::size_t budget,
                                                 std::uint64_t seed) {
  const std::size_t n = k.dim();
  const Body disk = Body::ball(n, 1.0);
  const auto cover = covering_bounds(k, disk, 1.0, budget, derive_seed(seed, 0));
  if (cover.lower < 2) throw InputError("diameter_realizing_separated: N(K, D) = 1");

  // The farthest point of K lies along the direction of smallest gauge.
  Rng rng(derive_seed(seed, 1));
  Vector best_dir;
  double best_gauge = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& u) {
    const double g = gauge(k, u);
    if (g < best_gauge) {
      best_gauge = g;
      best_dir = u;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    consider(e);
  }
  if (k.kind() == BodyKind::vpolytope) {
    for (const auto& v : k.vertices()) consider((1.0 / norm(v)) * v);
  }
  for (int i = 0; i < 512; ++i) consider(random_direction(rng, n));
  if (n > 1) {
    const auto res = simplex_minimize(
        [&](std::span<const double> w) {
          Vector u(w.begin(), w.end());
          const double r = norm(u);
          return r > 0.0 ? gauge(k, (1.0 / r) * u) : 1e300;
        },
        best_dir);
    const double r = norm(res.x);
    if (r > 0.0) consider((1.0 / r) * res.x);
  }

  const Vector endpoint = (1.0 / gauge(k, best_dir)) * best_dir;
  const double diameter = 2.0 * norm(endpoint);
  SeparationOptions opts;
  opts.mandatory = {endpoint, -endpoint};
  auto set = greedy_separated(k, disk, 1.0, budget, derive_seed(seed, 2), opts);
  DiameterRealization out{std::move(set), endpoint, diameter,
                          std::max(0.0, 2.0 * k.circumradius() - diameter)};
  return out;
}

std::string_view to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

std::optional<std::size_t> TelescopeSchedule::first_failure() const {
  if (failing.empty()) return std::nullopt;
  return failing.front();
}

TelescopeSchedule telescope_schedule(const IterationSequence& seq) {
  if (seq.s < 2 || seq.s >= seq.values.size() || seq.s % 2 != 0) {
    throw InputError("telescope_schedule: stopping index must be even, >= 2 and within the sequence");
  }
  const auto& r = seq.values;
  TelescopeSchedule out;
  for (std::size_t j = 0; j < seq.s; ++j) (j % 2 == 1 ? out.odd : out.even).push_back(j);
  for (const auto* group : {&out.odd, &out.even}) {
    const Parity parity = group == &out.odd ? Parity::odd : Parity::even;
    for (auto it = group->rbegin(); it != group->rend(); ++it) {
      const std::size_t j = *it;
      if (j < 2) continue;
      Collapse c;
      c.group = parity;
      c.upper = j;
      c.lower = j - 2;
      c.ratio = (std::sqrt(r[j]) / 4.0) / (r[j - 1] / 2.0);
      c.ok = c.ratio >= 3.0;
      if (!c.ok) out.failing.push_back(j);
      out.collapses.push_back(c);
    }
  }
  std::sort(out.failing.begin(), out.failing.end());
  return out;
}

}  // namespace metent
