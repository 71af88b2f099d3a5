#include <algorithm>
#include <cmath>

#include "metent/body_json.hpp"
#include "metent/duality.hpp"
#include "metent/error.hpp"
#include "metent/parallel.hpp"
#include "metent/sampling.hpp"

namespace metent {

std::string_view to_string(BodyFamily f) {
  switch (f) {
    case BodyFamily::sphere_hull: return "sphere_hull";
    case BodyFamily::diagonal_ellipsoid: return "diagonal_ellipsoid";
    case BodyFamily::zonotope: return "zonotope";
  }
  return "unknown";
}

BodyFamily body_family_from_string(std::string_view s) {
  for (auto f : {BodyFamily::sphere_hull, BodyFamily::diagonal_ellipsoid, BodyFamily::zonotope}) {
    if (to_string(f) == s) return f;
  }
  throw InputError("unknown body family '" + std::string(s) + "'");
}

namespace {

Body draw(const FamilySpec& spec, Rng& rng) {
  const std::size_t n = spec.dim;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (spec.family) {
    case BodyFamily::sphere_hull: {
      std::vector<Vector> pts;
      for (std::size_t i = 0; i < spec.points; ++i) pts.push_back(spec.radius * random_direction(rng, n));
      return Body::vpolytope(pts);
    }
    case BodyFamily::diagonal_ellipsoid: {
      const double lo = std::min(1.0, spec.radius);
      const double span = std::log(spec.radius / lo);
      Vector axes(n);
      for (auto& a : axes) a = lo * std::exp(span * unit(rng));
      return Body::ellipsoid(axes);
    }
    case BodyFamily::zonotope: {
      std::vector<Vector> segs;
      Vector weights(spec.points);
      double total = 0.0;
      for (auto& w : weights) total += (w = 0.25 + unit(rng));
      for (std::size_t i = 0; i < spec.points; ++i) {
        segs.push_back((spec.radius * weights[i] / total) * random_direction(rng, n));
      }
      std::vector<Vector> vertices;
      for (std::size_t mask = 0; mask < (std::size_t{1} << spec.points); ++mask) {
        Vector v(n, 0.0);
        for (std::size_t i = 0; i < spec.points; ++i) {
          v = ((mask >> i) & 1U) ? v + segs[i] : v - segs[i];
        }
        vertices.push_back(v);
      }
      return Body::vpolytope(vertices);
    }
  }
  throw InputError("unknown body family");
}

}  // namespace

Body sample_body(const FamilySpec& spec, std::uint64_t seed) {
  if (spec.dim < 1 || !(spec.radius > 0.0)) throw InputError("family: bad dimension or radius");
  if (spec.family == BodyFamily::sphere_hull && spec.points < 1) {
    throw InputError("family: sphere_hull needs at least one point");
  }
  if (spec.family == BodyFamily::zonotope && (spec.points < spec.dim || spec.points > 4)) {
    throw InputError("family: zonotope needs between dim and 4 segments");
  }
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    try {
      return draw(spec, rng);
    } catch (const InputError&) {
      // degenerate draw (no interior); redraw
    }
  }
  throw InputError("family: could not draw a full-dimensional body");
}

ConjectureProbe geometric_lemma_probe(const FamilySpec& spec, std::size_t count,
                                      const PaperConstants& consts, std::size_t budget,
                                      std::uint64_t seed, unsigned workers) {
  consts.validate();
  if (count == 0) throw InputError("probe: count must be positive");
  ConjectureProbe probe;
  probe.spec = spec;
  probe.constants = consts;
  probe.seed = seed;
  probe.records.resize(count);
  const auto n = static_cast<double>(spec.dim);

  parallel_for(count, workers, [&](std::size_t i) {
    const Body k = sample_body(spec, derive_seed(seed, i));
    const Body disk = Body::ball(spec.dim, 1.0);
    const auto cover = covering_bounds(k, disk, 1.0, budget, derive_seed(seed, 1000 + i));
    const auto width = mean_width(Body::intersect({k, disk}), 2000, derive_seed(seed, 2000 + i));
    ProbeRecord r;
    r.body_json = body_to_json(k);
    r.radius = k.circumradius();
    r.mstar = width.estimate;
    r.k_bits = std::log2(static_cast<double>(cover.lower));
    r.excluded = r.k_bits < 1.0;
    if (!r.excluded) {
      r.conjecture_ratio = r.mstar * std::sqrt(n / r.k_bits);
      const double lr = std::log2(r.radius);
      if (lr > 0.0) r.log_ratio = r.mstar / (lr * lr * lr * std::sqrt(r.k_bits / n));
    }
    probe.records[i] = std::move(r);
  });

  std::size_t used = 0;
  double sum = 0.0;
  for (const auto& r : probe.records) {
    if (r.excluded) continue;
    ++used;
    sum += r.conjecture_ratio;
    probe.max = std::max(probe.max, r.conjecture_ratio);
  }
  probe.mean = used > 0 ? sum / static_cast<double>(used) : 0.0;
  probe.histogram.assign(10, 0);
  for (const auto& r : probe.records) {
    if (r.excluded) continue;
    const double f = probe.max > 0.0 ? r.conjecture_ratio / probe.max : 0.0;
    probe.histogram[std::min<std::size_t>(9, static_cast<std::size_t>(f * 10.0))] += 1;
  }
  return probe;
}

}  // namespace metent
