#include "metent/covering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "covering_internal.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

namespace metent {

std::string_view to_string(Certification c) {
  switch (c) {
    case Certification::exact: return "exact";
    case Certification::discrete_exact: return "discrete_exact";
    case Certification::sample_certified: return "sample_certified";
  }
  return "unknown";
}

std::size_t default_budget(std::size_t dim) { return dim <= 3 ? 200000 : 1000000; }

std::size_t minimum_budget(std::size_t dim) { return 8 * (dim + 1); }

namespace detail {

std::size_t CellHash::operator()(const std::vector<std::int64_t>& key) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : key) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

CellGrid::CellGrid(std::size_t dim, double cell) : dim_(dim), cell_(cell) {}

std::vector<std::int64_t> CellGrid::key(const Vector& x) const {
  std::vector<std::int64_t> k(dim_);
  for (std::size_t i = 0; i < dim_; ++i) k[i] = static_cast<std::int64_t>(std::floor(x[i] / cell_));
  return k;
}

void CellGrid::insert(const Vector& x, std::size_t id) { cells_[key(x)].push_back(id); }

void CellGrid::for_neighbors(const Vector& x, const std::function<bool(std::size_t)>& visit) const {
  const auto base = key(x);
  std::vector<std::int64_t> k(base);
  std::vector<int> off(dim_, -1);
  for (;;) {
    for (std::size_t i = 0; i < dim_; ++i) k[i] = base[i] + off[i];
    if (auto it = cells_.find(k); it != cells_.end()) {
      for (auto id : it->second) {
        if (!visit(id)) return;
      }
    }
    std::size_t i = 0;
    while (i < dim_ && off[i] == 1) off[i++] = -1;
    if (i == dim_) break;
    ++off[i];
  }
}

GaugeOracle::GaugeOracle(const Body& t_body, const OracleTolerance& tol)
    : body(t_body), outer(t_body.circumradius()), inner(t_body.inradius()), tol(tol) {}

double GaugeOracle::lower(const Vector& z) const {
  const auto q = gauge_quick(body, z);
  if (q.is_point()) return q.lo;
  return gauge_bounds(body, z, tol).lo;
}

double GaugeOracle::upper(const Vector& z) const {
  const auto q = gauge_quick(body, z);
  if (q.is_point()) return q.hi;
  return gauge_bounds(body, z, tol).hi;
}

bool GaugeOracle::exceeds(const Vector& z, double eps) const {
  const double e = norm(z);
  if (e > eps * outer) return true;
  if (e <= eps * inner) return false;
  const auto q = gauge_quick(body, z);
  if (q.lo > eps) return true;
  if (q.hi <= eps) return false;
  return gauge_bounds(body, z, tol).lo > eps;
}

bool GaugeOracle::within(const Vector& z, double eps) const {
  const double e = norm(z);
  if (e <= eps * inner) return true;
  if (e > eps * outer) return false;
  const auto q = gauge_quick(body, z);
  if (q.hi <= eps) return true;
  if (q.lo > eps) return false;
  return gauge_bounds(body, z, tol).hi <= eps;
}

std::vector<std::size_t> lexicographic_order(const std::vector<Vector>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  return order;
}

}  // namespace detail

CandidateStream candidate_stream(const Body& k, const Body& t_body, double resolution,
                                 std::size_t budget, std::uint64_t seed,
                                 std::size_t max_lattice, const OracleTolerance& tol) {
  const std::size_t n = k.dim();
  const double rk = k.circumradius();
  const double ik = k.inradius();
  constexpr double kMaxBox = 4e6;

  double pitch = resolution * t_body.inradius() / 4.0;
  pitch = std::max(pitch, 2.0 * rk / (std::pow(kMaxBox, 1.0 / static_cast<double>(n)) - 1.0));

  CandidateStream out;
  for (int attempt = 0; attempt < 64; ++attempt) {
    out.points.clear();
    const double delta = pitch * std::sqrt(static_cast<double>(n)) / 2.0;
    const double shell = 1.0 + delta / ik;
    const auto m = static_cast<std::int64_t>(std::floor(rk / pitch)) + 1;
    std::vector<std::int64_t> idx(n, -m);
    Vector x(n);
    bool overflow = false;
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(idx[i]) * pitch;
      const double g = gauge_bounds(k, x, tol).hi;
      if (g <= 1.0) {
        out.points.push_back(x);
      } else if (g <= shell) {
        out.points.push_back((1.0 / g) * x);
      }
      if (out.points.size() > max_lattice) {
        overflow = true;
        break;
      }
      // odometer, last coordinate fastest so the order is lexicographic
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == m) idx[--i] = -m;
      if (i == 0) break;
      ++idx[i - 1];
    }
    if (!overflow) {
      out.pitch = pitch;
      out.lattice_cover_radius = delta;
      break;
    }
    pitch *= 1.25;
  }
  out.lattice_count = out.points.size();

  if (budget > out.lattice_count) {
    Rng rng(derive_seed(seed, 1));
    const std::size_t want = budget - out.lattice_count;
    auto extra = uniform_in_body(k, want, rng, 50 * want + 1000, tol);
    out.points.insert(out.points.end(), std::make_move_iterator(extra.begin()),
                      std::make_move_iterator(extra.end()));
  }
  return out;
}

namespace {

constexpr double kFarthestPointWork = 2e8;

std::vector<Vector> farthest_point_packing(const detail::GaugeOracle& gauge, double eps,
                                           const std::vector<Vector>& stream,
                                           const std::vector<Vector>& mandatory) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(stream.size(), inf);
  std::vector<Vector> chosen;

  auto absorb = [&](const Vector& p) {
    for (std::size_t c = 0; c < stream.size(); ++c) {
      if (d[c] == 0.0) continue;
      const Vector z = stream[c] - p;
      if (norm(z) / gauge.outer >= d[c]) continue;
      const auto q = gauge_quick(gauge.body, z);
      if (q.lo >= d[c]) continue;
      const double v = q.is_point() ? q.lo : gauge_bounds(gauge.body, z, gauge.tol).lo;
      d[c] = std::min(d[c], v);
    }
    chosen.push_back(p);
  };

  for (const auto& p : mandatory) absorb(p);
  for (;;) {
    std::size_t best = stream.size();
    double best_d = eps + kSeparationGuard;
    for (std::size_t c = 0; c < stream.size(); ++c) {
      if (d[c] > best_d) {
        best_d = d[c];
        best = c;
      }
    }
    if (best == stream.size()) break;
    absorb(stream[best]);
    d[best] = 0.0;
  }
  return chosen;
}

std::vector<Vector> first_fit_packing(const detail::GaugeOracle& gauge, double eps,
                                      const std::vector<Vector>& stream,
                                      const std::vector<Vector>& mandatory, std::size_t dim) {
  const double thr = eps + kSeparationGuard;
  detail::CellGrid grid(dim, thr * gauge.outer);
  std::vector<Vector> chosen;
  auto admissible = [&](const Vector& x) {
    bool ok = true;
    grid.for_neighbors(x, [&](std::size_t id) {
      if (!gauge.exceeds(x - chosen[id], thr)) {
        ok = false;
        return false;
      }
      return true;
    });
    return ok;
  };
  auto add = [&](const Vector& x) {
    grid.insert(x, chosen.size());
    chosen.push_back(x);
  };
  for (const auto& p : mandatory) add(p);
  for (auto i : detail::lexicographic_order(stream)) {
    if (admissible(stream[i])) add(stream[i]);
  }
  return chosen;
}

void check_mandatory(const detail::GaugeOracle& gauge, double eps,
                     const std::vector<Vector>& mandatory) {
  for (std::size_t i = 0; i < mandatory.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!gauge.exceeds(mandatory[i] - mandatory[j], eps + kSeparationGuard)) {
        throw InputError("mandatory points " + std::to_string(j) + " and " + std::to_string(i) +
                         " are not separated");
      }
    }
  }
}

}  // namespace

SeparatedSet separated_from_stream(const Body& k, const Body& t_body, double eps,
                                   const std::vector<Vector>& stream,
                                   const SeparationOptions& opts) {
  if (!(eps > 0.0)) throw InputError("separation must be positive");
  if (k.dim() != t_body.dim()) throw InputError("bodies have different dimensions");
  for (const auto& p : opts.mandatory) {
    if (p.size() != k.dim()) throw InputError("mandatory point has wrong dimension");
    if (!contains(k, p, opts.tol)) throw InputError("mandatory point " + to_string(p) + " lies outside K");
  }
  const detail::GaugeOracle gauge(t_body, opts.tol);
  check_mandatory(gauge, eps, opts.mandatory);

  SeparatedSet out{{}, eps, t_body, k};
  switch (opts.strategy) {
    case PackingStrategy::farthest_point:
      out.points = farthest_point_packing(gauge, eps, stream, opts.mandatory);
      break;
    case PackingStrategy::first_fit:
      out.points = first_fit_packing(gauge, eps, stream, opts.mandatory, k.dim());
      break;
    case PackingStrategy::best: {
      auto b = first_fit_packing(gauge, eps, stream, opts.mandatory, k.dim());
      // Farthest-point insertion costs one sweep of the stream per point.
      if (static_cast<double>(b.size()) * static_cast<double>(stream.size()) > kFarthestPointWork) {
        out.points = std::move(b);
        break;
      }
      auto a = farthest_point_packing(gauge, eps, stream, opts.mandatory);
      out.points = b.size() > a.size() ? std::move(b) : std::move(a);
      break;
    }
  }
  return out;
}

SeparatedSet greedy_separated(const Body& k, const Body& t_body, double eps, std::size_t budget,
                              std::uint64_t seed, const SeparationOptions& opts) {
  if (!(eps > 0.0)) throw InputError("greedy_separated: eps must be positive");
  const auto stream = candidate_stream(k, t_body, eps, budget, seed,
                                       std::max<std::size_t>(budget / 2, 1), opts.tol);
  return separated_from_stream(k, t_body, eps, stream.points, opts);
}

namespace {

constexpr std::size_t kCoverElements = 60000;

// Bipartite coverage between lattice centers and sample elements.
struct Coverage {
  std::vector<std::vector<std::uint32_t>> center_elems;
  std::vector<std::vector<std::uint32_t>> elem_centers;
};

Coverage build_coverage(const detail::GaugeOracle& gauge, const std::vector<Vector>& pts,
                        std::size_t centers, std::size_t elements, double thr, std::size_t dim) {
  detail::CellGrid grid(dim, thr * gauge.outer);
  for (std::size_t c = 0; c < centers; ++c) grid.insert(pts[c], c);
  Coverage cov;
  cov.center_elems.resize(centers);
  cov.elem_centers.resize(elements);
  for (std::size_t e = 0; e < elements; ++e) {
    grid.for_neighbors(pts[e], [&](std::size_t c) {
      if (gauge.within(pts[e] - pts[c], thr)) {
        cov.center_elems[c].push_back(static_cast<std::uint32_t>(e));
        cov.elem_centers[e].push_back(static_cast<std::uint32_t>(c));
      }
      return true;
    });
  }
  for (auto& v : cov.elem_centers) std::sort(v.begin(), v.end());
  return cov;
}

std::size_t gain(const std::vector<std::uint32_t>& set, const std::vector<char>& covered) {
  std::size_t g = 0;
  for (auto e : set) g += covered[e] ? 0 : 1;
  return g;
}

void mark(const std::vector<std::uint32_t>& set, std::vector<char>& covered) {
  for (auto e : set) covered[e] = 1;
}

std::vector<std::size_t> greedy_max_coverage(const Coverage& cov) {
  std::vector<char> covered(cov.elem_centers.size(), 0);
  for (std::size_t e = 0; e < covered.size(); ++e) covered[e] = cov.elem_centers[e].empty();
  std::vector<std::pair<std::size_t, std::ptrdiff_t>> heap;
  for (std::size_t c = 0; c < cov.center_elems.size(); ++c) {
    heap.emplace_back(cov.center_elems[c].size(), -static_cast<std::ptrdiff_t>(c));
  }
  std::make_heap(heap.begin(), heap.end());
  std::vector<std::size_t> picked;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end());
    auto [g, neg] = heap.back();
    heap.pop_back();
    const auto c = static_cast<std::size_t>(-neg);
    const std::size_t fresh = gain(cov.center_elems[c], covered);
    if (fresh == 0) continue;
    if (fresh < g) {
      heap.emplace_back(fresh, neg);
      std::push_heap(heap.begin(), heap.end());
      continue;
    }
    picked.push_back(c);
    mark(cov.center_elems[c], covered);
  }
  return picked;
}

// Visit elements in lexicographic order; each uncovered one is covered by
// the center (among those reaching it) that covers most new elements.
std::vector<std::size_t> greedy_sweep_cover(const Coverage& cov, const std::vector<Vector>& pts) {
  const std::size_t m = cov.elem_centers.size();
  std::vector<char> covered(m, 0);
  std::vector<std::size_t> picked;
  const std::vector<Vector> elems(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(m));
  for (auto e : detail::lexicographic_order(elems)) {
    if (covered[e] || cov.elem_centers[e].empty()) continue;
    std::size_t best = cov.elem_centers[e].front();
    std::size_t best_gain = 0;
    for (auto c : cov.elem_centers[e]) {
      const std::size_t g = gain(cov.center_elems[c], covered);
      if (g > best_gain) {
        best_gain = g;
        best = c;
      }
    }
    picked.push_back(best);
    mark(cov.center_elems[best], covered);
  }
  return picked;
}

// Extend `centers` first-fit until every stream point is within gauge
// distance thr of some center.
void complete_cover(const detail::GaugeOracle& gauge, const std::vector<Vector>& pts, double thr,
                    std::size_t dim, std::vector<Vector>& centers) {
  detail::CellGrid grid(dim, thr * gauge.outer);
  for (std::size_t c = 0; c < centers.size(); ++c) grid.insert(centers[c], c);
  for (const auto& x : pts) {
    bool hit = false;
    grid.for_neighbors(x, [&](std::size_t c) {
      hit = gauge.within(x - centers[c], thr);
      return !hit;
    });
    if (!hit) {
      grid.insert(x, centers.size());
      centers.push_back(x);
    }
  }
}

}  // namespace

CoverEstimate covering_bounds(const Body& k, const Body& t_body, double t, std::size_t budget,
                              std::uint64_t seed, const OracleTolerance& tol) {
  if (!(t > 0.0)) throw InputError("covering_bounds: t must be positive");
  if (k.dim() != t_body.dim()) throw InputError("covering_bounds: dimension mismatch");
  if (budget < minimum_budget(k.dim())) {
    throw InputError("covering_bounds: budget below minimum " +
                     std::to_string(minimum_budget(k.dim())));
  }

  CoverEstimate est;
  est.t = t;
  if (k.circumradius() <= t * t_body.inradius()) {
    est.certification = Certification::exact;
    est.centers = {Vector(k.dim(), 0.0)};
    return est;
  }

  const std::size_t max_lattice = std::min<std::size_t>(std::max<std::size_t>(budget / 2, 1), 20000);
  const auto stream = candidate_stream(k, t_body, t, budget, seed, max_lattice, tol);
  est.pitch = stream.pitch;
  est.candidates = stream.points.size();
  const double rho = stream.lattice_cover_radius * (1.0 + k.circumradius() / k.inradius()) /
                     t_body.inradius();
  est.eta = rho / t;

  SeparationOptions opts;
  opts.tol = tol;
  est.lower = std::max<std::size_t>(
      1, separated_from_stream(k, t_body, 2.0 * t, stream.points, opts).points.size());

  // The first-fit t-net is maximal, hence never smaller than the packing.
  opts.strategy = PackingStrategy::first_fit;
  auto best = separated_from_stream(k, t_body, t, stream.points, opts).points;

  const detail::GaugeOracle gauge(t_body, tol);
  const double thr = t * (1.0 + 1e-9) + kSeparationGuard;
  const std::size_t elements = std::min(stream.points.size(),
                                        std::max(kCoverElements, stream.lattice_count));
  const auto cov = build_coverage(gauge, stream.points, stream.lattice_count, elements, thr, k.dim());
  for (const auto& picked : {greedy_max_coverage(cov), greedy_sweep_cover(cov, stream.points)}) {
    std::vector<Vector> centers;
    for (auto i : picked) centers.push_back(stream.points[i]);
    complete_cover(gauge, stream.points, thr, k.dim(), centers);
    if (centers.size() >= est.lower && centers.size() < best.size()) best = std::move(centers);
  }
  est.upper = best.size();
  est.centers = std::move(best);
  return est;
}

}  // namespace metent
