#include "metent/body.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "metent/error.hpp"
#include "metent/lp.hpp"
#include "metent/minimize.hpp"

namespace metent {

struct Body::Node {
  BodyKind kind = BodyKind::ball;
  std::size_t dim = 0;
  double scalar = 0.0;  // ball radius or scale factor
  Vector semiaxes;
  std::vector<Vector> vertices;
  std::optional<std::vector<Vector>> facets;
  std::vector<Body> parts;  // operand for polar and scale is parts[0]
  double circumradius = 0.0;
  double inradius = 0.0;
};

const Body::Node& node_of(const Body& b) { return *b.node_; }

void OracleTolerance::validate() const {
  if (!(membership_slack > 0.0) || !(bisection_tol > 0.0)) {
    throw InputError("oracle tolerances must be strictly positive");
  }
  if (bisection_tol > membership_slack) {
    throw InputError("bisection_tol must not exceed membership_slack");
  }
}

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::ball: return "ball";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::vpolytope: return "vpolytope";
    case BodyKind::polar: return "polar";
    case BodyKind::intersect: return "intersect";
    case BodyKind::scale: return "scale";
    case BodyKind::minkowski: return "minkowski";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMaxFacetSubsets = 200000;

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Enumerates facets of a full-dimensional centrally symmetric polytope by
// testing every n-subset of vertices. Returns nullopt when too many subsets.
std::optional<std::vector<Vector>> enumerate_facets(const std::vector<Vector>& verts,
                                                    std::size_t n) {
  const std::size_t m = verts.size();
  if (n == 1) {
    double r = 0.0;
    for (const auto& v : verts) r = std::max(r, std::abs(v[0]));
    return std::vector<Vector>{{1.0 / r}, {-1.0 / r}};
  }
  if (binomial(m, n) > static_cast<double>(kMaxFacetSubsets)) return std::nullopt;

  double scale = 0.0;
  for (const auto& v : verts) scale = std::max(scale, norm(v));

  std::vector<Vector> facets;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Eigen::MatrixXd a(n, n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  for (;;) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = verts[idx[r]][c];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (lu.isInvertible()) {
      const Eigen::VectorXd normal = lu.solve(ones);
      Vector f(normal.data(), normal.data() + n);
      bool supporting = true;
      for (const auto& v : verts) {
        if (dot(f, v) > 1.0 + 1e-10) {
          supporting = false;
          break;
        }
      }
      if (supporting) {
        const double fn = norm(f);
        const bool dup = std::any_of(facets.begin(), facets.end(), [&](const Vector& g) {
          return norm(g - f) <= 1e-9 * (fn + 1.0 / std::max(scale, 1e-300));
        });
        if (!dup) facets.push_back(std::move(f));
      }
    }
    // next combination
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return facets;
}

void require_dim(const Body& k, const Vector& v, const char* op) {
  if (v.size() != k.dim()) {
    throw InputError(std::string(op) + ": dimension mismatch (body " + std::to_string(k.dim()) +
                     ", vector " + std::to_string(v.size()) + ")");
  }
}

void require_same_dims(const std::vector<Body>& parts, const char* what) {
  if (parts.empty()) throw InputError(std::string(what) + ": needs at least one part");
  for (const auto& p : parts) {
    if (p.dim() != parts.front().dim()) {
      throw InputError(std::string(what) + ": parts have different dimensions");
    }
  }
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double vpolytope_gauge_facets(const std::vector<Vector>& facets, const Vector& z) {
  double g = 0.0;
  for (const auto& f : facets) g = std::max(g, dot(f, z));
  return g;
}

double vpolytope_support(const std::vector<Vector>& verts, const Vector& u) {
  double s = 0.0;
  for (const auto& v : verts) s = std::max(s, dot(v, u));
  return s;
}

double ellipsoid_gauge(const Vector& axes, const Vector& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double q = z[i] / axes[i];
    s += q * q;
  }
  return std::sqrt(s);
}

double ellipsoid_support(const Vector& axes, const Vector& u) {
  double s = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double q = axes[i] * u[i];
    s += q * q;
  }
  return std::sqrt(s);
}

Interval scaled(Interval v, double s) { return {v.lo * s, v.hi * s}; }

Vector normalized(std::span<const double> d) {
  const double n = norm(d);
  Vector r(d.begin(), d.end());
  if (n > 0.0) {
    for (double& x : r) x /= n;
  }
  return r;
}

bool tight(Interval v, double ref, const OracleTolerance& tol) {
  return v.width() <= tol.bisection_tol * std::max(ref, 1e-300);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Body Body::ball(std::size_t dim, double radius) {
  if (dim < 1) throw InputError("ball: dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball: radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::ball;
  n->dim = dim;
  n->scalar = radius;
  n->circumradius = radius;
  n->inradius = radius;
  return Body(std::move(n));
}

Body Body::ellipsoid(Vector semiaxes) {
  require_valid(semiaxes, "ellipsoid");
  for (double a : semiaxes) {
    if (!(a > 0.0)) throw InputError("ellipsoid: semiaxes must be positive");
  }
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::ellipsoid;
  n->dim = semiaxes.size();
  n->circumradius = *std::max_element(semiaxes.begin(), semiaxes.end());
  n->inradius = *std::min_element(semiaxes.begin(), semiaxes.end());
  n->semiaxes = std::move(semiaxes);
  return Body(std::move(n));
}

Body Body::vpolytope(std::vector<Vector> vertices) {
  if (vertices.empty()) throw InputError("vpolytope: no vertices");
  const std::size_t dim = vertices.front().size();
  std::vector<Vector> sym;
  for (auto& v : vertices) {
    require_valid(v, "vpolytope vertex");
    if (v.size() != dim) throw InputError("vpolytope: vertices have different dimensions");
    if (is_zero(v)) continue;
    for (Vector w : {v, -v}) {
      if (std::find(sym.begin(), sym.end(), w) == sym.end()) sym.push_back(std::move(w));
    }
  }

  Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(sym.size()));
  double scale = 0.0;
  for (std::size_t j = 0; j < sym.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sym[j][i];
    scale = std::max(scale, norm(sym[j]));
  }
  if (sym.empty()) throw InputError("vpolytope: origin is not an interior point (all vertices zero)");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (static_cast<std::size_t>(lu.rank()) < dim) {
    throw InputError("vpolytope: symmetrized hull has empty interior (vertices span " +
                     std::to_string(lu.rank()) + " of " + std::to_string(dim) + " dimensions)");
  }

  auto n = std::make_shared<Node>();
  n->kind = BodyKind::vpolytope;
  n->dim = dim;
  n->circumradius = scale;
  n->facets = enumerate_facets(sym, dim);
  if (n->facets) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& f : *n->facets) r = std::min(r, 1.0 / norm(f));
    n->inradius = r;
  } else {
    // Cross-polytope of n independent vertices lies inside K; its inradius is
    // at least 1 / (sqrt(n) * ||B^{-1}||_F).
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto pivots = lu.permutationQ().indices();
    for (std::size_t j = 0; j < dim; ++j) basis.col(static_cast<Eigen::Index>(j)) = m.col(pivots[static_cast<Eigen::Index>(j)]);
    n->inradius = 1.0 / (std::sqrt(static_cast<double>(dim)) * basis.inverse().norm());
  }
  n->vertices = std::move(sym);
  return Body(std::move(n));
}

Body Body::polar(Body of) {
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::polar;
  n->dim = of.dim();
  n->circumradius = 1.0 / of.inradius();
  n->inradius = 1.0 / of.circumradius();
  n->parts.push_back(std::move(of));
  return Body(std::move(n));
}

Body Body::intersect(std::vector<Body> parts) {
  require_same_dims(parts, "intersect");
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::intersect;
  n->dim = parts.front().dim();
  n->circumradius = std::numeric_limits<double>::infinity();
  n->inradius = std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    n->circumradius = std::min(n->circumradius, p.circumradius());
    n->inradius = std::min(n->inradius, p.inradius());
  }
  n->parts = std::move(parts);
  return Body(std::move(n));
}

Body Body::scale(double factor, Body of) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InputError("scale: factor must be positive");
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::scale;
  n->dim = of.dim();
  n->scalar = factor;
  n->circumradius = factor * of.circumradius();
  n->inradius = factor * of.inradius();
  n->parts.push_back(std::move(of));
  return Body(std::move(n));
}

Body Body::minkowski(std::vector<Body> parts) {
  require_same_dims(parts, "minkowski");
  auto n = std::make_shared<Node>();
  n->kind = BodyKind::minkowski;
  n->dim = parts.front().dim();
  for (const auto& p : parts) {
    n->circumradius += p.circumradius();
    n->inradius += p.inradius();
  }
  n->parts = std::move(parts);
  return Body(std::move(n));
}

std::size_t Body::dim() const { return node_->dim; }
BodyKind Body::kind() const { return node_->kind; }
double Body::radius() const { return node_->scalar; }
const Vector& Body::semiaxes() const { return node_->semiaxes; }
const std::vector<Vector>& Body::vertices() const { return node_->vertices; }
double Body::factor() const { return node_->scalar; }
const Body& Body::operand() const { return node_->parts.front(); }
const std::vector<Body>& Body::parts() const { return node_->parts; }
const std::vector<Vector>* Body::facets() const {
  return node_->facets ? &*node_->facets : nullptr;
}
double Body::circumradius() const { return node_->circumradius; }
double Body::inradius() const { return node_->inradius; }

double circumradius_bound(const Body& k) { return k.circumradius(); }
double inradius_bound(const Body& k) { return k.inradius(); }

double vpolytope_gauge_lp(const Body& k, const Vector& z) {
  if (k.kind() != BodyKind::vpolytope) throw InputError("vpolytope_gauge_lp: not a vpolytope");
  require_dim(k, z, "gauge");
  const auto& verts = k.vertices();
  lp::DenseMatrix a(k.dim(), verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j) {
    for (std::size_t i = 0; i < k.dim(); ++i) a(i, j) = verts[j][i];
  }
  const std::vector<double> cost(verts.size(), 1.0);
  const auto res = lp::minimize(cost, a, z);
  if (res.status != lp::Status::optimal) {
    throw CertificationError("vpolytope gauge LP did not reach an optimum");
  }
  return res.objective;
}

// ---------------------------------------------------------------------------
// Cheap brackets

Interval gauge_quick(const Body& k, const Vector& z);

Interval support_quick(const Body& k, const Vector& u) {
  require_dim(k, u, "support");
  const auto& n = node_of(k);
  switch (n.kind) {
    case BodyKind::ball: {
      const double v = n.scalar * norm(u);
      return {v, v};
    }
    case BodyKind::ellipsoid: {
      const double v = ellipsoid_support(n.semiaxes, u);
      return {v, v};
    }
    case BodyKind::vpolytope: {
      const double v = vpolytope_support(n.vertices, u);
      return {v, v};
    }
    case BodyKind::scale:
      return scaled(support_quick(n.parts[0], u), n.scalar);
    case BodyKind::polar:
      return gauge_quick(n.parts[0], u);
    case BodyKind::minkowski: {
      Interval s{0.0, 0.0};
      for (const auto& p : n.parts) {
        const auto v = support_quick(p, u);
        s.lo += v.lo;
        s.hi += v.hi;
      }
      return s;
    }
    case BodyKind::intersect: {
      if (is_zero(u)) return {0.0, 0.0};
      double hi = std::numeric_limits<double>::infinity();
      double g = 0.0;
      for (const auto& p : n.parts) {
        hi = std::min(hi, support_quick(p, u).hi);
        g = std::max(g, gauge_quick(p, u).hi);
      }
      // u / ||u||_C is a point of C.
      const double lo = std::min(hi, norm_sq(u) / g);
      return {lo, hi};
    }
  }
  return {0.0, 0.0};
}

Interval gauge_quick(const Body& k, const Vector& z) {
  require_dim(k, z, "gauge");
  const auto& n = node_of(k);
  switch (n.kind) {
    case BodyKind::ball: {
      const double v = norm(z) / n.scalar;
      return {v, v};
    }
    case BodyKind::ellipsoid: {
      const double v = ellipsoid_gauge(n.semiaxes, z);
      return {v, v};
    }
    case BodyKind::vpolytope: {
      const double v = n.facets ? vpolytope_gauge_facets(*n.facets, z) : vpolytope_gauge_lp(k, z);
      return {v, v};
    }
    case BodyKind::scale:
      return scaled(gauge_quick(n.parts[0], z), 1.0 / n.scalar);
    case BodyKind::polar:
      return support_quick(n.parts[0], z);
    case BodyKind::intersect: {
      Interval g{0.0, 0.0};
      for (const auto& p : n.parts) {
        const auto v = gauge_quick(p, z);
        g.lo = std::max(g.lo, v.lo);
        g.hi = std::max(g.hi, v.hi);
      }
      return g;
    }
    case BodyKind::minkowski: {
      if (is_zero(z)) return {0.0, 0.0};
      double h = 0.0;
      double inv = 0.0;
      for (const auto& p : n.parts) {
        h += support_quick(p, z).hi;
        inv += 1.0 / gauge_quick(p, z).hi;
      }
      // <z,z> <= ||z||_M h_M(z); and sum_i z / ||z||_{A_i} lies in M.
      const double hi = 1.0 / inv;
      return {std::min(hi, norm_sq(z) / h), hi};
    }
  }
  return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// Refined brackets

namespace {

SimplexSearchOptions search_options(const OracleTolerance& tol, double step) {
  SimplexSearchOptions o;
  o.initial_step = step;
  o.size_tol = std::max(tol.bisection_tol, 1e-14);
  return o;
}

// Support of an intersection. Lower side: the best feasible point
// d / ||d||_C over searched directions d. Upper side: the infimal
// convolution min sum_i h_{A_i}(w_i) over decompositions u = sum_i w_i.
Interval intersect_support(const Body& k, const Vector& u, const OracleTolerance& tol) {
  const auto& parts = node_of(k).parts;
  const std::size_t n = k.dim();
  const std::size_t m = parts.size();
  const Interval quick = support_quick(k, u);
  if (quick.is_point() || tight(quick, quick.hi, tol)) return quick;

  auto feasible_value = [&](std::span<const double> d) {
    const Vector dir = normalized(d);
    if (is_zero(dir)) return std::numeric_limits<double>::infinity();
    double g = 0.0;
    for (const auto& p : parts) g = std::max(g, gauge_bounds(p, dir, tol).hi);
    return -dot(u, dir) / g;
  };
  const auto lower = simplex_minimize(feasible_value, normalized(u), search_options(tol, 0.3));
  double lo = std::max(quick.lo, -lower.value);

  double hi = quick.hi;
  if (m >= 2) {
    // Start with the whole of u assigned to the part of smallest support.
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = support_quick(parts[i], u).hi;
      if (v < best_val) {
        best_val = v;
        best = i;
      }
    }
    // Variables: w_0..w_{m-2} (n each); the last part gets the remainder.
    Vector start((m - 1) * n, 0.0);
    if (best < m - 1) {
      for (std::size_t j = 0; j < n; ++j) start[best * n + j] = u[j];
    }
    auto split_value = [&](std::span<const double> w) {
      Vector rest = u;
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        Vector wi(w.begin() + static_cast<std::ptrdiff_t>(i * n),
                  w.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
        s += support_bounds(parts[i], wi, tol).hi;
        for (std::size_t j = 0; j < n; ++j) rest[j] -= wi[j];
      }
      return s + support_bounds(parts[m - 1], rest, tol).hi;
    };
    const auto upper = simplex_minimize(split_value, start, search_options(tol, 0.3 * norm(u)));
    hi = std::min(hi, upper.value);
  }
  lo = std::min(lo, hi);
  return {lo, hi};
}

// Maximizer of <u, x> over k when every node below has a closed-form support.
std::optional<Vector> support_point(const Body& k, const Vector& u) {
  const auto& n = node_of(k);
  switch (n.kind) {
    case BodyKind::ball:
      return (n.scalar / norm(u)) * u;
    case BodyKind::ellipsoid: {
      const double h = ellipsoid_support(n.semiaxes, u);
      Vector x(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = n.semiaxes[i] * n.semiaxes[i] * u[i] / h;
      return x;
    }
    case BodyKind::vpolytope: {
      const auto it = std::max_element(n.vertices.begin(), n.vertices.end(),
                                       [&](const Vector& a, const Vector& b) { return dot(a, u) < dot(b, u); });
      return *it;
    }
    case BodyKind::scale: {
      auto x = support_point(n.parts[0], u);
      if (!x) return std::nullopt;
      return n.scalar * *x;
    }
    case BodyKind::minkowski: {
      Vector sum(u.size(), 0.0);
      for (const auto& part : n.parts) {
        auto x = support_point(part, u);
        if (!x) return std::nullopt;
        sum = sum + *x;
      }
      return sum;
    }
    default:
      return std::nullopt;
  }
}

// Planar Minkowski gauge. The ratio <z,u>/h(u) is unimodal in the angle of u
// over the half circle facing z, so a golden-section search gives the lower
// side; the upper side is where the ray through z crosses a chord between
// support points at nearby angles.
std::optional<Interval> planar_minkowski_gauge(const Body& k, const Vector& z) {
  auto dir = [](double th) { return Vector{std::cos(th), std::sin(th)}; };
  auto ratio = [&](double th) {
    const Vector u = dir(th);
    return dot(z, u) / support_quick(k, u).hi;
  };
  const double center = std::atan2(z[1], z[0]);
  const double half = std::numbers::pi / 2.0 - 1e-9;
  double a = center - half;
  double b = center + half;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = ratio(c);
  double fd = ratio(d);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc >= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a); fc = ratio(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a); fd = ratio(d);
    }
  }
  const double best = fc >= fd ? c : d;
  const double lo = std::max(fc, fd);

  double hi = std::numeric_limits<double>::infinity();
  auto chord = [&](const Vector& p, const Vector& q) {
    const Vector e = q - p;
    const double det = e[0] * z[1] - z[0] * e[1];
    if (det == 0.0) return;
    const double s = (e[0] * p[1] - p[0] * e[1]) / det;
    const double lambda = (z[0] * p[1] - z[1] * p[0]) / det;
    if (s > 0.0 && lambda >= 0.0 && lambda <= 1.0) hi = std::min(hi, 1.0 / s);
  };
  const auto mid = support_point(k, dir(best));
  if (!mid) return std::nullopt;
  for (double delta : {1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
    const auto left = support_point(k, dir(best - delta));
    const auto right = support_point(k, dir(best + delta));
    chord(*left, *right);
    chord(*left, *mid);
    chord(*mid, *right);
  }
  if (!std::isfinite(hi)) return std::nullopt;
  return Interval{std::min(lo, hi), std::max(lo, hi)};
}

// Gauge of a Minkowski sum. Lower side: max over directions of
// <u,z> / h_M(u). Upper side: min over decompositions z = sum a_i of
// max_i ||a_i||_{A_i}.
Interval minkowski_gauge(const Body& k, const Vector& z, const OracleTolerance& tol) {
  const auto& parts = node_of(k).parts;
  const std::size_t n = k.dim();
  const std::size_t m = parts.size();
  const Interval quick = gauge_quick(k, z);
  if (quick.is_point() || tight(quick, quick.hi, tol)) return quick;
  if (n == 2) {
    if (const auto planar = planar_minkowski_gauge(k, z);
        planar && tight(*planar, planar->hi, tol)) {
      return {std::max(planar->lo, quick.lo), std::min(planar->hi, quick.hi)};
    }
  }

  auto ratio = [&](std::span<const double> d) {
    const Vector dir = normalized(d);
    if (is_zero(dir)) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    for (const auto& p : parts) h += support_bounds(p, dir, tol).hi;
    return -dot(z, dir) / h;
  };
  const auto lower = simplex_minimize(ratio, normalized(z), search_options(tol, 0.3));
  double lo = std::max(quick.lo, -lower.value);

  // Quick decomposition a_i = z * (1/g_i) / sum_j (1/g_j) as starting point.
  std::vector<double> inv(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    inv[i] = 1.0 / gauge_quick(parts[i], z).hi;
    total += inv[i];
  }
  Vector start((m - 1) * n);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) start[i * n + j] = z[j] * inv[i] / total;
  }
  auto worst = [&](std::span<const double> a) {
    Vector rest = z;
    double g = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      Vector ai(a.begin() + static_cast<std::ptrdiff_t>(i * n),
                a.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
      g = std::max(g, gauge_bounds(parts[i], ai, tol).hi);
      for (std::size_t j = 0; j < n; ++j) rest[j] -= ai[j];
    }
    return std::max(g, gauge_bounds(parts[m - 1], rest, tol).hi);
  };
  double hi = quick.hi;
  if (m >= 2) {
    const auto upper = simplex_minimize(worst, start, search_options(tol, 0.3 * norm(z) / static_cast<double>(m)));
    hi = std::min(hi, upper.value);
  }
  lo = std::min(lo, hi);
  return {lo, hi};
}

}  // namespace

Interval support_bounds(const Body& k, const Vector& u, const OracleTolerance& tol) {
  require_dim(k, u, "support");
  const auto& n = node_of(k);
  switch (n.kind) {
    case BodyKind::ball:
    case BodyKind::ellipsoid:
    case BodyKind::vpolytope:
      return support_quick(k, u);
    case BodyKind::scale:
      return scaled(support_bounds(n.parts[0], u, tol), n.scalar);
    case BodyKind::polar:
      return gauge_bounds(n.parts[0], u, tol);
    case BodyKind::minkowski: {
      Interval s{0.0, 0.0};
      for (const auto& p : n.parts) {
        const auto v = support_bounds(p, u, tol);
        s.lo += v.lo;
        s.hi += v.hi;
      }
      return s;
    }
    case BodyKind::intersect:
      if (is_zero(u)) return {0.0, 0.0};
      return intersect_support(k, u, tol);
  }
  return {0.0, 0.0};
}

Interval gauge_bounds(const Body& k, const Vector& z, const OracleTolerance& tol) {
  require_dim(k, z, "gauge");
  const auto& n = node_of(k);
  switch (n.kind) {
    case BodyKind::ball:
    case BodyKind::ellipsoid:
    case BodyKind::vpolytope:
      return gauge_quick(k, z);
    case BodyKind::scale:
      return scaled(gauge_bounds(n.parts[0], z, tol), 1.0 / n.scalar);
    case BodyKind::polar:
      return support_bounds(n.parts[0], z, tol);
    case BodyKind::intersect: {
      Interval g{0.0, 0.0};
      for (const auto& p : n.parts) {
        const auto v = gauge_bounds(p, z, tol);
        g.lo = std::max(g.lo, v.lo);
        g.hi = std::max(g.hi, v.hi);
      }
      return g;
    }
    case BodyKind::minkowski:
      if (is_zero(z)) return {0.0, 0.0};
      return minkowski_gauge(k, z, tol);
  }
  return {0.0, 0.0};
}

SupportValue support(const Body& k, const Vector& u) {
  const auto v = support_quick(k, u);
  return {v.hi, v.is_point()};
}

double gauge(const Body& k, const Vector& z, const OracleTolerance& tol) {
  return gauge_bounds(k, z, tol).hi;
}

bool contains(const Body& k, const Vector& x, const OracleTolerance& tol) {
  const double limit = 1.0 + tol.membership_slack;
  const auto quick = gauge_quick(k, x);
  if (quick.hi <= limit) return true;
  if (quick.lo > limit) return false;
  return gauge_bounds(k, x, tol).hi <= limit;
}

}  // namespace metent
