#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "metent/vector.hpp"

namespace metent {

/// Tolerances for oracle evaluation. membership_slack is relative: contains()
/// must accept (1 + membership_slack) K and reject everything outside K.
struct OracleTolerance {
  double membership_slack = 1e-9;
  double bisection_tol = 1e-10;

  void validate() const;
};

enum class BodyKind { ball, ellipsoid, vpolytope, polar, intersect, scale, minkowski };

std::string_view to_string(BodyKind kind);

/// A symmetric convex body with the origin in its interior, represented as an
/// immutable oracle tree. Copies share structure and are cheap.
class Body {
 public:
  static Body ball(std::size_t dim, double radius);
  static Body ellipsoid(Vector semiaxes);
  /// Vertices are symmetrized (v and -v both kept). Throws InputError if the
  /// resulting hull has empty interior.
  static Body vpolytope(std::vector<Vector> vertices);
  static Body polar(Body of);
  static Body intersect(std::vector<Body> parts);
  static Body scale(double factor, Body of);
  static Body minkowski(std::vector<Body> parts);

  [[nodiscard]] std::size_t dim() const;
  [[nodiscard]] BodyKind kind() const;

  [[nodiscard]] double radius() const;                 // ball
  [[nodiscard]] const Vector& semiaxes() const;        // ellipsoid
  [[nodiscard]] const std::vector<Vector>& vertices() const;  // vpolytope, symmetrized
  [[nodiscard]] double factor() const;                 // scale
  [[nodiscard]] const Body& operand() const;           // polar, scale
  [[nodiscard]] const std::vector<Body>& parts() const;  // intersect, minkowski

  /// Facet normals a_f with K = {x : <a_f, x> <= 1}, when enumerated.
  [[nodiscard]] const std::vector<Vector>* facets() const;

  /// R with K inside R*D.
  [[nodiscard]] double circumradius() const;
  /// r > 0 with r*D inside K (a certified lower bound, not always tight).
  [[nodiscard]] double inradius() const;

  struct Node;

 private:
  explicit Body(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend const Node& node_of(const Body& b);
};

struct SupportValue {
  double value = 0.0;
  bool exact = true;
};

/// h_K(u). Exact for every node whose subtree needs no optimization; for
/// intersections it is the min of the parts' supports and exact == false.
SupportValue support(const Body& k, const Vector& u);

/// Cheap bracket of h_K(u): closed forms only, no optimization.
Interval support_quick(const Body& k, const Vector& u);
/// Tight bracket of h_K(u); intersections are resolved by a primal search
/// (feasible points, lower side) and an infimal-convolution search (upper side).
Interval support_bounds(const Body& k, const Vector& u, const OracleTolerance& tol = {});

/// ||z||_K = inf{t > 0 : z in tK}. Returns the upper side of gauge_bounds.
double gauge(const Body& k, const Vector& z, const OracleTolerance& tol = {});
Interval gauge_quick(const Body& k, const Vector& z);
Interval gauge_bounds(const Body& k, const Vector& z, const OracleTolerance& tol = {});

/// True if x in (1 + slack) K, false if x not in K; either in between.
bool contains(const Body& k, const Vector& x, const OracleTolerance& tol = {});

double circumradius_bound(const Body& k);
double inradius_bound(const Body& k);

/// Gauge of a V-polytope through the linear program
/// min sum(mu) s.t. sum(mu_i v_i) = z, mu >= 0. Independent of the facet path.
double vpolytope_gauge_lp(const Body& k, const Vector& z);

}  // namespace metent
