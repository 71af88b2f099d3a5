#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "metent/body.hpp"

namespace metent::detail {

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const;
};

/// Uniform hash grid; for_neighbors visits ids in the 3^n surrounding cells
/// until the visitor returns false.
class CellGrid {
 public:
  CellGrid(std::size_t dim, double cell);
  void insert(const Vector& x, std::size_t id);
  void for_neighbors(const Vector& x, const std::function<bool(std::size_t)>& visit) const;

 private:
  std::vector<std::int64_t> key(const Vector& x) const;
  std::size_t dim_;
  double cell_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> cells_;
};

/// Gauge of T with euclidean shortcuts: |z|/R(T) <= ||z||_T <= |z|/r(T).
struct GaugeOracle {
  GaugeOracle(const Body& t_body, const OracleTolerance& tol);

  double lower(const Vector& z) const;
  double upper(const Vector& z) const;
  /// Certified ||z||_T > eps (decided on the lower side).
  bool exceeds(const Vector& z, double eps) const;
  /// ||z||_T <= eps (decided on the upper side).
  bool within(const Vector& z, double eps) const;

  const Body& body;
  double outer;
  double inner;
  OracleTolerance tol;
};

std::vector<std::size_t> lexicographic_order(const std::vector<Vector>& pts);

}  // namespace metent::detail
