#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metent/vector.hpp"

namespace metent::lp {

/// Row-major dense matrix, rows x cols.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vector x;
  double objective = 0.0;
};

/// Minimizes c'x subject to A x = b, x >= 0 with a dense two-phase simplex
/// using Bland's rule. Intended for the small problems (tens of variables)
/// arising from polytope oracles; scratch space is allocated per call.
Result minimize(std::span<const double> c, const DenseMatrix& a, std::span<const double> b,
                double tol = 1e-11);

}  // namespace metent::lp
