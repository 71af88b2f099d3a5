#include "metent/lp.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace metent::lp {
namespace {

// Tableau over m constraint rows plus one objective row. Columns are the
// structural variables, then the artificials, then the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_((m + 1) * (n + 1), 0.0), basis_(m) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& obj(std::size_t j) { return at(m_, j); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j <= n_; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(row, j);
    }
    basis_[row] = col;
  }

  // Runs simplex iterations over columns [0, active_cols). Returns false on
  // unboundedness.
  bool run(std::size_t active_cols, double tol) {
    for (;;) {
      std::size_t enter = active_cols;
      for (std::size_t j = 0; j < active_cols; ++j) {
        if (obj(j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter == active_cols) return true;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= tol) continue;
        const double ratio = rhs(i) / a;
        if (ratio < best - tol || (std::abs(ratio - best) <= tol && leave < m_ &&
                                   basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  std::size_t rows() const { return m_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Result minimize(std::span<const double> c, const DenseMatrix& a, std::span<const double> b,
                double tol) {
  const std::size_t m = a.rows;
  const std::size_t k = a.cols;
  assert(c.size() == k && b.size() == m);

  Tableau tab(m, k + m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < k; ++j) tab.at(i, j) = sign * a(i, j);
    tab.at(i, k + i) = 1.0;
    tab.rhs(i) = sign * b[i];
    tab.basis(i) = k + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) tab.obj(j) -= tab.at(i, j);
    tab.rhs(m) -= tab.rhs(i);
  }
  tab.run(k + m, tol);

  Result out;
  const double scale = 1.0 + [&] {
    double s = 0.0;
    for (double v : b) s += std::abs(v);
    return s;
  }();
  if (-tab.rhs(m) > 1e3 * tol * scale) {
    out.status = Status::infeasible;
    return out;
  }

  // Drive remaining artificials out of the basis; rows that cannot be
  // pivoted are redundant and are left with a zero artificial.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis(i) < k) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(tab.at(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 objective row, priced out against the current basis.
  for (std::size_t j = 0; j <= k + m; ++j) tab.obj(j) = 0.0;
  for (std::size_t j = 0; j < k; ++j) tab.obj(j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = tab.basis(i);
    if (bj >= k) continue;
    const double f = tab.obj(bj);
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= k + m; ++j) tab.obj(j) -= f * tab.at(i, j);
  }
  // Artificial columns are excluded from entering.
  if (!tab.run(k, tol)) {
    out.status = Status::unbounded;
    return out;
  }

  out.status = Status::optimal;
  out.x.assign(k, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis(i) < k) out.x[tab.basis(i)] = std::max(0.0, tab.rhs(i));
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < k; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace metent::lp
