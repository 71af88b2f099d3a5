#pragma once

#include <functional>
#include <span>

#include "metent/vector.hpp"

namespace metent {

struct SimplexSearchOptions {
  double initial_step = 0.25;
  double size_tol = 1e-11;
  int max_iter = 4000;
  int restarts = 3;
};

struct SimplexSearchResult {
  Vector x;
  double value = 0.0;
};

/// Derivative-free minimization (Nelder-Mead, GSL nmsimplex2) with restarts
/// from the incumbent. Used on the low-dimensional convex, nonsmooth
/// subproblems behind intersection supports and Minkowski gauges.
SimplexSearchResult simplex_minimize(const std::function<double(std::span<const double>)>& f,
                                     Vector start, const SimplexSearchOptions& opts = {});

}  // namespace metent
