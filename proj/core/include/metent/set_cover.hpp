#pragma once

#include <cstddef>
#include <vector>

#include "metent/covering.hpp"

namespace metent {

/// Points of the lattice pitch*Z^n lying in K (symmetric under x -> -x).
std::vector<Vector> symmetric_lattice(const Body& k, double pitch, const OracleTolerance& tol = {});

/// Sample that exact_cover_small must cover when none is supplied: boundary
/// points of K along evenly spread directions plus a thinned copy of the
/// candidates at euclidean spacing `interior_spacing`.
std::vector<Vector> cover_sample(const Body& k, const std::vector<Vector>& candidates,
                                 std::size_t boundary_points, double interior_spacing,
                                 const OracleTolerance& tol = {});

struct ExactCoverOptions {
  std::vector<Vector> sample;          // empty: cover_sample(...) with the fields below
  std::size_t boundary_points = 720;
  double interior_spacing = 0.0;       // <= 0: t * inradius(T) / 5
  std::size_t root_iterations = 4000;  // subgradient steps for the root bound
  std::size_t node_iterations = 150;
  OracleTolerance tol{};
};

/// Minimum number of translates c + tT (c among `candidates`) covering the
/// sample, by branch and bound. certification is discrete_exact when the
/// search completes; otherwise budget_exhausted is set and [lower, upper]
/// brackets the discrete optimum.
CoverEstimate exact_cover_small(const Body& k, const Body& t_body, double t,
                                const std::vector<Vector>& candidates, std::size_t max_nodes,
                                const ExactCoverOptions& opts = {});

}  // namespace metent
