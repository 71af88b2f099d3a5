#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "metent/body.hpp"

namespace metent {

/// Points of `container` whose pairwise gauge distance in `ambient`
/// strictly exceeds `separation`.
struct SeparatedSet {
  std::vector<Vector> points;
  double separation = 0.0;
  Body ambient;
  Body container;
};

enum class Certification {
  exact,             // lower == upper proven in continuous space
  discrete_exact,    // optimal relative to a candidate/sample discretization
  sample_certified,  // upper covers the candidate stream; all of K at t(1+eta)
};

std::string_view to_string(Certification c);

/// Two-sided bound on N(K, tT).
struct CoverEstimate {
  std::size_t lower = 1;
  std::size_t upper = 1;
  std::vector<Vector> centers;
  Certification certification = Certification::sample_certified;
  double t = 0.0;
  double pitch = 0.0;  // lattice pitch of the candidate stream
  double eta = 0.0;    // centers cover all of K at resolution t(1 + eta)
  std::size_t candidates = 0;
  bool budget_exhausted = false;  // exact_cover_small ran out of nodes
};

/// Deterministic lattice points (pitch tied to the resolution) followed by
/// seeded uniform samples of K. Lattice points just outside K are pulled
/// radially onto its boundary so that every point of K has a nearby stream
/// point.
struct CandidateStream {
  std::vector<Vector> points;
  std::size_t lattice_count = 0;  // points[0, lattice_count) are the lattice
  double pitch = 0.0;
  /// Euclidean radius r such that every x in K is within r of a lattice point.
  double lattice_cover_radius = 0.0;
};

/// Default candidate budgets: 2e5 for n <= 3, 1e6 for n in {4, 5}.
std::size_t default_budget(std::size_t dim);
/// Smallest budget accepted by covering_bounds.
std::size_t minimum_budget(std::size_t dim);

/// Lattice points at most `max_lattice`; the pitch starts at
/// resolution * inradius(T) / 4 and is coarsened to respect the cap.
CandidateStream candidate_stream(const Body& k, const Body& t_body, double resolution,
                                 std::size_t budget, std::uint64_t seed,
                                 std::size_t max_lattice, const OracleTolerance& tol = {});

enum class PackingStrategy { farthest_point, first_fit, best };

struct SeparationOptions {
  std::vector<Vector> mandatory;  // inserted first, in order
  PackingStrategy strategy = PackingStrategy::best;
  OracleTolerance tol{};
};

/// Absolute guard added to every strict separation test.
inline constexpr double kSeparationGuard = 1e-12;

/// Greedy eps-separated subset of `stream` (plus mandatory points). The
/// result is maximal: every stream point lies within gauge distance
/// eps + guard of a chosen point.
SeparatedSet separated_from_stream(const Body& k, const Body& t_body, double eps,
                                   const std::vector<Vector>& stream,
                                   const SeparationOptions& opts = {});

/// greedy_separated over candidate_stream(K, T, eps, budget, seed).
SeparatedSet greedy_separated(const Body& k, const Body& t_body, double eps, std::size_t budget,
                              std::uint64_t seed, const SeparationOptions& opts = {});

/// Lower bound from a 2t-separated set, upper bound from the smallest of a
/// maximal t-separated set (a t-net of the stream) and two greedy set covers
/// of the lattice part of the stream.
CoverEstimate covering_bounds(const Body& k, const Body& t_body, double t, std::size_t budget,
                              std::uint64_t seed, const OracleTolerance& tol = {});

struct StaircaseEntry {
  double t = 0.0;
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  std::size_t lower = 1;
  std::size_t upper = 1;
  Certification certification = Certification::sample_certified;
  double pitch = 0.0;
  double eta = 0.0;
};

/// Monotone step function t -> (log2 lower, log2 upper) of N(K, tT).
struct Staircase {
  std::vector<StaircaseEntry> entries;  // ascending t
  /// Bracket of sup_{x in K} ||x||_T, the smallest t with N(K, tT) = 1.
  double radius_lo = 0.0;
  double radius_hi = std::numeric_limits<double>::infinity();
  std::vector<std::string> repairs;  // monotonicity repairs applied

  [[nodiscard]] std::vector<double> grid() const;
};

Staircase staircase(const Body& k, const Body& t_body, const std::vector<double>& grid,
                    std::size_t budget, std::uint64_t seed, unsigned workers = 1,
                    const OracleTolerance& tol = {});

/// CSV with header t,lower_bits,upper_bits,certification,pitch.
std::string staircase_csv(const Staircase& st);

struct EntropyBracket {
  int k = 1;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// Brackets e_k = inf{eps : N(K, eps T) <= 2^{k-1}} for k = 1..k_max.
std::vector<EntropyBracket> entropy_numbers(const Staircase& st, int k_max);

}  // namespace metent
