#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metent/covering.hpp"
#include "metent/functionals.hpp"

namespace metent {

/// Both directed exponent ratios at one (t, alpha). Each is an upper
/// estimate (from brackets) of the exponent needed at that point.
struct RatioEntry {
  double t = 0.0;
  double alpha = 1.0;
  /// upper_bits N(K, tD) / max(1, lower_bits N(D, alpha t K°))
  double right = 0.0;
  /// upper_bits N(D, (t/alpha) K°) / max(1, lower_bits N(K, tD))
  double left = 0.0;
};

struct BetaSummary {
  double alpha = 1.0;
  double beta = 0.0;  // max over the grid of both directed ratios
};

struct DualityReport {
  std::string body_json;
  std::vector<double> grid;
  std::vector<double> alpha_grid;
  Staircase primal;  // K against tD on `grid`
  Staircase dual;    // D against tK° on {alpha t, t/alpha}
  std::vector<RatioEntry> ratios;
  std::vector<BetaSummary> beta;
  /// At each grid t: the primal and dual bit brackets at the same t intersect
  /// (only filled when t itself is on the dual grid).
  std::vector<std::optional<bool>> overlap;
  PaperConstants constants;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
};

DualityReport duality_report(const Body& k, const std::vector<double>& grid,
                             const std::vector<double>& alpha_grid, const PaperConstants& consts,
                             std::size_t budget, std::uint64_t seed, unsigned workers = 1);

/// Summary of the empirical beta over a batch of reports for one alpha.
struct BetaBatch {
  double alpha = 1.0;
  double max = 0.0;
  double quantile = 0.0;  // at `level`
  double level = 0.9;
  std::vector<double> values;
};
BetaBatch summarize_beta(const std::vector<DualityReport>& reports, double alpha,
                         double level = 0.9);

/// One covering-number inequality lhs <= rhs checked from brackets:
/// consistent iff lower_bits(lhs) <= upper_bits(rhs).
struct InequalityCheck {
  std::string name;
  double lhs_lower_bits = 0.0;
  double rhs_upper_bits = 0.0;
  bool consistent = true;
  bool skipped = false;
  std::string note;
};

struct FirstStepRecord {
  GammaValue gamma;
  GammaValue gamma_prime;
  double radius = 1.0;  // R with K ⊂ RD used for psi(R)
  std::vector<InequalityCheck> checks;
  [[nodiscard]] bool consistent() const;
};

FirstStepRecord check_first_step(const Body& k, const PaperConstants& consts, std::size_t budget,
                                 std::uint64_t seed);

struct IterationFactor {
  std::size_t j = 0;
  /// Factor of the unrolled product in its original form.
  CoverEstimate lemma_factor;
  /// The same factor after the psi step (before the exponent).
  CoverEstimate corollary_factor;
  /// lemma_factor <= corollary_factor^exponent, from brackets.
  InequalityCheck step;
};

struct IterationRecord {
  SequenceKind kind = SequenceKind::primal;
  IterationSequence sequence;
  CoverEstimate lhs;
  CoverEstimate tail;  // term at the stopping index
  bool tail_is_one = false;
  std::vector<IterationFactor> factors;
  InequalityCheck lemma_form;      // lhs <= tail * prod lemma factors
  InequalityCheck corollary_form;  // lhs <= tail * prod corollary factors^exponent
  [[nodiscard]] bool consistent() const;
};

/// Throws InputError when the sequence cannot be generated from consts.R0.
IterationRecord check_iteration(const Body& k, SequenceKind kind, const PaperConstants& consts,
                                std::size_t budget, std::uint64_t seed);

enum class BodyFamily { sphere_hull, diagonal_ellipsoid, zonotope };
std::string_view to_string(BodyFamily f);
BodyFamily body_family_from_string(std::string_view s);

struct FamilySpec {
  BodyFamily family = BodyFamily::sphere_hull;
  std::size_t dim = 2;
  double radius = 8.0;      // R: bodies lie in R D
  std::size_t points = 6;   // hull points (sphere_hull) or segments (zonotope, <= 4)
};

/// Seeded random body from the family; degenerate draws are redrawn.
Body sample_body(const FamilySpec& spec, std::uint64_t seed);

struct ProbeRecord {
  std::string body_json;
  double radius = 0.0;
  double mstar = 0.0;
  double k_bits = 0.0;
  bool excluded = false;                  // k_bits < 1
  double conjecture_ratio = 0.0;          // M*(K∩D) sqrt(n/k)
  std::optional<double> log_ratio;        // M*(K∩D) / (log2(R)^3 sqrt(k/n)); none if R <= 1
};

struct ConjectureProbe {
  FamilySpec spec;
  std::vector<ProbeRecord> records;
  double max = 0.0;
  double mean = 0.0;
  std::vector<std::size_t> histogram;  // 10 bins over [0, max]
  PaperConstants constants;
  std::uint64_t seed = 0;
};

ConjectureProbe geometric_lemma_probe(const FamilySpec& spec, std::size_t count,
                                      const PaperConstants& consts, std::size_t budget,
                                      std::uint64_t seed, unsigned workers = 1);

}  // namespace metent
