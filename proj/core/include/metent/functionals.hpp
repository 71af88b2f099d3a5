#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "metent/body.hpp"

namespace metent {

/// Tunable constants of the entropy-duality argument. The defaults are
/// placeholders (the argument only asserts existence) and are echoed in
/// every report.
struct PaperConstants {
  double C0 = 1.0;        // mean-width bound for hulls of few points
  double C2 = 1.0;        // first-step constant, outer side
  double c2 = 1.0;        // first-step constant, inner side
  double C2_dual = 1.0;   // first-step constant for the dual parameter
  double eps = 1.0;       // exponent slack 1 + eps
  double R0 = 100.0;      // first radius of the iteration

  void validate() const;  // throws InputError; requires R0 >= 16
};

enum class WidthPath {
  exact,           // every sampled support value was exact
  refined,         // some values came from a two-sided optimization bracket
  upper_fallback,  // some values are cheap upper bounds only
};
std::string_view to_string(WidthPath p);

struct MeanWidth {
  double estimate = 0.0;
  double stderr_ = 0.0;
  WidthPath path = WidthPath::exact;
  double max_gap = 0.0;  // widest support bracket used
  std::size_t samples = 0;
};

struct MeanWidthOptions {
  unsigned workers = 1;
  std::size_t partitions = 16;  // fixed so results do not depend on workers
  bool refine = true;           // refine non-exact supports; else upper fallback
  OracleTolerance tol{};
};

/// Monte Carlo average of h_A over the unit sphere (half-width convention).
MeanWidth mean_width(const Body& a, std::size_t samples, std::uint64_t seed,
                     const MeanWidthOptions& opts = {});

/// Mean width of conv{±p : p in points}. The hull may be lower dimensional
/// (a segment in the plane, say), which Body cannot represent.
MeanWidth mean_width(const std::vector<Vector>& points, std::size_t samples, std::uint64_t seed,
                     const MeanWidthOptions& opts = {});

enum class GammaKind { gamma, gamma_prime };
std::string_view to_string(GammaKind g);

struct GammaValue {
  double value = 1.0;
  double mstar = 0.0;
  double mstar_stderr = 0.0;
  double k_bits = 0.0;
  GammaKind which = GammaKind::gamma;
  bool k_undefined = false;  // k_bits < 1: value uses sqrt(n) in place of sqrt(n/k)
};

/// max(1, M*(K ∩ D) sqrt(n / k)) with k = log2 of the packing lower bound
/// for N(K, D).
GammaValue gamma(const Body& k, const PaperConstants& consts, std::size_t budget,
                 std::uint64_t seed, std::size_t samples = 4000);
/// Same with k = log2 of the packing lower bound for N(D, K°).
GammaValue gamma_prime(const Body& k, const PaperConstants& consts, std::size_t budget,
                       std::uint64_t seed, std::size_t samples = 4000);

/// 2 C2 (C0 log2(x)^3 + 1) + 2 for x >= 1.
double psi(double x, const PaperConstants& consts);
/// The x >= 1 with psi(x) = y (y >= psi(1)), in closed form.
double psi_inverse(double y, const PaperConstants& consts);

enum class SequenceKind { primal, dual };
std::string_view to_string(SequenceKind k);

struct IterationSequence {
  std::vector<double> values;
  SequenceKind kind = SequenceKind::primal;
  std::size_t s = 0;  // stopping index: first even index with values[s] > diameter
};

/// Next radius from the defining relation:
///   primal: sqrt(R)/2 = psi(R_next / sqrt(R))
///   dual:   psi(R_next / R) = sqrt(R)/2
/// solved by bisection in log space. Throws InputError if sqrt(R) <= 4 + 4 C2.
double next_radius(SequenceKind kind, double r, const PaperConstants& consts);

/// The exp-based closed form of the same recurrence (natural logarithm
/// inside psi); a cross-check only.
double next_radius_closed_form(SequenceKind kind, double r, const PaperConstants& consts);

/// |lhs - rhs| / |rhs| of the defining relation for the pair (r, r_next).
double relation_residual(SequenceKind kind, double r, double r_next,
                         const PaperConstants& consts);

/// Iterates from consts.R0 until the first even index whose value exceeds
/// `diameter`. Throws InputError when a step fails to increase the radius
/// or the values pass 1e300.
IterationSequence iteration_sequence(SequenceKind kind, const PaperConstants& consts,
                                     double diameter);
IterationSequence primal_sequence(const PaperConstants& consts, double diameter);
IterationSequence dual_sequence(const PaperConstants& consts, double diameter);

}  // namespace metent
