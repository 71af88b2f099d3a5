#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "metent/covering.hpp"
#include "metent/functionals.hpp"

namespace metent {

/// Two separated sets to be merged into one product set. Radii satisfy
/// A > a > 3B > 3b; `xset` is a-separated and `yset` b-separated.
struct CombinerInput {
  SeparatedSet xset;
  SeparatedSet yset;
  double a = 0.0;
  double b = 0.0;
  double A = 0.0;
  double B = 0.0;
};

/// Separation target of the weighted primal product z = w x + (1 - w) y.
double primal_product_separation(double weight, double b);

/// All points w x_i + (1 - w) y_j for x_i in xset, y_j in yset. Both sets
/// must live in the same container K and gauge T; xset within K ∩ AT,
/// yset within K ∩ BT. The default weight 1/2 certifies separation b/2;
/// weight eps certifies (1 - eps) b when a > 3 (1 - eps) B / eps.
/// Throws InputError on bad hypotheses and CertificationError if the output
/// fails its pairwise check.
SeparatedSet primal_combine(const CombinerInput& in, double weight = 0.5,
                            const OracleTolerance& tol = {});

/// a / (2a - b)
double dual_mixing_weight(double a, double b);

/// alpha K° + ((1 - alpha)/B) D, the gauge used for the dual product's
/// second factor.
Body dual_mixed_body(const Body& k, double a, double b, double B);

/// Greedy b-separated subset of D in the gauge of dual_mixed_body.
SeparatedSet mixed_gauge_separated(const Body& k, double a, double b, double B,
                                   std::size_t budget, std::uint64_t seed);

/// Points (b/2a) x_i + (1 - b/2a) y_j in D, certified (b/2)K°-separated.
/// xset: aK°-separated in D; yset: b-separated in D for dual_mixed_body.
SeparatedSet dual_combine(const CombinerInput& in, const Body& k, const OracleTolerance& tol = {});

struct NetTransferOptions {
  std::size_t verify_samples = 4000;
  std::uint64_t seed = 1;
  OracleTolerance tol{};
};

/// Given S ⊂ K ⊂ conv(S) + D and a rho conv(S)°-net of D, returns one point
/// of D per net point forming a (2 rho + 2) K°-net of D on a verification
/// sample. Throws InputError if the preconditions fail on samples and
/// CertificationError if the output fails.
std::vector<Vector> net_transfer_polar(const std::vector<Vector>& s, const Body& k, double rho,
                                       const std::vector<Vector>& net,
                                       const NetTransferOptions& opts = {});

struct DiameterRealization {
  SeparatedSet set;    // 1-separated in the euclidean gauge, contains ±endpoint
  Vector endpoint;     // approximate farthest point of K from the origin
  double diameter = 0.0;        // 2 |endpoint|
  double diameter_slack = 0.0;  // 2 R(K) - diameter, >= 0
};

/// Separated set containing an (approximate) diameter pair of K; requires
/// N(K, D) > 1.
DiameterRealization diameter_realizing_separated(const Body& k, std::size_t budget,
                                                 std::uint64_t seed);

enum class Parity { odd, even };
std::string_view to_string(Parity p);

/// One merge of the product bookkeeping: the accumulated factor at index
/// `upper` absorbs the factor at `upper - 2`.
struct Collapse {
  Parity group = Parity::odd;
  std::size_t upper = 0;
  std::size_t lower = 0;
  double ratio = 0.0;  // (sqrt(R_upper)/4) / (R_{upper-1}/2)
  bool ok = false;     // ratio >= 3
};

struct TelescopeSchedule {
  std::vector<std::size_t> odd;   // resolution indices 1, 3, ..., s-1
  std::vector<std::size_t> even;  // resolution indices 0, 2, ..., s-2
  std::vector<Collapse> collapses;
  std::vector<std::size_t> failing;  // `upper` of every failed collapse, ascending
  [[nodiscard]] std::optional<std::size_t> first_failure() const;
};

TelescopeSchedule telescope_schedule(const IterationSequence& seq);

}  // namespace metent
