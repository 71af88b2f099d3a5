#include <cmath>
#include <sstream>

#include "metent/error.hpp"
#include "metent/functionals.hpp"

namespace metent {

std::string_view to_string(SequenceKind k) { return k == SequenceKind::primal ? "primal" : "dual"; }

namespace {

constexpr double kOverflow = 1e300;

double step_base(SequenceKind kind, double r) { return kind == SequenceKind::primal ? std::sqrt(r) : r; }

void require_start(double r, const PaperConstants& consts) {
  if (!(std::sqrt(r) - 4.0 - 4.0 * consts.C2 > 0.0)) {
    std::ostringstream msg;
    msg << "radius " << r << " too small: need sqrt(R) > 4 + 4*C2";
    throw InputError(msg.str());
  }
}

}  // namespace

double next_radius(SequenceKind kind, double r, const PaperConstants& consts) {
  require_start(r, consts);
  const double target = std::sqrt(r) / 2.0;
  // psi(2^l) is increasing in l >= 0; bracket the root, then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (psi(std::exp2(hi), consts) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 2048.0) throw InputError("next_radius: overflow");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (psi(std::exp2(mid), consts) < target ? lo : hi) = mid;
  }
  const double l = std::abs(psi(std::exp2(lo), consts) - target) <=
                           std::abs(psi(std::exp2(hi), consts) - target)
                       ? lo
                       : hi;
  return step_base(kind, r) * std::exp2(l);
}

double next_radius_closed_form(SequenceKind kind, double r, const PaperConstants& consts) {
  require_start(r, consts);
  const double inner = (std::sqrt(r) - 4.0 - 4.0 * consts.C2) / (4.0 * consts.C2 * consts.C0);
  return step_base(kind, r) * std::exp(std::cbrt(inner));
}

double relation_residual(SequenceKind kind, double r, double r_next, const PaperConstants& consts) {
  const double lhs = psi(r_next / step_base(kind, r), consts);
  const double rhs = std::sqrt(r) / 2.0;
  return std::abs(lhs - rhs) / std::abs(rhs);
}

IterationSequence iteration_sequence(SequenceKind kind, const PaperConstants& consts,
                                     double diameter) {
  consts.validate();
  IterationSequence seq;
  seq.kind = kind;
  seq.values.push_back(consts.R0);
  for (;;) {
    const std::size_t j = seq.values.size() - 1;
    if (j >= 2 && j % 2 == 0 && seq.values[j] > diameter) {
      seq.s = j;
      return seq;
    }
    const double r = seq.values[j];
    const double next = next_radius(kind, r, consts);
    if (!(next > r)) {
      std::ostringstream msg;
      msg << to_string(kind) << " sequence does not increase at index " << j << ": " << r
          << " -> " << next;
      throw InputError(msg.str());
    }
    if (next > kOverflow) throw InputError("iteration_sequence: values exceed 1e300");
    seq.values.push_back(next);
  }
}

IterationSequence primal_sequence(const PaperConstants& consts, double diameter) {
  return iteration_sequence(SequenceKind::primal, consts, diameter);
}

IterationSequence dual_sequence(const PaperConstants& consts, double diameter) {
  return iteration_sequence(SequenceKind::dual, consts, diameter);
}

}  // namespace metent
