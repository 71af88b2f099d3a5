#include <algorithm>
#include <cmath>

#include "metent/duality.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

namespace metent {

namespace {

double lower_bits(const CoverEstimate& e) { return std::log2(static_cast<double>(e.lower)); }
double upper_bits(const CoverEstimate& e) { return std::log2(static_cast<double>(e.upper)); }

InequalityCheck compare(std::string name, double lhs_lower, double rhs_upper) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs_lower_bits = lhs_lower;
  c.rhs_upper_bits = rhs_upper;
  c.consistent = lhs_lower <= rhs_upper + 1e-12;
  return c;
}

InequalityCheck skipped(std::string name, std::string note) {
  InequalityCheck c;
  c.name = std::move(name);
  c.skipped = true;
  c.note = std::move(note);
  return c;
}

Body capped(const Body& k, double r) {
  if (k.circumradius() <= r) return k;
  return Body::intersect({k, Body::ball(k.dim(), r)});
}

class Counter {
 public:
  Counter(std::size_t budget, std::uint64_t seed) : budget_(budget), seed_(seed) {}
  CoverEstimate operator()(const Body& a, const Body& b, double t) {
    return covering_bounds(a, b, t, budget_, derive_seed(seed_, next_++));
  }

 private:
  std::size_t budget_;
  std::uint64_t seed_;
  std::uint64_t next_ = 100;
};

}  // namespace

bool FirstStepRecord::consistent() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityCheck& c) { return c.skipped || c.consistent; });
}

FirstStepRecord check_first_step(const Body& k, const PaperConstants& consts, std::size_t budget,
                                 std::uint64_t seed) {
  consts.validate();
  const Body disk = Body::ball(k.dim(), 1.0);
  const Body polar = Body::polar(k);
  Counter count(budget, seed);

  FirstStepRecord rec{gamma(k, consts, budget, derive_seed(seed, 1)),
                      gamma_prime(k, consts, budget, derive_seed(seed, 2)),
                      std::max(1.0, k.circumradius()),
                      {}};
  const auto n_kd = count(k, disk, 1.0);
  const double e = 1.0 + consts.eps;

  if (rec.gamma.k_undefined) {
    rec.checks.push_back(skipped("first-step outer", "k < 1: gamma undefined"));
    rec.checks.push_back(skipped("first-step inner", "k < 1: gamma undefined"));
  } else {
    const double g = rec.gamma.value;
    const auto rhs = count(disk, polar, consts.c2 / g);
    rec.checks.push_back(compare("first-step outer", lower_bits(n_kd), 3.0 * upper_bits(rhs)));
    const auto lhs = count(disk, polar, consts.C2 * g);
    rec.checks.push_back(compare("first-step inner", lower_bits(lhs), e * upper_bits(n_kd)));
  }

  if (rec.gamma_prime.k_undefined) {
    rec.checks.push_back(skipped("dual first-step", "k < 1: gamma' undefined"));
  } else {
    const auto lhs = count(k, disk, consts.C2_dual * rec.gamma_prime.value);
    const auto rhs = count(disk, polar, 1.0);
    rec.checks.push_back(compare("dual first-step", lower_bits(lhs), e * upper_bits(rhs)));
  }

  const double p = psi(rec.radius, consts);
  const auto wide = count(disk, polar, p);
  rec.checks.push_back(compare("psi upper", lower_bits(wide), 2.0 * upper_bits(n_kd)));
  const auto narrow = count(disk, polar, 1.0 / p);
  rec.checks.push_back(compare("psi lower", lower_bits(n_kd), 3.0 * upper_bits(narrow)));
  return rec;
}

bool IterationRecord::consistent() const {
  return lemma_form.consistent && corollary_form.consistent &&
         std::all_of(factors.begin(), factors.end(),
                     [](const IterationFactor& f) { return f.step.consistent; });
}

IterationRecord check_iteration(const Body& k, SequenceKind kind, const PaperConstants& consts,
                                std::size_t budget, std::uint64_t seed) {
  const Body disk = Body::ball(k.dim(), 1.0);
  const Body polar = Body::polar(k);
  Counter count(budget, seed);

  IterationRecord rec;
  rec.kind = kind;
  rec.sequence = iteration_sequence(kind, consts, 2.0 * k.circumradius());
  const auto& r = rec.sequence.values;
  const std::size_t s = rec.sequence.s;
  const bool primal = kind == SequenceKind::primal;
  const double exponent = primal ? 2.0 : 3.0;

  if (primal) {
    rec.lhs = count(disk, polar, r[0]);
    rec.tail = count(disk, polar, r[s]);
  } else {
    rec.lhs = count(k, disk, r[0]);
    rec.tail = count(k, disk, r[s]);
  }
  rec.tail_is_one = rec.tail.upper == 1;

  double lemma_bits = upper_bits(rec.tail);
  double corollary_bits = upper_bits(rec.tail);
  for (std::size_t j = 0; j < s; ++j) {
    IterationFactor f;
    f.j = j;
    if (primal) {
      const Body piece = capped(k, r[j + 1]);
      f.lemma_factor = count(disk, Body::polar(piece), r[j] / 2.0);
      f.corollary_factor = count(piece, disk, std::sqrt(r[j]));
    } else {
      f.lemma_factor = count(capped(Body::scale(2.0, k), r[j + 1]), disk, r[j]);
      f.corollary_factor = count(disk, Body::polar(capped(k, r[j + 1] / 2.0)), std::sqrt(r[j]));
    }
    f.step = compare("step " + std::to_string(j), lower_bits(f.lemma_factor),
                     exponent * upper_bits(f.corollary_factor));
    lemma_bits += upper_bits(f.lemma_factor);
    corollary_bits += exponent * upper_bits(f.corollary_factor);
    rec.factors.push_back(std::move(f));
  }
  rec.lemma_form = compare("unrolled product", lower_bits(rec.lhs), lemma_bits);
  rec.corollary_form = compare("psi product", lower_bits(rec.lhs), corollary_bits);
  return rec;
}

}  // namespace metent
