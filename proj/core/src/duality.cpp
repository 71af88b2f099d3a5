#include "metent/duality.hpp"

#include <algorithm>
#include <cmath>

#include "metent/body_json.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

namespace metent {

namespace {

const StaircaseEntry* find_entry(const Staircase& st, double t) {
  for (const auto& e : st.entries) {
    if (std::abs(e.t - t) <= 1e-12 * std::max(1.0, t)) return &e;
  }
  return nullptr;
}

}  // namespace

DualityReport duality_report(const Body& k, const std::vector<double>& grid,
                             const std::vector<double>& alpha_grid, const PaperConstants& consts,
                             std::size_t budget, std::uint64_t seed, unsigned workers) {
  consts.validate();
  if (grid.empty() || alpha_grid.empty()) throw InputError("duality_report: empty grid");
  for (double a : alpha_grid) {
    if (!(a > 0.0)) throw InputError("duality_report: alpha must be positive");
  }
  const std::size_t n = k.dim();
  const Body disk = Body::ball(n, 1.0);
  const Body polar = Body::polar(k);

  DualityReport rep;
  rep.body_json = body_to_json(k);
  rep.alpha_grid = alpha_grid;
  rep.constants = consts;
  rep.seed = seed;
  rep.budget = budget;
  rep.primal = staircase(k, disk, grid, budget, derive_seed(seed, 0), workers);
  rep.grid = rep.primal.grid();

  std::vector<double> dual_grid;
  for (double t : rep.grid) {
    for (double a : alpha_grid) {
      dual_grid.push_back(a * t);
      dual_grid.push_back(t / a);
    }
  }
  rep.dual = staircase(disk, polar, dual_grid, budget, derive_seed(seed, 1), workers);

  for (double a : alpha_grid) {
    BetaSummary beta{a, 0.0};
    for (const auto& p : rep.primal.entries) {
      const auto* at = find_entry(rep.dual, a * p.t);
      const auto* over = find_entry(rep.dual, p.t / a);
      if (at == nullptr || over == nullptr) throw CertificationError("duality_report: dual grid lookup failed");
      RatioEntry r;
      r.t = p.t;
      r.alpha = a;
      r.right = p.upper_bits / std::max(1.0, at->lower_bits);
      r.left = over->upper_bits / std::max(1.0, p.lower_bits);
      beta.beta = std::max({beta.beta, r.right, r.left});
      rep.ratios.push_back(r);
    }
    rep.beta.push_back(beta);
  }

  for (const auto& p : rep.primal.entries) {
    const auto* d = find_entry(rep.dual, p.t);
    if (d == nullptr) {
      rep.overlap.emplace_back(std::nullopt);
    } else {
      rep.overlap.emplace_back(std::max(p.lower_bits, d->lower_bits) <=
                               std::min(p.upper_bits, d->upper_bits) + 1e-12);
    }
  }
  return rep;
}

BetaBatch summarize_beta(const std::vector<DualityReport>& reports, double alpha, double level) {
  if (!(level > 0.0 && level <= 1.0)) throw InputError("summarize_beta: level must be in (0,1]");
  BetaBatch out;
  out.alpha = alpha;
  out.level = level;
  for (const auto& r : reports) {
    for (const auto& b : r.beta) {
      if (b.alpha == alpha) out.values.push_back(b.beta);
    }
  }
  if (out.values.empty()) throw InputError("summarize_beta: alpha not present in reports");
  std::vector<double> sorted = out.values;
  std::sort(sorted.begin(), sorted.end());
  out.max = sorted.back();
  // nearest-rank quantile
  const auto rank = static_cast<std::size_t>(std::ceil(level * static_cast<double>(sorted.size())));
  out.quantile = sorted[std::max<std::size_t>(rank, 1) - 1];
  return out;
}

}  // namespace metent
