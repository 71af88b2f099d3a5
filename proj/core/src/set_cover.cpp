#include "metent/set_cover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "covering_internal.hpp"
#include "metent/error.hpp"
#include "metent/sampling.hpp"

namespace metent {

std::vector<Vector> symmetric_lattice(const Body& k, double pitch, const OracleTolerance& tol) {
  if (!(pitch > 0.0)) throw InputError("symmetric_lattice: pitch must be positive");
  const std::size_t n = k.dim();
  const auto m = static_cast<std::int64_t>(std::floor(k.circumradius() / pitch));
  std::vector<std::int64_t> idx(n, -m);
  std::vector<Vector> out;
  Vector x(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(idx[i]) * pitch;
    if (gauge_bounds(k, x, tol).hi <= 1.0 + 1e-12) out.push_back(x);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m) idx[--i] = -m;
    if (i == 0) break;
    ++idx[i - 1];
  }
  return out;
}

std::vector<Vector> cover_sample(const Body& k, const std::vector<Vector>& candidates,
                                 std::size_t boundary_points, double interior_spacing,
                                 const OracleTolerance& tol) {
  const std::size_t n = k.dim();
  std::vector<Vector> dirs;
  if (n == 1) {
    dirs = {Vector{1.0}, Vector{-1.0}};
  } else if (n == 2) {
    for (std::size_t i = 0; i < boundary_points; ++i) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(i) /
                       static_cast<double>(boundary_points);
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    Rng rng(derive_seed(0x5a3b1e, n));
    for (std::size_t i = 0; i < boundary_points; ++i) dirs.push_back(random_direction(rng, n));
  }
  std::vector<Vector> out;
  for (const auto& d : dirs) out.push_back((1.0 / gauge_bounds(k, d, tol).hi) * d);

  if (interior_spacing > 0.0) {
    detail::CellGrid grid(n, interior_spacing);
    std::vector<Vector> kept;
    for (const auto& c : candidates) {
      bool far = true;
      grid.for_neighbors(c, [&](std::size_t id) {
        if (norm(c - kept[id]) < interior_spacing) far = false;
        return far;
      });
      if (far) {
        grid.insert(c, kept.size());
        kept.push_back(c);
      }
    }
    out.insert(out.end(), kept.begin(), kept.end());
  }
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

Bits to_bits(const std::vector<int>& items, std::size_t universe) {
  Bits b((universe + 63) / 64, 0);
  for (int i : items) b[static_cast<std::size_t>(i) / 64] |= 1ULL << (static_cast<std::size_t>(i) % 64);
  return b;
}

// Drop sets contained in another set and elements whose covering sets
// include all covering sets of another element; both leave the optimum
// unchanged. Indices into the reduced problem are renumbered.
struct Instance {
  std::vector<std::vector<int>> set_elems;  // set -> elements
  std::vector<std::vector<int>> elem_sets;  // element -> sets
  std::vector<std::size_t> set_origin;      // reduced set -> candidate index
};

void rebuild_elem_sets(Instance& in, std::size_t elems) {
  in.elem_sets.assign(elems, {});
  for (std::size_t s = 0; s < in.set_elems.size(); ++s) {
    for (int e : in.set_elems[s]) in.elem_sets[static_cast<std::size_t>(e)].push_back(static_cast<int>(s));
  }
}

bool reduce_sets(Instance& in, std::size_t elems) {
  const std::size_t m = in.set_elems.size();
  std::vector<Bits> bits(m);
  for (std::size_t s = 0; s < m; ++s) bits[s] = to_bits(in.set_elems[s], elems);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return in.set_elems[a].size() > in.set_elems[b].size();
  });
  std::vector<char> drop(m, 0);
  std::vector<std::size_t> kept;
  for (auto s : order) {
    if (in.set_elems[s].empty()) {
      drop[s] = 1;
      continue;
    }
    for (auto r : kept) {
      if (subset_of(bits[s], bits[r])) {
        drop[s] = 1;
        break;
      }
    }
    if (!drop[s]) kept.push_back(s);
  }
  if (kept.size() == m) return false;
  std::sort(kept.begin(), kept.end());
  Instance out;
  for (auto s : kept) {
    out.set_elems.push_back(std::move(in.set_elems[s]));
    out.set_origin.push_back(in.set_origin[s]);
  }
  in = std::move(out);
  rebuild_elem_sets(in, elems);
  return true;
}

bool reduce_elements(Instance& in, std::size_t& elems) {
  const std::size_t m = in.set_elems.size();
  std::vector<Bits> bits(elems);
  for (std::size_t e = 0; e < elems; ++e) bits[e] = to_bits(in.elem_sets[e], m);
  std::vector<std::size_t> order(elems);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return in.elem_sets[a].size() < in.elem_sets[b].size();
  });
  std::vector<std::size_t> kept;
  for (auto e : order) {
    bool redundant = false;
    for (auto r : kept) {
      if (subset_of(bits[r], bits[e])) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(e);
  }
  if (kept.size() == elems) return false;
  std::sort(kept.begin(), kept.end());
  std::vector<int> renum(elems, -1);
  for (std::size_t i = 0; i < kept.size(); ++i) renum[kept[i]] = static_cast<int>(i);
  for (auto& se : in.set_elems) {
    std::vector<int> next;
    for (int e : se) {
      if (renum[static_cast<std::size_t>(e)] >= 0) next.push_back(renum[static_cast<std::size_t>(e)]);
    }
    se = std::move(next);
  }
  elems = kept.size();
  rebuild_elem_sets(in, elems);
  return true;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& in, std::size_t elems, std::size_t max_nodes,
                 std::size_t root_iters, std::size_t node_iters)
      : in_(in),
        elems_(elems),
        max_nodes_(max_nodes),
        root_iters_(root_iters),
        node_iters_(node_iters),
        count_(elems, 0),
        excluded_(in.set_elems.size(), 0) {}

  void solve() {
    best_ = greedy();
    std::vector<double> lam(elems_);
    for (std::size_t e = 0; e < elems_; ++e) lam[e] = 1.0 / static_cast<double>(in_.elem_sets[e].size());
    root_bound_ = std::max(1.0, lagrangian(lam, root_iters_));
    uncovered_ = elems_;
    if (std::ceil(root_bound_ - 1e-9) >= static_cast<double>(best_.size())) return;
    search(lam);
  }

  std::size_t lower() const {
    if (!exhausted_) return best_.size();
    return std::min(best_.size(), static_cast<std::size_t>(std::ceil(root_bound_ - 1e-9)));
  }
  const std::vector<int>& best() const { return best_; }
  bool exhausted() const { return exhausted_; }

 private:
  std::vector<int> greedy() const {
    std::vector<char> cov(elems_, 0);
    std::size_t left = elems_;
    std::vector<int> pick;
    while (left > 0) {
      int arg = -1;
      std::size_t gain = 0;
      for (std::size_t s = 0; s < in_.set_elems.size(); ++s) {
        std::size_t g = 0;
        for (int e : in_.set_elems[s]) g += cov[static_cast<std::size_t>(e)] ? 0 : 1;
        if (g > gain) {
          gain = g;
          arg = static_cast<int>(s);
        }
      }
      pick.push_back(arg);
      for (int e : in_.set_elems[static_cast<std::size_t>(arg)]) {
        if (!cov[static_cast<std::size_t>(e)]) {
          cov[static_cast<std::size_t>(e)] = 1;
          --left;
        }
      }
    }
    return pick;
  }

  // Subgradient ascent on the Lagrangian dual of the residual cover problem;
  // returns the best bound for the number of additional sets.
  double lagrangian(std::vector<double>& lam, std::size_t iters) const {
    const double target = static_cast<double>(best_.size() - chosen_.size());
    double best = 0.0;
    double mu = 2.0;
    std::size_t stall = 0;
    std::vector<double> rc(in_.set_elems.size());
    std::vector<int> grad(elems_);
    for (std::size_t it = 0; it < iters; ++it) {
      double l = 0.0;
      for (std::size_t e = 0; e < elems_; ++e) {
        if (count_[e] == 0) l += lam[e];
      }
      std::fill(grad.begin(), grad.end(), 1);
      for (std::size_t s = 0; s < in_.set_elems.size(); ++s) {
        if (excluded_[s]) continue;
        double r = 1.0;
        for (int e : in_.set_elems[s]) {
          if (count_[static_cast<std::size_t>(e)] == 0) r -= lam[static_cast<std::size_t>(e)];
        }
        rc[s] = r;
        if (r < 0.0) {
          l += r;
          for (int e : in_.set_elems[s]) --grad[static_cast<std::size_t>(e)];
        }
      }
      if (l > best + 1e-12) {
        best = l;
        stall = 0;
      } else if (++stall >= 25) {
        mu *= 0.5;
        stall = 0;
      }
      if (std::ceil(best - 1e-9) >= target || mu < 1e-5) break;
      double g2 = 0.0;
      for (std::size_t e = 0; e < elems_; ++e) {
        if (count_[e] == 0) g2 += static_cast<double>(grad[e]) * grad[e];
      }
      if (g2 == 0.0) break;
      const double step = mu * (target + 0.5 - l) / g2;
      for (std::size_t e = 0; e < elems_; ++e) {
        if (count_[e] == 0) lam[e] = std::max(0.0, lam[e] + step * grad[e]);
      }
    }
    return best;
  }

  void choose(int s) {
    chosen_.push_back(s);
    for (int e : in_.set_elems[static_cast<std::size_t>(s)]) {
      if (count_[static_cast<std::size_t>(e)]++ == 0) --uncovered_;
    }
  }

  void unchoose() {
    const int s = chosen_.back();
    chosen_.pop_back();
    for (int e : in_.set_elems[static_cast<std::size_t>(s)]) {
      if (--count_[static_cast<std::size_t>(e)] == 0) ++uncovered_;
    }
  }

  void search(const std::vector<double>& parent_lam) {
    if (++nodes_ > max_nodes_) {
      exhausted_ = true;
      return;
    }
    if (uncovered_ == 0) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    if (chosen_.size() + 1 >= best_.size()) return;

    std::vector<double> lam(parent_lam);
    if (!chosen_.empty()) {
      const double bound = lagrangian(lam, node_iters_);
      if (static_cast<double>(chosen_.size()) + std::ceil(bound - 1e-9) >=
          static_cast<double>(best_.size())) {
        return;
      }
    }

    std::size_t pivot = elems_;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = 0; e < elems_; ++e) {
      if (count_[e] != 0) continue;
      std::size_t a = 0;
      for (int s : in_.elem_sets[e]) a += excluded_[static_cast<std::size_t>(s)] ? 0 : 1;
      if (a < fewest) {
        fewest = a;
        pivot = e;
      }
    }
    if (fewest == 0) return;

    std::vector<std::pair<std::size_t, int>> children;
    for (int s : in_.elem_sets[pivot]) {
      if (excluded_[static_cast<std::size_t>(s)]) continue;
      std::size_t g = 0;
      for (int e : in_.set_elems[static_cast<std::size_t>(s)]) g += count_[static_cast<std::size_t>(e)] == 0 ? 1 : 0;
      children.emplace_back(g, s);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<int> banned;
    for (const auto& [g, s] : children) {
      choose(s);
      search(lam);
      unchoose();
      if (exhausted_) break;
      excluded_[static_cast<std::size_t>(s)] = 1;
      banned.push_back(s);
    }
    for (int s : banned) excluded_[static_cast<std::size_t>(s)] = 0;
  }

  const Instance& in_;
  std::size_t elems_;
  std::size_t max_nodes_;
  std::size_t root_iters_;
  std::size_t node_iters_;
  std::vector<int> count_;
  std::vector<char> excluded_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  std::size_t uncovered_ = 0;
  std::size_t nodes_ = 0;
  double root_bound_ = 1.0;
  bool exhausted_ = false;
};

}  // namespace

CoverEstimate exact_cover_small(const Body& k, const Body& t_body, double t,
                                const std::vector<Vector>& candidates, std::size_t max_nodes,
                                const ExactCoverOptions& opts) {
  if (!(t > 0.0)) throw InputError("exact_cover_small: t must be positive");
  if (k.dim() != t_body.dim()) throw InputError("exact_cover_small: dimension mismatch");
  if (candidates.empty()) throw InputError("exact_cover_small: no candidates");
  const std::size_t n = k.dim();
  for (const auto& c : candidates) {
    if (c.size() != n) throw InputError("exact_cover_small: candidate has wrong dimension");
    if (!contains(k, c, opts.tol)) throw InputError("exact_cover_small: candidate outside K");
  }

  const double spacing =
      opts.interior_spacing > 0.0 ? opts.interior_spacing : t * t_body.inradius() / 5.0;
  const auto sample = opts.sample.empty()
                          ? cover_sample(k, candidates, opts.boundary_points, spacing, opts.tol)
                          : opts.sample;

  const detail::GaugeOracle gauge(t_body, opts.tol);
  const double thr = t * (1.0 + 1e-9) + kSeparationGuard;
  detail::CellGrid grid(n, thr * gauge.outer);
  for (std::size_t c = 0; c < candidates.size(); ++c) grid.insert(candidates[c], c);

  Instance in;
  in.set_elems.assign(candidates.size(), {});
  in.set_origin.resize(candidates.size());
  std::iota(in.set_origin.begin(), in.set_origin.end(), 0);
  for (std::size_t e = 0; e < sample.size(); ++e) {
    bool any = false;
    grid.for_neighbors(sample[e], [&](std::size_t c) {
      if (gauge.within(sample[e] - candidates[c], thr)) {
        in.set_elems[c].push_back(static_cast<int>(e));
        any = true;
      }
      return true;
    });
    if (!any) {
      throw InputError("exact_cover_small: sample point " + to_string(sample[e]) +
                       " is not covered by any candidate");
    }
  }
  for (auto& se : in.set_elems) std::sort(se.begin(), se.end());
  std::size_t elems = sample.size();
  rebuild_elem_sets(in, elems);
  for (int round = 0; round < 8; ++round) {
    const bool a = reduce_sets(in, elems);
    const bool b = reduce_elements(in, elems);
    if (!a && !b) break;
  }

  BranchAndBound bb(in, elems, max_nodes, opts.root_iterations, opts.node_iterations);
  bb.solve();

  CoverEstimate est;
  est.t = t;
  est.candidates = candidates.size();
  est.upper = bb.best().size();
  est.lower = bb.lower();
  est.budget_exhausted = bb.exhausted();
  est.certification = Certification::discrete_exact;
  for (int s : bb.best()) est.centers.push_back(candidates[in.set_origin[static_cast<std::size_t>(s)]]);
  return est;
}

}  // namespace metent
