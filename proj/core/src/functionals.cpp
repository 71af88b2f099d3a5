#include "metent/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "metent/covering.hpp"
#include "metent/error.hpp"
#include "metent/parallel.hpp"
#include "metent/sampling.hpp"

namespace metent {

void PaperConstants::validate() const {
  const double all[] = {C0, C2, c2, C2_dual, eps, R0};
  for (double v : all) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("constants must be positive and finite");
  }
  if (R0 < 16.0) throw InputError("constants: R0 must be at least 16");
}

std::string_view to_string(WidthPath p) {
  switch (p) {
    case WidthPath::exact: return "exact";
    case WidthPath::refined: return "refined";
    case WidthPath::upper_fallback: return "upper_fallback";
  }
  return "unknown";
}

std::string_view to_string(GammaKind g) {
  return g == GammaKind::gamma ? "gamma" : "gamma_prime";
}

namespace {

struct WidthPartial {
  double sum = 0.0;
  double sum_sq = 0.0;
  double gap = 0.0;
  bool refined = false;
  bool fallback = false;
};

// `eval(u, acc)` returns the support value used for direction u.
template <class Eval>
MeanWidth sphere_average(std::size_t dim, std::size_t samples, std::uint64_t seed,
                         const MeanWidthOptions& opts, const Eval& eval) {
  if (samples < 100) throw InputError("mean_width: at least 100 samples required");
  const std::size_t parts = std::max<std::size_t>(1, std::min(opts.partitions, samples));
  std::vector<WidthPartial> partial(parts);
  parallel_for(parts, opts.workers, [&](std::size_t p) {
    const std::size_t count = samples / parts + (p < samples % parts ? 1 : 0);
    Rng rng(derive_seed(seed, p));
    WidthPartial acc;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = eval(random_direction(rng, dim), acc);
      acc.sum += v;
      acc.sum_sq += v * v;
    }
    partial[p] = acc;
  });

  MeanWidth out;
  out.samples = samples;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    out.max_gap = std::max(out.max_gap, p.gap);
    if (p.fallback) out.path = WidthPath::upper_fallback;
    else if (p.refined && out.path == WidthPath::exact) out.path = WidthPath::refined;
  }
  const double n = static_cast<double>(samples);
  out.estimate = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.estimate * out.estimate) / (n - 1.0));
  out.stderr_ = std::sqrt(var / n);
  return out;
}

}  // namespace

MeanWidth mean_width(const Body& a, std::size_t samples, std::uint64_t seed,
                     const MeanWidthOptions& opts) {
  return sphere_average(a.dim(), samples, seed, opts, [&](const Vector& u, WidthPartial& acc) {
    Interval h = support_quick(a, u);
    if (h.is_point()) return h.hi;
    if (!opts.refine) {
      acc.fallback = true;
      acc.gap = std::max(acc.gap, h.width());
      return h.hi;
    }
    h = support_bounds(a, u, opts.tol);
    acc.refined = true;
    acc.gap = std::max(acc.gap, h.width());
    return h.mid();
  });
}

MeanWidth mean_width(const std::vector<Vector>& points, std::size_t samples, std::uint64_t seed,
                     const MeanWidthOptions& opts) {
  if (points.empty()) throw InputError("mean_width: empty point set");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    require_valid(p, "mean_width point");
    if (p.size() != dim) throw InputError("mean_width: points have different dimensions");
  }
  return sphere_average(dim, samples, seed, opts, [&](const Vector& u, WidthPartial&) {
    double h = 0.0;
    for (const auto& p : points) h = std::max(h, std::abs(dot(u, p)));
    return h;
  });
}

namespace {

GammaValue assemble(GammaKind which, const Body& k, const CoverEstimate& cover, std::size_t samples,
                    std::uint64_t seed) {
  const auto n = static_cast<double>(k.dim());
  const auto width = mean_width(Body::intersect({k, Body::ball(k.dim(), 1.0)}), samples,
                                derive_seed(seed, 2));
  GammaValue g;
  g.which = which;
  g.mstar = width.estimate;
  g.mstar_stderr = width.stderr_;
  g.k_bits = std::log2(static_cast<double>(cover.lower));
  g.k_undefined = g.k_bits < 1.0;
  const double scale = g.k_undefined ? std::sqrt(n) : std::sqrt(n / g.k_bits);
  g.value = std::max(1.0, g.mstar * scale);
  return g;
}

}  // namespace

GammaValue gamma(const Body& k, const PaperConstants& consts, std::size_t budget,
                 std::uint64_t seed, std::size_t samples) {
  consts.validate();
  const auto cover = covering_bounds(k, Body::ball(k.dim(), 1.0), 1.0, budget, derive_seed(seed, 1));
  return assemble(GammaKind::gamma, k, cover, samples, seed);
}

GammaValue gamma_prime(const Body& k, const PaperConstants& consts, std::size_t budget,
                       std::uint64_t seed, std::size_t samples) {
  consts.validate();
  const auto cover =
      covering_bounds(Body::ball(k.dim(), 1.0), Body::polar(k), 1.0, budget, derive_seed(seed, 1));
  return assemble(GammaKind::gamma_prime, k, cover, samples, seed);
}

double psi(double x, const PaperConstants& consts) {
  if (!(x >= 1.0)) throw InputError("psi: argument must be at least 1");
  const double l = std::log2(x);
  return 2.0 * consts.C2 * (consts.C0 * l * l * l + 1.0) + 2.0;
}

double psi_inverse(double y, const PaperConstants& consts) {
  const double floor_value = 2.0 * consts.C2 + 2.0;
  if (!(y >= floor_value)) throw InputError("psi_inverse: value below psi(1)");
  const double cube = ((y - 2.0) / (2.0 * consts.C2) - 1.0) / consts.C0;
  return std::exp2(std::cbrt(cube));
}

}  // namespace metent
