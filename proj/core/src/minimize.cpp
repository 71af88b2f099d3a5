#include "metent/minimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>

namespace metent {
namespace {

using Objective = std::function<double(std::span<const double>)>;

double trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  const double value = f(std::span<const double>(v->data, v->size));
  return std::isfinite(value) ? value : GSL_POSINF;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

// Scalar minimization by golden-section over a bracket grown from start.
SimplexSearchResult minimize_1d(const Objective& f, double x0, const SimplexSearchOptions& o) {
  auto eval = [&](double x) {
    const double v = f(std::span<const double>(&x, 1));
    return std::isfinite(v) ? v : INFINITY;
  };
  double step = o.initial_step;
  double a = x0 - step, b = x0 + step;
  double fa = eval(a), fx = eval(x0), fb = eval(b);
  int guard = 0;
  while (fa < fx && guard++ < 200) {
    b = x0; fb = fx;
    x0 = a; fx = fa;
    step *= 2.0;
    a = x0 - step; fa = eval(a);
  }
  guard = 0;
  while (fb < fx && guard++ < 200) {
    a = x0; fa = fx;
    x0 = b; fx = fb;
    step *= 2.0;
    b = x0 + step; fb = eval(b);
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 300 && (b - a) > o.size_tol * (1.0 + std::abs(c)); ++it) {
    if (fc <= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a); fc = eval(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a); fd = eval(d);
    }
  }
  SimplexSearchResult r;
  r.x = {fx <= std::min(fc, fd) ? x0 : (fc <= fd ? c : d)};
  r.value = std::min({fx, fc, fd});
  return r;
}

}  // namespace

SimplexSearchResult simplex_minimize(const Objective& f, Vector start,
                                     const SimplexSearchOptions& opts) {
  const std::size_t n = start.size();
  if (n == 1) return minimize_1d(f, start[0], opts);

  gsl_set_error_handler_off();
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &trampoline;
  fn.params = const_cast<Objective*>(&f);

  SimplexSearchResult best;
  best.x = std::move(start);
  best.value = f(best.x);
  double step_size = opts.initial_step;

  for (int round = 0; round <= opts.restarts; ++round) {
    for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, best.x[i]);
    gsl_vector_set_all(step.get(), step_size);
    if (gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) break;

    for (int it = 0; it < opts.max_iter; ++it) {
      if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
      const double size = gsl_multimin_fminimizer_size(m.get());
      if (gsl_multimin_test_size(size, opts.size_tol) == GSL_SUCCESS) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(m.get());
    const double improvement = best.value - value;
    if (value < best.value) {
      best.value = value;
      for (std::size_t i = 0; i < n; ++i) best.x[i] = gsl_vector_get(gsl_multimin_fminimizer_x(m.get()), i);
    }
    if (round > 0 && improvement <= opts.size_tol * (1.0 + std::abs(best.value))) break;
    step_size = std::max(step_size * 0.1, 1e3 * opts.size_tol);
  }
  return best;
}

}  // namespace metent
