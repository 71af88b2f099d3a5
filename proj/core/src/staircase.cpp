#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "covering_internal.hpp"
#include "metent/covering.hpp"
#include "metent/error.hpp"
#include "metent/parallel.hpp"
#include "metent/sampling.hpp"

namespace metent {

std::vector<double> Staircase::grid() const {
  std::vector<double> g;
  g.reserve(entries.size());
  for (const auto& e : entries) g.push_back(e.t);
  return g;
}

Staircase staircase(const Body& k, const Body& t_body, const std::vector<double>& grid,
                    std::size_t budget, std::uint64_t seed, unsigned workers,
                    const OracleTolerance& tol) {
  if (grid.empty()) throw InputError("staircase: empty grid");
  std::vector<double> ts(grid);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (!(ts.front() > 0.0)) throw InputError("staircase: grid values must be positive");

  Staircase st;
  st.entries.resize(ts.size());
  std::vector<std::vector<Vector>> centers(ts.size());
  parallel_for(ts.size(), workers, [&](std::size_t i) {
    const auto est = covering_bounds(k, t_body, ts[i], budget, derive_seed(seed, i), tol);
    auto& e = st.entries[i];
    e.t = ts[i];
    e.lower = est.lower;
    e.upper = est.upper;
    e.certification = est.certification;
    e.pitch = est.pitch;
    e.eta = est.eta;
    centers[i] = est.centers;
  });

  // N(K, tT) is non-increasing in t.
  const std::size_t m = st.entries.size();
  for (std::size_t i = m - 1; i-- > 0;) {
    auto& e = st.entries[i];
    const auto next = st.entries[i + 1].lower;
    if (e.lower < next) {
      std::ostringstream msg;
      msg << "lower at t=" << e.t << " raised " << e.lower << " -> " << next;
      st.repairs.push_back(msg.str());
      e.lower = next;
    }
  }
  for (std::size_t i = 1; i < m; ++i) {
    auto& e = st.entries[i];
    const auto prev = st.entries[i - 1].upper;
    if (e.upper > prev) {
      std::ostringstream msg;
      msg << "upper at t=" << e.t << " lowered " << e.upper << " -> " << prev;
      st.repairs.push_back(msg.str());
      e.upper = prev;
    }
  }
  for (auto& e : st.entries) {
    if (e.upper < e.lower) {
      std::ostringstream msg;
      msg << "upper at t=" << e.t << " raised to lower " << e.lower;
      st.repairs.push_back(msg.str());
      e.upper = e.lower;
    }
    e.lower_bits = std::log2(static_cast<double>(e.lower));
    e.upper_bits = std::log2(static_cast<double>(e.upper));
  }

  st.radius_hi = k.circumradius() / t_body.inradius();
  double lo = k.inradius() / t_body.circumradius();
  const detail::GaugeOracle gauge(t_body, tol);
  for (const auto& c : centers) {
    for (const auto& x : c) lo = std::max(lo, gauge.lower(x));
  }
  st.radius_lo = std::min(lo, st.radius_hi);
  return st;
}

std::string staircase_csv(const Staircase& st) {
  std::ostringstream out;
  out << "t,lower_bits,upper_bits,certification,pitch\n";
  out << std::setprecision(12);
  for (const auto& e : st.entries) {
    out << e.t << ',' << e.lower_bits << ',' << e.upper_bits << ',' << to_string(e.certification)
        << ',' << e.pitch << '\n';
  }
  return out.str();
}

std::vector<EntropyBracket> entropy_numbers(const Staircase& st, int k_max) {
  if (k_max < 1) throw InputError("entropy_numbers: k_max must be at least 1");
  std::vector<EntropyBracket> out;
  for (int k = 1; k <= k_max; ++k) {
    const double cap = std::ldexp(1.0, k - 1);
    EntropyBracket b;
    b.k = k;
    b.upper = st.radius_hi;
    for (const auto& e : st.entries) {
      if (static_cast<double>(e.upper) <= cap) {
        b.upper = std::min(b.upper, e.t);
        break;
      }
    }
    for (auto it = st.entries.rbegin(); it != st.entries.rend(); ++it) {
      if (static_cast<double>(it->lower) > cap) {
        b.lower = it->t;
        break;
      }
    }
    if (k == 1) {
      b.lower = std::max(b.lower, st.radius_lo);
      b.upper = std::min(b.upper, st.radius_hi);
    }
    b.lower = std::min(b.lower, b.upper);
    out.push_back(b);
  }
  return out;
}

}  // namespace metent
