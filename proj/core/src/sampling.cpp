#include "metent/sampling.hpp"

#include <cmath>

namespace metent {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vector random_direction(Rng& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  double len = 0.0;
  do {
    for (double& x : u) x = gauss(rng);
    len = norm(u);
  } while (len == 0.0);
  for (double& x : u) x /= len;
  return u;
}

std::vector<Vector> uniform_in_body(const Body& k, std::size_t count, Rng& rng,
                                    std::size_t max_tries, const OracleTolerance& tol) {
  const double r = k.circumradius();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(count);
  Vector x(k.dim());
  for (std::size_t tries = 0; out.size() < count && tries < max_tries; ++tries) {
    for (double& c : x) c = r * (2.0 * unit(rng) - 1.0);
    if (contains(k, x, tol)) out.push_back(x);
  }
  return out;
}

}  // namespace metent
