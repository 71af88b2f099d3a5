#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "metent/body.hpp"

namespace metent {

using Rng = std::mt19937_64;

/// Deterministic child seed for a numbered substream (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform direction on S^{n-1} as a normalized Gaussian vector.
Vector random_direction(Rng& rng, std::size_t n);

/// Uniform samples in K by rejection from the bounding cube [-R, R]^n.
/// Stops early (returning fewer points) after max_tries proposals.
std::vector<Vector> uniform_in_body(const Body& k, std::size_t count, Rng& rng,
                                    std::size_t max_tries, const OracleTolerance& tol = {});

}  // namespace metent
