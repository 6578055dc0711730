#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "maxent/core.hpp"

namespace maxent {

using Rng = std::mt19937_64;

/// Uniform draw from the simplex (flat Dirichlet). With probability
/// zero_prob each coordinate is zeroed before normalizing, so boundary
/// distributions show up too; at least one coordinate always survives.
Distribution random_distribution(Rng& rng, std::size_t n, double zero_prob = 0.0);

/// Random probability vector returned as plain weights.
std::vector<double> random_simplex_point(Rng& rng, std::size_t n);

}  // namespace maxent
