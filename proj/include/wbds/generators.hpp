#pragma once

#include <cstddef>
#include <random>

#include "wbds/digraph.hpp"

namespace wbds {

using Rng = std::mt19937_64;

/// Random Hamiltonian cycle plus each remaining ordered pair with
/// probability p. Unit weights.
WeightedDigraph random_strongly_connected(std::size_t n, double p, Rng& rng);

/// Same edges, integer weights drawn uniformly from [1, max_weight].
WeightedDigraph with_random_weights(const WeightedDigraph& g, long max_weight, Rng& rng);

/// Uniform integer in [lo, hi].
long uniform_int(Rng& rng, long lo, long hi);

}  // namespace wbds
