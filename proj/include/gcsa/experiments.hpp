#pragma once

#include <cstdint>

#include "gcsa/graph.hpp"

namespace gcsa {

/// Path graph 0-1-...-(n-1) with unit weights.
Graph path_graph(int n);

/// Random sensor network: n nodes uniform in [0, box]^2, each connected to
/// its k nearest neighbors (edge set symmetrized), Gaussian weights
/// w_ij = exp(-d^2(i,j) / ave^2) where ave is the mean Euclidean distance
/// over connected pairs. Deterministic given the seed.
Graph sensor_graph(int n, int k, std::uint64_t seed, double box = 20.0);

}  // namespace gcsa
