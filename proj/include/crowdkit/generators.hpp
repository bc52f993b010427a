#pragma once

#include <cstddef>

#include "crowdkit/graph.hpp"
#include "crowdkit/random.hpp"

namespace crowdkit {

// Uniformly random simple graph in which every node has `degree` neighbors.
// Requires n * degree even and degree < n (ConfigError otherwise).
Graph generate_random_regular(std::size_t n, std::size_t degree, Rng& rng);

// Preferential attachment starting from a complete graph on m nodes; each new
// node attaches to m distinct existing nodes chosen proportionally to degree.
// Requires 1 <= m < n.
Graph generate_barabasi_albert(std::size_t n, std::size_t m, Rng& rng);

// G(n, p): every unordered pair is an edge independently with probability p.
Graph generate_erdos_renyi(std::size_t n, double p, Rng& rng);

}  // namespace crowdkit
