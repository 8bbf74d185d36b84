#pragma once

#include <cstddef>
#include <cstdint>

#include "fuzzmap/graph.hpp"

namespace fuzzmap {

/// G(n, p): each unordered pair (ordered when directed) is an edge with
/// probability p. Nodes are 0..n-1 even when isolated.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool directed = false);

/// Preferential attachment: each new node links to `m` distinct existing
/// nodes chosen proportionally to degree. Average degree is close to 2m.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace fuzzmap
