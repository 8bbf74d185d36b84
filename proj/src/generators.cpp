#include "fuzzmap/generators.hpp"

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fuzzmap {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool directed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (unit(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph::from_internal_edges(n, edges, directed);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0 || n <= m) throw std::invalid_argument("barabasi_albert needs 0 < m < n");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  // Endpoint multiset: sampling from it is sampling proportional to degree.
  std::vector<NodeId> endpoints;

  // Seed core: a clique on m + 1 nodes.
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  std::vector<NodeId> targets;
  for (NodeId u = static_cast<NodeId>(m + 1); u < n; ++u) {
    targets.clear();
    while (targets.size() < m) {
      NodeId t = endpoints[rng() % endpoints.size()];
      bool seen = false;
      for (NodeId x : targets) seen = seen || x == t;
      if (!seen) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(u, t);
      endpoints.push_back(u);
      endpoints.push_back(t);
    }
  }
  return Graph::from_internal_edges(n, edges, false);
}

}  // namespace fuzzmap
