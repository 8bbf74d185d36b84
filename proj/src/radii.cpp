#include "fuzzmap/radii.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzzmap/error.hpp"
#include "fuzzmap/parallel.hpp"
#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void fill_mask(const Graph& g, NodeId v, std::vector<std::uint8_t>& mask) {
  std::fill(mask.begin(), mask.end(), std::uint8_t{0});
  for (NodeId u : g.neighbors(v)) mask[u] = 1;
}

void distance_row(const Embedding& e, NodeId v, std::vector<double>& point,
                  std::vector<double>& out) {
  for (std::size_t l = 0; l < e.dimensions(); ++l) point[l] = e.coord(v, l);
  simd::active_kernels().distance_row(e.data(), e.size(), e.dimensions(), point.data(), e.size(),
                                      out.data());
}

}  // namespace

double euclidean_distance(const Embedding& e, NodeId u, NodeId v) {
  if (u >= e.size() || v >= e.size()) throw QueryError("node id out of range");
  return simd::pair_distance(e.data(), e.size(), e.dimensions(), u, v);
}

Radii radii_from_row(std::span<const double> distances, std::span<const std::uint8_t> is_neighbor,
                     NodeId self, bool quantize) {
  const std::size_t n = distances.size();
  if (n < 2) throw std::invalid_argument("radii need at least two nodes");

  double nearest_stranger = kInf;   // min distance over non-neighbors
  double farthest_friend = -kInf;   // max distance over neighbors
  for (std::size_t u = 0; u < n; ++u) {
    if (u == self) continue;
    if (is_neighbor[u]) {
      farthest_friend = std::max(farthest_friend, distances[u]);
    } else {
      nearest_stranger = std::min(nearest_stranger, distances[u]);
    }
  }

  // Ties go against coverage: a neighbor level with the nearest stranger is
  // excluded from r, a stranger level with the farthest friend from R.
  double r = kNoYesRadius;
  double R = kInf;
  for (std::size_t u = 0; u < n; ++u) {
    if (u == self) continue;
    const double d = distances[u];
    if (is_neighbor[u]) {
      if (d < nearest_stranger && d > r) r = d;
    } else {
      if (d > farthest_friend && d < R) R = d;
    }
  }

  if (!quantize) return {r, R};

  Radii q;
  if (std::isinf(nearest_stranger)) {
    // Every other node is a neighbor: any radius covering them all is sound.
    q.r = std::ceil(farthest_friend);
  } else if (r == kNoYesRadius) {
    // No neighbor below the nearest stranger: the yes-ball stays empty.
    q.r = kNoYesRadius;
  } else {
    // Largest integer strictly below the nearest stranger.
    q.r = std::ceil(nearest_stranger) - 1.0;
    if (q.r < 0.0) q.r = kNoYesRadius;
  }
  q.R = std::isinf(farthest_friend) ? R : std::floor(farthest_friend) + 1.0;
  return q;
}

Radii compute_radii(const Graph& g, const Embedding& e, NodeId v, bool quantize) {
  if (g.size() != e.size()) throw std::invalid_argument("embedding does not match graph");
  if (v >= g.size()) throw QueryError("node id out of range");
  std::vector<double> point(e.dimensions());
  std::vector<double> row(e.size());
  std::vector<std::uint8_t> mask(g.size());
  distance_row(e, v, point, row);
  fill_mask(g, v, mask);
  return radii_from_row(row, mask, v, quantize);
}

NodeRadii compute_all_radii(const Graph& g, const Embedding& e, bool quantize) {
  if (g.size() != e.size()) throw std::invalid_argument("embedding does not match graph");
  if (g.size() < 2) throw std::invalid_argument("radii need at least two nodes");
  std::vector<Radii> radii(g.size());
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> point(e.dimensions());
    std::vector<double> row(e.size());
    std::vector<std::uint8_t> mask(g.size());
    for (std::size_t v = begin; v < end; ++v) {
      const auto node = static_cast<NodeId>(v);
      distance_row(e, node, point, row);
      fill_mask(g, node, mask);
      radii[v] = radii_from_row(row, mask, node, quantize);
    }
  });
  return NodeRadii(std::move(radii), quantize);
}

}  // namespace fuzzmap
