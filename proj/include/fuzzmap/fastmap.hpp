#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fuzzmap/graph.hpp"

namespace fuzzmap {

struct PivotPair {
  NodeId a = 0;
  NodeId b = 0;
  double distance = 0.0;     // residual distance between a and b on this axis
  bool degenerate = false;   // distance == 0; the axis is zero-filled
  friend bool operator==(const PivotPair&, const PivotPair&) = default;
};

/// n x k coordinate table. Stored column-major (one contiguous column per
/// axis) so per-axis kernels stream through memory.
class Embedding {
 public:
  Embedding() = default;
  Embedding(std::size_t n, std::size_t k);

  /// Builds from a row-major n x k table (the on-disk layout).
  static Embedding from_row_major(std::size_t n, std::size_t k, std::span<const double> rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dimensions() const noexcept { return k_; }

  double coord(NodeId v, std::size_t axis) const { return coords_[axis * n_ + v]; }
  void set_coord(NodeId v, std::size_t axis, double x) { coords_[axis * n_ + v] = x; }

  std::span<const double> column(std::size_t axis) const {
    return {coords_.data() + axis * n_, n_};
  }
  std::span<double> column(std::size_t axis) { return {coords_.data() + axis * n_, n_}; }
  /// Column-major storage; axis l of node i at data()[l * size() + i].
  const double* data() const noexcept { return coords_.data(); }

  std::vector<double> point(NodeId v) const;
  std::vector<double> to_row_major() const;

  /// Empty for embeddings loaded from disk.
  const std::vector<PivotPair>& pivots() const noexcept { return pivots_; }
  std::uint64_t seed() const noexcept { return seed_; }
  void set_provenance(std::vector<PivotPair> pivots, std::uint64_t seed) {
    pivots_ = std::move(pivots);
    seed_ = seed;
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> coords_;
  std::vector<PivotPair> pivots_;
  std::uint64_t seed_ = 0;
};

/// 0 for u == v, 1 for linked nodes (either direction), n otherwise.
double graph_distance(const Graph& g, NodeId u, NodeId v);

/// Fills out[i] = graph_distance(g, from, i) in O(n + deg(from)).
void graph_distance_row(const Graph& g, NodeId from, std::span<double> out);

/// Coordinate of object i on the axis through pivots a and b.
/// Throws std::domain_error("degenerate axis") when d_ab == 0.
double project(double d_ai, double d_ab, double d_bi);

/// Distance left after removing one axis: sqrt(max(0, d_ij^2 - (x_i - x_j)^2)).
double residual_distance(double d_ij, double x_i, double x_j);

/// Fills `out` with distances from `from` to every node at the current level.
using DistanceRow = std::function<void(NodeId from, std::span<double> out)>;

/// Farthest-point pivot heuristic: starts at a seed-chosen node and hops to
/// the farthest node five times; ties are broken by the seeded generator.
PivotPair choose_pivots(const DistanceRow& dist, std::size_t n, std::uint64_t seed);

/// Pair-function convenience overload (O(n^2) calls; small inputs only).
PivotPair choose_pivots(const std::function<double(NodeId, NodeId)>& dist, std::size_t n,
                        std::uint64_t seed);

struct FastMapTrace {
  /// Smallest residual distance observed in any row computed for each axis.
  std::vector<double> min_residual;
};

/// FastMap over the implicit graph-distance matrix. The matrix is never
/// stored: each row is rebuilt from adjacency and folded through the axes
/// already placed.
Embedding fastmap_embed(const Graph& g, std::size_t k, std::uint64_t seed,
                        FastMapTrace* trace = nullptr);

}  // namespace fuzzmap
