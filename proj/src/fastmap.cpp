#include "fuzzmap/fastmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fuzzmap/error.hpp"
#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap {

namespace {

constexpr int kPivotHops = 5;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Index of the largest entry other than `self`; ties resolved by reservoir
// sampling so every tied node is equally likely.
NodeId farthest(std::span<const double> row, NodeId self, std::mt19937_64& rng) {
  double best = -1.0;
  NodeId pick = self;
  std::uint64_t ties = 0;
  for (NodeId i = 0; i < row.size(); ++i) {
    if (i == self) continue;
    if (row[i] > best) {
      best = row[i];
      pick = i;
      ties = 1;
    } else if (row[i] == best) {
      ++ties;
      if (rng() % ties == 0) pick = i;
    }
  }
  return pick;
}

}  // namespace

Embedding::Embedding(std::size_t n, std::size_t k) : n_(n), k_(k), coords_(n * k, 0.0) {}

Embedding Embedding::from_row_major(std::size_t n, std::size_t k, std::span<const double> rows) {
  if (rows.size() != n * k) throw std::invalid_argument("row-major table has wrong size");
  Embedding e(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) e.coords_[l * n + i] = rows[i * k + l];
  }
  return e;
}

std::vector<double> Embedding::point(NodeId v) const {
  if (v >= n_) throw QueryError("node id out of range");
  std::vector<double> p(k_);
  for (std::size_t l = 0; l < k_; ++l) p[l] = coords_[l * n_ + v];
  return p;
}

std::vector<double> Embedding::to_row_major() const {
  std::vector<double> rows(n_ * k_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t l = 0; l < k_; ++l) rows[i * k_ + l] = coords_[l * n_ + i];
  }
  return rows;
}

double graph_distance(const Graph& g, NodeId u, NodeId v) {
  if (u >= g.size() || v >= g.size()) throw QueryError("node id out of range");
  if (u == v) return 0.0;
  return g.linked(u, v) ? 1.0 : static_cast<double>(g.size());
}

void graph_distance_row(const Graph& g, NodeId from, std::span<double> out) {
  if (from >= g.size()) throw QueryError("node id out of range");
  std::fill(out.begin(), out.end(), static_cast<double>(g.size()));
  for (NodeId v : g.neighbors(from)) out[v] = 1.0;
  if (g.directed()) {
    for (NodeId v : g.in_neighbors(from)) out[v] = 1.0;
  }
  out[from] = 0.0;
}

double project(double d_ai, double d_ab, double d_bi) {
  if (d_ab == 0.0) throw std::domain_error("degenerate axis");
  return (d_ai * d_ai + d_ab * d_ab - d_bi * d_bi) / (2.0 * d_ab);
}

double residual_distance(double d_ij, double x_i, double x_j) {
  const double diff = x_i - x_j;
  const double t = d_ij * d_ij - diff * diff;
  return std::sqrt(t > 0.0 ? t : 0.0);
}

PivotPair choose_pivots(const DistanceRow& dist, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("pivot search needs at least two nodes");
  std::mt19937_64 rng(seed);
  std::vector<double> row(n);

  NodeId previous = static_cast<NodeId>(rng() % n);
  NodeId current = previous;
  for (int hop = 0; hop < kPivotHops; ++hop) {
    dist(current, row);
    previous = current;
    current = farthest(row, previous, rng);
  }
  // `row` holds distances from `previous`, the last hop's origin.
  PivotPair pair{previous, current, row[current], false};
  pair.degenerate = pair.distance == 0.0;
  return pair;
}

PivotPair choose_pivots(const std::function<double(NodeId, NodeId)>& dist, std::size_t n,
                        std::uint64_t seed) {
  return choose_pivots(
      DistanceRow([&](NodeId from, std::span<double> out) {
        for (NodeId i = 0; i < out.size(); ++i) out[i] = dist(from, i);
      }),
      n, seed);
}

Embedding fastmap_embed(const Graph& g, std::size_t k, std::uint64_t seed, FastMapTrace* trace) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("embedding needs at least two nodes");

  const simd::Kernels& kernels = simd::active_kernels();
  Embedding e(n, k);
  std::vector<PivotPair> pivots;
  pivots.reserve(k);
  if (trace) trace->min_residual.assign(k, std::numeric_limits<double>::infinity());

  std::vector<double> base(n);
  std::vector<double> pivot_coords(k);
  for (std::size_t axis = 0; axis < k; ++axis) {
    // Residual distances at this level: rows of the graph metric folded
    // through the `axis` coordinates already assigned.
    DistanceRow level_row = [&](NodeId from, std::span<double> out) {
      graph_distance_row(g, from, base);
      for (std::size_t l = 0; l < axis; ++l) pivot_coords[l] = e.coord(from, l);
      kernels.residual_row(base.data(), e.data(), n, pivot_coords.data(), axis, n, out.data());
      if (trace) {
        double& low = trace->min_residual[axis];
        for (double d : out) low = std::min(low, d);
      }
    };

    const PivotPair pair = choose_pivots(level_row, n, splitmix64(seed + axis));
    pivots.push_back(pair);
    if (pair.degenerate) continue;

    std::vector<double> da(n);
    std::vector<double> db(n);
    level_row(pair.a, da);
    level_row(pair.b, db);
    std::span<double> column = e.column(axis);
    kernels.project_row(da.data(), db.data(), pair.distance, n, column.data());
    column[pair.a] = 0.0;
    column[pair.b] = pair.distance;
  }
  e.set_provenance(std::move(pivots), seed);
  return e;
}

}  // namespace fuzzmap
