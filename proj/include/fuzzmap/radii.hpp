#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fuzzmap/fastmap.hpp"
#include "fuzzmap/graph.hpp"

namespace fuzzmap {

/// r = -1: no distance yields a definite yes.
inline constexpr double kNoYesRadius = -1.0;
/// R = +inf: no distance yields a definite no.
inline constexpr double kNoNoRadius = std::numeric_limits<double>::infinity();

struct Radii {
  double r = kNoYesRadius;  // eucl(v,u) <= r  =>  u is a neighbor of v
  double R = kNoNoRadius;   // eucl(v,u) >= R  =>  u is not a neighbor of v
  friend bool operator==(const Radii&, const Radii&) = default;
};

/// Per-node radii of a compressed graph.
class NodeRadii {
 public:
  NodeRadii() = default;
  NodeRadii(std::vector<Radii> radii, bool quantized)
      : radii_(std::move(radii)), quantized_(quantized) {}

  std::size_t size() const noexcept { return radii_.size(); }
  bool quantized() const noexcept { return quantized_; }
  const Radii& operator[](NodeId v) const { return radii_[v]; }
  const Radii& at(NodeId v) const { return radii_.at(v); }
  std::span<const Radii> all() const noexcept { return radii_; }

  friend bool operator==(const NodeRadii&, const NodeRadii&) = default;

 private:
  std::vector<Radii> radii_;
  bool quantized_ = true;
};

double euclidean_distance(const Embedding& e, NodeId u, NodeId v);

/// Radii of `self` from its distance row and neighbor mask (mask[u] != 0 iff
/// u is an out-neighbor). The entry for `self` is ignored.
Radii radii_from_row(std::span<const double> distances, std::span<const std::uint8_t> is_neighbor,
                     NodeId self, bool quantize);

/// Largest sound definite-yes radius and smallest sound definite-no radius
/// of node v. With `quantize`, both are integers chosen on the safe side.
Radii compute_radii(const Graph& g, const Embedding& e, NodeId v, bool quantize);

/// compute_radii for every node; runs in parallel, same result as sequential.
NodeRadii compute_all_radii(const Graph& g, const Embedding& e, bool quantize);

}  // namespace fuzzmap
