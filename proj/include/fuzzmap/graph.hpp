#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzmap {

using NodeId = std::uint32_t;
using ExternalId = std::uint64_t;

struct EdgeListStats {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops_skipped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Simple graph over dense ids 0..n-1. Immutable once built.
///
/// Neighbor lists are sorted. For directed graphs `neighbors(v)` holds
/// out-neighbors and `in_neighbors(v)` the reverse arcs; for undirected
/// graphs both return the same list.
class Graph {
 public:
  Graph() = default;

  /// Builds from external-id edges. Self-loops and duplicates are dropped;
  /// dense ids follow ascending external id order.
  static Graph from_edges(std::span<const std::pair<ExternalId, ExternalId>> edges, bool directed,
                          EdgeListStats* stats = nullptr);

  /// Builds over internal ids 0..n-1 directly; external id i maps to i.
  static Graph from_internal_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                                   bool directed);

  std::size_t size() const noexcept { return out_.size(); }
  bool directed() const noexcept { return directed_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const { return out_.at(v); }
  std::span<const NodeId> in_neighbors(NodeId v) const { return directed_ ? in_.at(v) : out_.at(v); }

  /// Edge u-v (arc u->v when directed). Throws QueryError on bad ids or u == v.
  bool adjacent(NodeId u, NodeId v) const;
  /// Edge or arc in either direction; no self-query check.
  bool linked(NodeId u, NodeId v) const;

  ExternalId external_id(NodeId v) const { return ids_.at(v); }
  std::span<const ExternalId> external_ids() const noexcept { return ids_; }
  /// Throws QueryError when the id is not part of the graph.
  NodeId internal_id(ExternalId id) const;
  bool contains_external(ExternalId id) const;

  /// Canonical edge list text ("u v\n", external ids, sorted; one line per
  /// undirected edge with u < v).
  std::string to_edge_list() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_id(NodeId v) const;

  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<ExternalId> ids_;
};

/// Parses whitespace- or comma-separated edge list text. Lines starting
/// with '#' or '%' and blank lines are ignored.
Graph parse_edge_list(std::string_view text, bool directed, EdgeListStats* stats = nullptr);

/// Reads the file and parses it; I/O failures throw fuzzmap::Error.
Graph load_edge_list(const std::string& path, bool directed, EdgeListStats* stats = nullptr);

}  // namespace fuzzmap
