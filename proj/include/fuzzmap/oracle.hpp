#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fuzzmap/fastmap.hpp"
#include "fuzzmap/fuzzy.hpp"
#include "fuzzmap/graph.hpp"
#include "fuzzmap/radii.hpp"

namespace fuzzmap {

enum class AnswerKind { kDefinite, kFuzzy };

/// Result of an adjacency query. Definite answers carry exactly 0 or 1 and
/// are always correct for the graph the model was built from.
struct Answer {
  AnswerKind kind = AnswerKind::kFuzzy;
  double value = 0.5;

  static Answer yes() { return {AnswerKind::kDefinite, 1.0}; }
  static Answer no() { return {AnswerKind::kDefinite, 0.0}; }
  static Answer fuzzy(double likelihood) { return {AnswerKind::kFuzzy, likelihood}; }

  bool definite() const noexcept { return kind == AnswerKind::kDefinite; }
  friend bool operator==(const Answer&, const Answer&) = default;
};

/// Compressed graph: k coordinates and two radii per node plus the fuzzy
/// system that grades the uncertain zone. Immutable; queries are pure.
class CompressedGraph {
 public:
  CompressedGraph(Embedding embedding, NodeRadii radii, bool directed, FuzzySystem fuzzy,
                  std::vector<ExternalId> ids, std::string fcl_source);

  std::size_t size() const noexcept { return embedding_.size(); }
  std::size_t dimensions() const noexcept { return embedding_.dimensions(); }
  bool directed() const noexcept { return directed_; }
  bool quantized() const noexcept { return radii_.quantized(); }

  const Embedding& embedding() const noexcept { return embedding_; }
  const NodeRadii& radii() const noexcept { return radii_; }
  const FuzzySystem& fuzzy() const noexcept { return fuzzy_; }
  /// FCL text of the fuzzy system, stored verbatim in the model file.
  const std::string& fcl_source() const noexcept { return fcl_source_; }

  /// External id of internal node v (internal-id order).
  const std::vector<ExternalId>& external_ids() const noexcept { return ids_; }
  /// Throws QueryError for ids that are not in the model.
  NodeId internal_id(ExternalId id) const;

  double distance(NodeId u, NodeId v) const;

  /// Cells stored for coordinates and radii: n * (k + 2).
  std::size_t numeric_cells() const noexcept { return size() * (dimensions() + 2); }

  friend bool operator==(const CompressedGraph& a, const CompressedGraph& b);

 private:
  Embedding embedding_;
  NodeRadii radii_;
  bool directed_;
  FuzzySystem fuzzy_;
  std::vector<ExternalId> ids_;
  std::vector<NodeId> by_external_;  // internal ids sorted by external id
  std::string fcl_source_;
};

/// FastMap embedding followed by per-node radii.
CompressedGraph build(const Graph& g, std::size_t k, std::uint64_t seed, bool quantize,
                      const FuzzySystem& fuzzy);

/// Undirected adjacency query between distinct internal ids.
Answer query(const CompressedGraph& cg, NodeId u, NodeId v);

/// Arc query u -> v on a directed model; only u's radii are consulted.
Answer query_directed(const CompressedGraph& cg, NodeId u, NodeId v);

/// query() or query_directed() depending on the model.
Answer ask(const CompressedGraph& cg, NodeId u, NodeId v);

// FZG1 model file.
inline constexpr std::size_t kModelHeaderBytes = 28;
inline constexpr std::uint32_t kModelVersion = 1;

/// Coordinate and radii block size: n * (8k + 16) bytes.
std::uint64_t model_body_bytes(std::uint64_t n, std::uint64_t k);

/// Writes the model; returns the number of bytes written. Throws Error on
/// stream failure.
std::uint64_t save(const CompressedGraph& cg, std::ostream& sink);
/// Reads a model. Throws FormatError naming the offset of the first fault.
CompressedGraph load(std::istream& source);

std::uint64_t save_file(const CompressedGraph& cg, const std::string& path);
CompressedGraph load_file(const std::string& path);

struct ModelHeader {
  std::uint32_t version = 0;
  bool directed = false;
  bool quantized = false;
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t fcl_bytes = 0;
};

/// Parses and checks just the fixed header.
ModelHeader read_header(std::istream& source);

}  // namespace fuzzmap
