#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fuzzmap/fuzzy.hpp"
#include "fuzzmap/graph.hpp"
#include "fuzzmap/oracle.hpp"

namespace fuzzmap {

/// Pair budget for evaluation; std::nullopt means every pair.
using SampleSize = std::optional<std::uint64_t>;
inline constexpr std::uint64_t kDefaultSampleSize = 1'000'000;

/// Tallies of one evaluation run. Percentages are derived from the counts;
/// a bucket with no members has no percentage.
struct EvalReport {
  std::size_t k = 0;
  std::uint64_t pairs = 0;
  std::uint64_t definite = 0;
  std::uint64_t definite_correct = 0;
  std::uint64_t fuzzy_pairs = 0;
  std::uint64_t fuzzy_neighbors = 0;       // fuzzy pairs that are truly adjacent
  std::uint64_t fuzzy_sound_yes = 0;       // ... with likelihood > 0.5
  std::uint64_t fuzzy_non_neighbors = 0;   // fuzzy pairs that are not adjacent
  std::uint64_t fuzzy_sound_no = 0;        // ... with likelihood < 0.5
  std::uint64_t seed = 0;
  SampleSize sample_size;

  double definite_pct() const;
  std::optional<double> definite_correct_pct() const;
  std::optional<double> fuzzy_sound_yes_pct() const;
  std::optional<double> fuzzy_sound_no_pct() const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Number of distinct pairs: unordered when undirected, ordered when directed.
std::uint64_t pair_count(std::size_t n, bool directed);

/// Pair with the given index in the canonical enumeration (u < v ascending
/// for undirected graphs; row-major over u != v for directed ones).
std::pair<NodeId, NodeId> pair_at(std::uint64_t index, std::size_t n, bool directed);

/// Pair indices to evaluate: all of them when the budget covers every pair,
/// otherwise a uniform sample without replacement determined by `seed`.
/// Returned sorted ascending.
std::vector<std::uint64_t> select_pairs(std::size_t n, bool directed, SampleSize sample,
                                        std::uint64_t seed);

/// Queries the selected pairs and scores them against `g`. Throws
/// std::invalid_argument when the model was not built from `g`.
EvalReport evaluate_model(const CompressedGraph& cg, const Graph& g, SampleSize sample,
                          std::uint64_t seed);

/// One model per k (same seed), each evaluated on the same pair sample.
std::vector<EvalReport> sweep_k(const Graph& g, std::span<const std::size_t> k_values, bool quantize,
                                std::uint64_t seed, SampleSize sample, const FuzzySystem& fuzzy);

std::string csv_header();
std::string csv_row(const EvalReport& report);
void write_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace fuzzmap
