#include "fuzzmap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "fuzzmap/parallel.hpp"

namespace fuzzmap {

namespace {

std::optional<double> percent(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::string fixed4(std::optional<double> value) {
  if (!value) return {};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", *value);
  return buf;
}

// First pair index of row u in the undirected enumeration.
std::uint64_t row_offset(std::uint64_t u, std::uint64_t n) { return u * (2 * n - u - 1) / 2; }

}  // namespace

double EvalReport::definite_pct() const { return percent(definite, pairs).value_or(0.0); }

std::optional<double> EvalReport::definite_correct_pct() const {
  return percent(definite_correct, definite);
}

std::optional<double> EvalReport::fuzzy_sound_yes_pct() const {
  return percent(fuzzy_sound_yes, fuzzy_neighbors);
}

std::optional<double> EvalReport::fuzzy_sound_no_pct() const {
  return percent(fuzzy_sound_no, fuzzy_non_neighbors);
}

std::uint64_t pair_count(std::size_t n, bool directed) {
  const std::uint64_t m = n;
  return directed ? m * (m - 1) : m * (m - 1) / 2;
}

std::pair<NodeId, NodeId> pair_at(std::uint64_t index, std::size_t n, bool directed) {
  const std::uint64_t m = n;
  if (directed) {
    const std::uint64_t u = index / (m - 1);
    std::uint64_t v = index % (m - 1);
    if (v >= u) ++v;
    return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
  }
  // Largest u with row_offset(u) <= index.
  std::uint64_t lo = 0;
  std::uint64_t hi = m - 1;
  while (lo + 1 < hi) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (row_offset(mid, m) <= index) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const std::uint64_t u = lo;
  const std::uint64_t v = u + 1 + (index - row_offset(u, m));
  return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

std::vector<std::uint64_t> select_pairs(std::size_t n, bool directed, SampleSize sample,
                                        std::uint64_t seed) {
  if (sample && *sample == 0) throw std::invalid_argument("sample size must be at least 1");
  const std::uint64_t total = pair_count(n, directed);
  std::vector<std::uint64_t> picked;
  if (!sample || *sample >= total) {
    picked.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) picked[i] = i;
    return picked;
  }
  // Floyd's algorithm: exactly `want` distinct indices, uniform.
  const std::uint64_t want = *sample;
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(want * 2);
  for (std::uint64_t j = total - want; j < total; ++j) {
    const std::uint64_t t = rng() % (j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  picked.assign(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());
  return picked;
}

EvalReport evaluate_model(const CompressedGraph& cg, const Graph& g, SampleSize sample,
                          std::uint64_t seed) {
  if (cg.size() != g.size()) {
    throw std::invalid_argument("model has " + std::to_string(cg.size()) + " nodes, graph has " +
                                std::to_string(g.size()));
  }
  if (cg.directed() != g.directed()) throw std::invalid_argument("model and graph differ in direction");
  if (!std::equal(cg.external_ids().begin(), cg.external_ids().end(), g.external_ids().begin())) {
    throw std::invalid_argument("model and graph have different node ids");
  }

  const std::vector<std::uint64_t> pairs = select_pairs(g.size(), g.directed(), sample, seed);

  EvalReport report;
  report.k = cg.dimensions();
  report.pairs = pairs.size();
  report.seed = seed;
  report.sample_size = sample;

  const std::size_t workers = thread_count();
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(1, pairs.size() / 4096));
  std::vector<EvalReport> partial(chunks);
  const std::size_t per_chunk = (pairs.size() + chunks - 1) / chunks;

  parallel_for(chunks, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      EvalReport& t = partial[c];
      const std::size_t lo = c * per_chunk;
      const std::size_t hi = std::min(pairs.size(), lo + per_chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        const auto [u, v] = pair_at(pairs[i], g.size(), g.directed());
        const bool truth = g.adjacent(u, v);
        const Answer a = ask(cg, u, v);
        if (a.definite()) {
          ++t.definite;
          if ((a.value == 1.0) == truth) ++t.definite_correct;
        } else {
          ++t.fuzzy_pairs;
          if (truth) {
            ++t.fuzzy_neighbors;
            if (a.value > 0.5) ++t.fuzzy_sound_yes;
          } else {
            ++t.fuzzy_non_neighbors;
            if (a.value < 0.5) ++t.fuzzy_sound_no;
          }
        }
      }
    }
  });

  for (const EvalReport& t : partial) {
    report.definite += t.definite;
    report.definite_correct += t.definite_correct;
    report.fuzzy_pairs += t.fuzzy_pairs;
    report.fuzzy_neighbors += t.fuzzy_neighbors;
    report.fuzzy_sound_yes += t.fuzzy_sound_yes;
    report.fuzzy_non_neighbors += t.fuzzy_non_neighbors;
    report.fuzzy_sound_no += t.fuzzy_sound_no;
  }
  return report;
}

std::vector<EvalReport> sweep_k(const Graph& g, std::span<const std::size_t> k_values, bool quantize,
                                std::uint64_t seed, SampleSize sample, const FuzzySystem& fuzzy) {
  if (k_values.empty()) throw std::invalid_argument("no k values to sweep");
  for (std::size_t k : k_values) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
  }
  std::vector<EvalReport> reports;
  reports.reserve(k_values.size());
  for (std::size_t k : k_values) {
    const CompressedGraph cg = build(g, k, seed, quantize, fuzzy);
    reports.push_back(evaluate_model(cg, g, sample, seed));
  }
  return reports;
}

std::string csv_header() {
  return "k,pairs,definite_pct,definite_correct_pct,fuzzy_pairs,fuzzy_sound_yes_pct,"
         "fuzzy_sound_no_pct,seed,sample_size";
}

std::string csv_row(const EvalReport& r) {
  std::string row;
  row += std::to_string(r.k) + ',';
  row += std::to_string(r.pairs) + ',';
  row += fixed4(r.definite_pct()) + ',';
  row += fixed4(r.definite_correct_pct()) + ',';
  row += std::to_string(r.fuzzy_pairs) + ',';
  row += fixed4(r.fuzzy_sound_yes_pct()) + ',';
  row += fixed4(r.fuzzy_sound_no_pct()) + ',';
  row += std::to_string(r.seed) + ',';
  row += r.sample_size ? std::to_string(*r.sample_size) : std::string("ALL");
  return row;
}

void write_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << csv_header() << '\n';
  for (const auto& r : reports) out << csv_row(r) << '\n';
}

}  // namespace fuzzmap
