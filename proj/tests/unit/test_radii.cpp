#include <doctest.h>

#include <cmath>
#include <limits>

#include "fuzzmap/error.hpp"
#include "fuzzmap/generators.hpp"
#include "fuzzmap/radii.hpp"
#include "fuzzmap/simd/kernels.hpp"
#include "support/oracles.hpp"

using namespace fuzzmap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Embedding with explicit 1-D or 2-D coordinates, row-major.
Embedding place(std::size_t k, std::vector<double> rows) {
  return Embedding::from_row_major(rows.size() / k, k, rows);
}

void check_sound(const Graph& g, const Embedding& e, const NodeRadii& radii) {
  for (NodeId v = 0; v < g.size(); ++v) {
    for (NodeId u = 0; u < g.size(); ++u) {
      if (u == v) continue;
      const double d = euclidean_distance(e, v, u);
      if (d <= radii[v].r) REQUIRE(g.adjacent(v, u));
      if (d >= radii[v].R) REQUIRE_FALSE(g.adjacent(v, u));
    }
  }
}

}  // namespace

TEST_CASE("euclidean_distance") {
  const Embedding e = place(2, {0.0, 0.0, 3.0, 4.0});
  CHECK(euclidean_distance(e, 0, 1) == 5.0);
  CHECK(euclidean_distance(e, 1, 1) == 0.0);
  CHECK_THROWS_AS(euclidean_distance(e, 0, 2), QueryError);
}

TEST_CASE("euclidean_distance matches an independent norm") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::vector<double> rows(6 * 3);
  for (auto& x : rows) x = coord(rng);
  const Embedding e = place(3, rows);
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = 0; v < 6; ++v) {
      const double* a = &rows[u * 3];
      const double* b = &rows[v * 3];
      const double want = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
      CHECK(euclidean_distance(e, u, v) == doctest::Approx(want).epsilon(1e-14));
      CHECK(euclidean_distance(e, u, v) == euclidean_distance(e, v, u));
    }
  }
}

TEST_CASE("node adjacent to every other node") {
  // Star centre 0 at the origin; leaves at 1.5, 2.5, -3.25 on a line.
  const Graph g = Graph::from_internal_edges(4, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}, {0, 3}}, false);
  const Embedding e = place(1, {0.0, 1.5, 2.5, -3.25});
  const Radii exact = compute_radii(g, e, 0, false);
  CHECK(exact.r == 3.25);
  CHECK(exact.R == kInf);
  const Radii q = compute_radii(g, e, 0, true);
  CHECK(q.r == 4.0);  // ceil(M): every distance is a definite yes
  CHECK(q.R == 4.0);  // floor(M) + 1
}

TEST_CASE("node adjacent to no other node") {
  const Graph g = Graph::from_internal_edges(4, std::vector<std::pair<NodeId, NodeId>>{{1, 2}, {2, 3}}, false);
  const Embedding e = place(1, {0.0, 1.5, 2.5, -3.25});
  const Radii exact = compute_radii(g, e, 0, false);
  CHECK(exact.r == kNoYesRadius);
  CHECK(exact.R == 1.5);
  const Radii q = compute_radii(g, e, 0, true);
  CHECK(q.r == kNoYesRadius);
  CHECK(q.R == 1.5);
}

TEST_CASE("mixed neighbours: largest sound r and smallest sound R") {
  // Node 0 at 0; friends at 1, 2.2 and 3.7; strangers at 3, 4.5.
  const Graph g = Graph::from_internal_edges(
      6, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}, {0, 5}}, false);
  const Embedding e = place(1, {0.0, 1.0, 2.2, 3.0, 4.5, 3.7});
  const Radii exact = compute_radii(g, e, 0, false);
  CHECK(exact.r == 2.2);
  CHECK(exact.R == 4.5);
  const Radii q = compute_radii(g, e, 0, true);
  CHECK(q.r == 2.0);  // ceil(3) - 1
  CHECK(q.R == 4.0);  // floor(3.7) + 1
}

TEST_CASE("boundary ties favour soundness") {
  // Friend and stranger both at distance 2.
  const Graph g = Graph::from_internal_edges(
      4, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}}, false);
  const Embedding e = place(1, {0.0, 1.0, 2.0, -2.0});
  const Radii exact = compute_radii(g, e, 0, false);
  CHECK(exact.r == 1.0);
  CHECK(exact.R == kInf);  // no stranger strictly beyond the last friend
}

TEST_CASE("coincident stranger forces r = -1") {
  const Graph g = Graph::from_internal_edges(
      3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}}, false);
  const Embedding e = place(1, {0.0, 0.5, 0.0});
  CHECK(compute_radii(g, e, 0, false).r == kNoYesRadius);
  CHECK(compute_radii(g, e, 0, true).r == kNoYesRadius);
}

TEST_CASE("radii equal the sort-and-scan oracle and stay sound") {
  for (bool directed : {false, true}) {
    for (const auto& item : testing::random_corpus(20, directed, 31)) {
      for (bool quantize : {false, true}) {
        const Embedding e = fastmap_embed(item.graph, 3, item.seed);
        const NodeRadii radii = compute_all_radii(item.graph, e, quantize);
        CHECK(radii.quantized() == quantize);
        for (NodeId v = 0; v < item.graph.size(); ++v) {
          const Radii want = testing::brute_radii(item.graph, e, v, quantize);
          REQUIRE(radii[v] == want);
          REQUIRE(compute_radii(item.graph, e, v, quantize) == want);
          if (quantize) {
            CHECK((radii[v].r == kNoYesRadius || radii[v].r == std::floor(radii[v].r)));
          }
        }
        check_sound(item.graph, e, radii);
      }
    }
  }
}

TEST_CASE("all-node radii are identical under every SIMD variant") {
  const Graph g = erdos_renyi(120, 0.1, 8);
  const Embedding e = fastmap_embed(g, 5, 8);
  simd::force_isa(simd::Isa::kScalar);
  const NodeRadii want = compute_all_radii(g, e, false);
  for (simd::Isa isa : simd::available_isas()) {
    simd::force_isa(isa);
    CHECK(compute_all_radii(g, e, false) == want);
  }
  simd::reset_isa();
}

TEST_CASE("compute_radii rejects mismatched inputs") {
  const Graph g = erdos_renyi(10, 0.3, 1);
  const Embedding e = place(1, {0.0, 1.0, 2.0});
  CHECK_THROWS_AS(compute_radii(g, e, 0, true), std::invalid_argument);
  const Embedding ok = fastmap_embed(g, 2, 1);
  CHECK_THROWS_AS(compute_radii(g, ok, 10, true), QueryError);
}
