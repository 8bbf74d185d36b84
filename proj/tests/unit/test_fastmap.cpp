#include <doctest.h>

#include <bit>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fuzzmap/error.hpp"
#include "fuzzmap/fastmap.hpp"
#include "fuzzmap/generators.hpp"
#include "fuzzmap/simd/kernels.hpp"
#include "support/oracles.hpp"

using namespace fuzzmap;

namespace {

Graph six_node() { return parse_edge_list(testing::kSixNodeEdgeList, false); }

Graph path(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_internal_edges(n, edges, false);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_internal_edges(n, edges, false);
}

bool bit_equal(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size() || a.dimensions() != b.dimensions()) return false;
  for (std::size_t i = 0; i < a.size() * a.dimensions(); ++i) {
    if (std::bit_cast<std::uint64_t>(a.data()[i]) != std::bit_cast<std::uint64_t>(b.data()[i])) {
      return false;
    }
  }
  return a.pivots() == b.pivots();
}

void check_anchoring(const Embedding& e) {
  for (std::size_t axis = 0; axis < e.dimensions(); ++axis) {
    const PivotPair& p = e.pivots().at(axis);
    if (p.degenerate) {
      for (NodeId v = 0; v < e.size(); ++v) CHECK(e.coord(v, axis) == 0.0);
      continue;
    }
    CHECK(e.coord(p.a, axis) == 0.0);
    CHECK(e.coord(p.b, axis) == p.distance);
  }
}

}  // namespace

TEST_CASE("graph_distance is 0, 1 or n") {
  const Graph g = six_node();
  auto id = [&](ExternalId x) { return g.internal_id(x); };
  CHECK(graph_distance(g, id(1), id(5)) == 1.0);
  CHECK(graph_distance(g, id(1), id(3)) == 6.0);
  CHECK(graph_distance(g, id(4), id(4)) == 0.0);
  CHECK_THROWS_AS(graph_distance(g, 0, 6), QueryError);

  std::vector<double> row(g.size());
  for (NodeId u = 0; u < g.size(); ++u) {
    graph_distance_row(g, u, row);
    for (NodeId v = 0; v < g.size(); ++v) CHECK(row[v] == graph_distance(g, u, v));
  }
}

TEST_CASE("directed graph distance is symmetric over arcs") {
  const Graph g = parse_edge_list("1 2\n2 3\n", true);
  CHECK(graph_distance(g, 0, 1) == 1.0);
  CHECK(graph_distance(g, 1, 0) == 1.0);
  CHECK(graph_distance(g, 0, 2) == 3.0);
}

TEST_CASE("project anchors pivots and evaluates the cosine-law formula") {
  const double d = 7.25;
  CHECK(project(0.0, d, d) == 0.0);
  CHECK(project(d, d, 0.0) == doctest::Approx(d).epsilon(1e-15));
  // (1 + 36 - 36) / 12
  CHECK(project(1.0, 6.0, 6.0) == 1.0 / 12.0);
  CHECK_THROWS_WITH_AS(project(1.0, 0.0, 1.0), "degenerate axis", std::domain_error);
}

TEST_CASE("residual_distance") {
  CHECK(residual_distance(5.0, 3.0, 0.0) == 4.0);
  CHECK(residual_distance(1.0, 2.0, 0.0) == 0.0);
  for (double x : {-3.0, 0.0, 0.25, 9.0}) CHECK(residual_distance(2.5, x, x) == 2.5);
}

TEST_CASE("choose_pivots on two nodes returns the only pair") {
  const Graph g = parse_edge_list("10 20\n", false);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const PivotPair p = choose_pivots([&](NodeId u, NodeId v) { return graph_distance(g, u, v); },
                                      g.size(), seed);
    CHECK(std::set<NodeId>{p.a, p.b} == std::set<NodeId>{0, 1});
    CHECK(p.distance == 1.0);
    CHECK_FALSE(p.degenerate);
  }
}

TEST_CASE("choose_pivots on a path picks a farthest (non-adjacent) pair") {
  const Graph g = path(5);
  auto dist = [&](NodeId u, NodeId v) { return graph_distance(g, u, v); };
  // Brute-force farthest pair distance.
  double best = 0.0;
  for (NodeId u = 0; u < 5; ++u) {
    for (NodeId v = 0; v < 5; ++v) best = std::max(best, dist(u, v));
  }
  REQUIRE(best == 5.0);
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const PivotPair p = choose_pivots(dist, 5, seed);
    CHECK(p.a != p.b);
    CHECK(p.distance == best);
    CHECK_FALSE(g.adjacent(p.a, p.b));
    CHECK(choose_pivots(dist, 5, seed) == p);
  }
}

TEST_CASE("choose_pivots flags zero-distance pairs as degenerate") {
  const PivotPair p = choose_pivots([](NodeId, NodeId) { return 0.0; }, 4, 3);
  CHECK(p.degenerate);
  CHECK(p.a != p.b);
  CHECK_THROWS_AS(choose_pivots([](NodeId, NodeId) { return 1.0; }, 1, 0), std::invalid_argument);
}

TEST_CASE("fastmap_embed argument checks") {
  const Graph g = six_node();
  CHECK_THROWS_AS(fastmap_embed(g, 0, 1), std::invalid_argument);
}

TEST_CASE("k = 1 embedding is anchored") {
  const Graph g = six_node();
  const Embedding e = fastmap_embed(g, 1, 9);
  CHECK(e.size() == 6);
  CHECK(e.dimensions() == 1);
  REQUIRE(e.pivots().size() == 1);
  check_anchoring(e);
  CHECK(e.pivots()[0].distance == 6.0);
}

TEST_CASE("complete graph K4 embeds inside unit distances") {
  const Graph g = complete(4);
  for (std::size_t k : {1, 2, 3, 5}) {
    FastMapTrace trace;
    const Embedding e = fastmap_embed(g, k, 11, &trace);
    check_anchoring(e);
    CHECK(e.pivots()[0].distance == 1.0);
    for (NodeId u = 0; u < 4; ++u) {
      for (NodeId v = 0; v < 4; ++v) {
        CHECK(testing::brute_distance(e, u, v) <= 1.0 + 1e-12);
      }
    }
    for (double low : trace.min_residual) CHECK(low >= 0.0);
    // A 4-point simplex spans 3 axes; nothing is left for a fourth.
    if (k > 3) CHECK(e.pivots()[3].distance < 1e-6);
  }
}

TEST_CASE("six-node graph maps to a finite 6 x 2 table") {
  const Embedding e = fastmap_embed(six_node(), 2, 0);
  CHECK(e.size() == 6);
  CHECK(e.dimensions() == 2);
  for (NodeId v = 0; v < 6; ++v) {
    for (std::size_t l = 0; l < 2; ++l) CHECK(std::isfinite(e.coord(v, l)));
  }
  check_anchoring(e);
}

TEST_CASE("embedding is deterministic, anchored and clamped on random graphs") {
  for (const auto& item : testing::random_corpus(24, false, 77)) {
    for (std::size_t k : {1, 3, 8}) {
      FastMapTrace trace;
      const Embedding a = fastmap_embed(item.graph, k, item.seed, &trace);
      const Embedding b = fastmap_embed(item.graph, k, item.seed);
      CHECK(bit_equal(a, b));
      check_anchoring(a);
      for (double low : trace.min_residual) CHECK(low >= 0.0);
    }
  }
}

TEST_CASE("embedding is identical under every SIMD variant") {
  const Graph g = erdos_renyi(157, 0.08, 5);
  simd::force_isa(simd::Isa::kScalar);
  const Embedding want = fastmap_embed(g, 6, 42);
  for (simd::Isa isa : simd::available_isas()) {
    simd::force_isa(isa);
    CHECK_MESSAGE(bit_equal(fastmap_embed(g, 6, 42), want), simd::isa_name(isa));
  }
  simd::reset_isa();
}

TEST_CASE("different seeds explore different pivots") {
  const Graph g = erdos_renyi(80, 0.1, 3);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PivotPair p = fastmap_embed(g, 1, seed).pivots()[0];
    seen.insert({p.a, p.b});
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("embedding time grows linearly in n at fixed degree") {
  auto best_time = [](const Graph& g) {
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const Embedding e = fastmap_embed(g, 4, 1);
      const auto t1 = std::chrono::steady_clock::now();
      CHECK(e.size() == g.size());
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };
  // Linear growth gives ~4x, quadratic 16x.
  const Graph small = barabasi_albert(10000, 5, 1);
  const Graph large = barabasi_albert(40000, 5, 1);
  const double ratio = best_time(large) / best_time(small);
  MESSAGE("4x nodes: time ratio " << ratio);
  CHECK(ratio <= 6.0);
}

TEST_CASE("pivot search reads a fixed number of rows whatever n") {
  for (std::size_t n : {10, 1000, 50000}) {
    const Graph g = barabasi_albert(n, 3, 2);
    std::size_t rows = 0;
    const DistanceRow counted = [&](NodeId from, std::span<double> out) {
      ++rows;
      graph_distance_row(g, from, out);
    };
    choose_pivots(counted, n, 9);
    CHECK(rows == 5);
  }
}
