#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fuzzmap/eval.hpp"
#include "fuzzmap/generators.hpp"
#include "fuzzmap/parallel.hpp"

using namespace fuzzmap;

namespace {

Graph complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_internal_edges(n, edges, false);
}

}  // namespace

TEST_CASE("pair enumeration covers every pair exactly once") {
  for (bool directed : {false, true}) {
    for (std::size_t n : {2, 3, 7, 20}) {
      std::set<std::pair<NodeId, NodeId>> seen;
      for (std::uint64_t i = 0; i < pair_count(n, directed); ++i) {
        const auto [u, v] = pair_at(i, n, directed);
        REQUIRE(u != v);
        REQUIRE(u < n);
        REQUIRE(v < n);
        if (!directed) REQUIRE(u < v);
        seen.insert({u, v});
      }
      CHECK(seen.size() == pair_count(n, directed));
    }
  }
}

TEST_CASE("pair sampling is distinct, seeded and capped") {
  const auto a = select_pairs(100, false, 500, 9);
  CHECK(a.size() == 500);
  CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(a.back() < pair_count(100, false));
  CHECK(select_pairs(100, false, 500, 9) == a);
  CHECK(select_pairs(100, false, 500, 10) != a);
  CHECK(select_pairs(10, false, 1000, 1).size() == 45);
  CHECK(select_pairs(10, true, std::nullopt, 1).size() == 90);
  CHECK_THROWS_AS(select_pairs(10, false, 0, 1), std::invalid_argument);
}

TEST_CASE("complete graph: everything definite, fuzzy buckets absent") {
  const Graph g = complete(5);
  const EvalReport r = evaluate_model(build(g, 2, 0, true, default_system()), g, std::nullopt, 0);
  CHECK(r.pairs == 10);
  CHECK(r.definite_pct() == 100.0);
  CHECK(r.definite_correct_pct() == 100.0);
  CHECK(r.fuzzy_pairs == 0);
  CHECK_FALSE(r.fuzzy_sound_yes_pct().has_value());
  CHECK_FALSE(r.fuzzy_sound_no_pct().has_value());
  CHECK(csv_row(r) == "2,10,100.0000,100.0000,0,,,0,ALL");
}

TEST_CASE("edgeless graph: everything definite no") {
  const Graph g = Graph::from_internal_edges(5, {}, false);
  const EvalReport r = evaluate_model(build(g, 3, 0, true, default_system()), g, std::nullopt, 0);
  CHECK(r.definite_pct() == 100.0);
  CHECK(r.definite_correct == r.pairs);
}

TEST_CASE("random graph: sound and reproducible") {
  const Graph g = erdos_renyi(100, 0.1, 12);
  const CompressedGraph cg = build(g, 4, 12, true, default_system());
  const EvalReport a = evaluate_model(cg, g, std::nullopt, 12);
  const EvalReport b = evaluate_model(cg, g, std::nullopt, 12);
  CHECK(a == b);
  CHECK(a.pairs == 4950);
  CHECK(a.definite_correct_pct() == 100.0);
  CHECK(a.definite + a.fuzzy_pairs == a.pairs);
  CHECK(a.fuzzy_neighbors + a.fuzzy_non_neighbors == a.fuzzy_pairs);

  // Brute-force recount over all pairs.
  std::uint64_t definite = 0, yes = 0, no = 0;
  for (NodeId u = 0; u < g.size(); ++u) {
    for (NodeId v = u + 1; v < g.size(); ++v) {
      const Answer ans = query(cg, u, v);
      if (ans.definite()) {
        ++definite;
      } else if (g.adjacent(u, v)) {
        yes += ans.value > 0.5;
      } else {
        no += ans.value < 0.5;
      }
    }
  }
  CHECK(a.definite == definite);
  CHECK(a.fuzzy_sound_yes == yes);
  CHECK(a.fuzzy_sound_no == no);
}

TEST_CASE("tallies do not depend on the worker count") {
  const Graph g = erdos_renyi(150, 0.05, 4);
  const CompressedGraph cg = build(g, 3, 4, false, default_system());
  set_thread_count(1);
  const EvalReport one = evaluate_model(cg, g, 5000, 3);
  set_thread_count(4);
  const EvalReport four = evaluate_model(cg, g, 5000, 3);
  set_thread_count(0);
  CHECK(one == four);
}

TEST_CASE("mismatched model and graph are rejected") {
  const Graph g = erdos_renyi(20, 0.2, 1);
  const CompressedGraph cg = build(g, 2, 1, true, default_system());
  CHECK_THROWS_AS(evaluate_model(cg, erdos_renyi(21, 0.2, 1), std::nullopt, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_model(cg, erdos_renyi(20, 0.2, 1, true), std::nullopt, 0),
                  std::invalid_argument);
}

TEST_CASE("sweep over a 4-clique: nine rows, all definite") {
  const Graph g = complete(4);
  std::vector<std::size_t> ks{2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto reports = sweep_k(g, ks, true, 7, kDefaultSampleSize, default_system());
  REQUIRE(reports.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(reports[i].k == ks[i]);
    CHECK(reports[i].definite_pct() == 100.0);
  }
  std::ostringstream a, b;
  write_csv(a, reports);
  write_csv(b, sweep_k(g, ks, true, 7, kDefaultSampleSize, default_system()));
  const std::string csv = a.str();
  CHECK(csv == b.str());
  CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("sweep on G(200, 0.05): every row sound") {
  const Graph g = erdos_renyi(200, 0.05, 21);
  std::vector<std::size_t> ks{2, 4, 8};
  const auto reports = sweep_k(g, ks, true, 21, std::nullopt, default_system());
  std::set<std::uint64_t> definite_counts;
  for (const auto& r : reports) {
    CHECK(r.definite_correct_pct() == 100.0);
    definite_counts.insert(r.definite);
    MESSAGE("k=" << r.k << " definite " << r.definite_pct() << "%");
  }
  CHECK(definite_counts.size() > 1);
  CHECK_THROWS_AS(sweep_k(g, std::vector<std::size_t>{}, true, 0, std::nullopt, default_system()),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_k(g, std::vector<std::size_t>{0}, true, 0, std::nullopt, default_system()),
                  std::invalid_argument);
}

TEST_CASE("csv formatting") {
  EvalReport r;
  r.k = 3;
  r.pairs = 3;
  r.definite = 1;
  r.definite_correct = 1;
  r.fuzzy_pairs = 2;
  r.fuzzy_neighbors = 1;
  r.fuzzy_sound_yes = 0;
  r.fuzzy_non_neighbors = 1;
  r.fuzzy_sound_no = 1;
  r.seed = 42;
  r.sample_size = 1000000;
  CHECK(csv_row(r) == "3,3,33.3333,100.0000,2,0.0000,100.0000,42,1000000");
}
