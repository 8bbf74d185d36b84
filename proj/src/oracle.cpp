#include "fuzzmap/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fuzzmap/error.hpp"
#include "fuzzmap/fcl.hpp"
#include "fuzzmap/simd/kernels.hpp"

namespace fuzzmap {

namespace {

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void check_pair(const CompressedGraph& cg, NodeId u, NodeId v) {
  if (u >= cg.size() || v >= cg.size()) {
    throw QueryError("node id out of range (n = " + std::to_string(cg.size()) + ")");
  }
  if (u == v) throw QueryError("self query");
}

// Crisp input for one endpoint, or a negative value when that endpoint's
// radii are sentinels and it has no say in the fuzzy zone.
double crisp_input(const Radii& radii, double d) {
  if (radii.r < 0.0 || std::isinf(radii.R)) return -1.0;
  const double span = radii.R - radii.r;
  if (!(span > 0.0)) return -1.0;
  return std::clamp((radii.R - d) / span, 0.0, 1.0);
}

}  // namespace

CompressedGraph::CompressedGraph(Embedding embedding, NodeRadii radii, bool directed,
                                 FuzzySystem fuzzy, std::vector<ExternalId> ids,
                                 std::string fcl_source)
    : embedding_(std::move(embedding)),
      radii_(std::move(radii)),
      directed_(directed),
      fuzzy_(std::move(fuzzy)),
      ids_(std::move(ids)),
      fcl_source_(std::move(fcl_source)) {
  if (radii_.size() != embedding_.size() || ids_.size() != embedding_.size()) {
    throw std::invalid_argument("model tables disagree on node count");
  }
  by_external_.resize(ids_.size());
  std::iota(by_external_.begin(), by_external_.end(), NodeId{0});
  std::sort(by_external_.begin(), by_external_.end(),
            [&](NodeId a, NodeId b) { return ids_[a] < ids_[b]; });
  for (std::size_t i = 1; i < by_external_.size(); ++i) {
    if (ids_[by_external_[i]] == ids_[by_external_[i - 1]]) {
      throw std::invalid_argument("duplicate external id " + std::to_string(ids_[by_external_[i]]));
    }
  }
}

NodeId CompressedGraph::internal_id(ExternalId id) const {
  auto it = std::lower_bound(by_external_.begin(), by_external_.end(), id,
                             [&](NodeId v, ExternalId value) { return ids_[v] < value; });
  if (it == by_external_.end() || ids_[*it] != id) {
    throw QueryError("unknown node id " + std::to_string(id));
  }
  return *it;
}

double CompressedGraph::distance(NodeId u, NodeId v) const {
  return euclidean_distance(embedding_, u, v);
}

bool operator==(const CompressedGraph& a, const CompressedGraph& b) {
  if (a.size() != b.size() || a.dimensions() != b.dimensions() || a.directed_ != b.directed_ ||
      a.quantized() != b.quantized() || a.ids_ != b.ids_ || a.fcl_source_ != b.fcl_source_ ||
      !(a.fuzzy_ == b.fuzzy_)) {
    return false;
  }
  const std::vector<double> ca = a.embedding_.to_row_major();
  const std::vector<double> cb = b.embedding_.to_row_major();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!same_bits(ca[i], cb[i])) return false;
  }
  for (NodeId v = 0; v < a.size(); ++v) {
    if (!same_bits(a.radii_[v].r, b.radii_[v].r) || !same_bits(a.radii_[v].R, b.radii_[v].R)) {
      return false;
    }
  }
  return true;
}

CompressedGraph build(const Graph& g, std::size_t k, std::uint64_t seed, bool quantize,
                      const FuzzySystem& fuzzy) {
  Embedding embedding = fastmap_embed(g, k, seed);
  NodeRadii radii = compute_all_radii(g, embedding, quantize);
  std::vector<ExternalId> ids(g.external_ids().begin(), g.external_ids().end());
  return CompressedGraph(std::move(embedding), std::move(radii), g.directed(), fuzzy,
                         std::move(ids), to_fcl(fuzzy));
}

Answer query(const CompressedGraph& cg, NodeId u, NodeId v) {
  check_pair(cg, u, v);
  if (cg.directed()) throw QueryError("model is directed; pair queries are ordered");
  const double d = cg.distance(u, v);
  const Radii& ru = cg.radii()[u];
  const Radii& rv = cg.radii()[v];
  if (d <= ru.r || d <= rv.r) return Answer::yes();
  if (d >= ru.R || d >= rv.R) return Answer::no();

  const double in_u = crisp_input(ru, d);
  const double in_v = crisp_input(rv, d);
  if (in_u < 0.0 && in_v < 0.0) return Answer::fuzzy(0.5);
  if (in_u < 0.0) return Answer::fuzzy(cg.fuzzy().evaluate(in_v));
  if (in_v < 0.0) return Answer::fuzzy(cg.fuzzy().evaluate(in_u));
  return Answer::fuzzy(std::min(cg.fuzzy().evaluate(in_u), cg.fuzzy().evaluate(in_v)));
}

Answer query_directed(const CompressedGraph& cg, NodeId u, NodeId v) {
  check_pair(cg, u, v);
  if (!cg.directed()) throw QueryError("model is undirected; use query");
  const double d = cg.distance(u, v);
  const Radii& ru = cg.radii()[u];
  if (d <= ru.r) return Answer::yes();
  if (d >= ru.R) return Answer::no();
  const double in_u = crisp_input(ru, d);
  if (in_u < 0.0) return Answer::fuzzy(0.5);
  return Answer::fuzzy(cg.fuzzy().evaluate(in_u));
}

Answer ask(const CompressedGraph& cg, NodeId u, NodeId v) {
  return cg.directed() ? query_directed(cg, u, v) : query(cg, u, v);
}

}  // namespace fuzzmap
