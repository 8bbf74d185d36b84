#include "fuzzmap/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fuzzmap/error.hpp"

namespace fuzzmap {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

void sort_unique(std::vector<NodeId>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

// Parses one non-negative integer at text[pos], advancing pos.
bool read_id(std::string_view text, std::size_t& pos, ExternalId& out) {
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr == first) return false;
  pos += static_cast<std::size_t>(ptr - first);
  return true;
}

}  // namespace

Graph Graph::from_edges(std::span<const std::pair<ExternalId, ExternalId>> edges, bool directed,
                        EdgeListStats* stats) {
  Graph g;
  g.directed_ = directed;

  std::size_t loops = 0;
  for (const auto& [u, v] : edges) {
    if (u == v) {
      ++loops;
      continue;
    }
    g.ids_.push_back(u);
    g.ids_.push_back(v);
  }
  std::sort(g.ids_.begin(), g.ids_.end());
  g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());

  const std::size_t n = g.ids_.size();
  g.out_.assign(n, {});
  if (directed) g.in_.assign(n, {});

  std::size_t kept = 0;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    const NodeId a = g.internal_id(u);
    const NodeId b = g.internal_id(v);
    g.out_[a].push_back(b);
    if (directed) {
      g.in_[b].push_back(a);
    } else {
      g.out_[b].push_back(a);
    }
    ++kept;
  }

  std::size_t entries = 0;
  for (auto& list : g.out_) {
    sort_unique(list);
    entries += list.size();
  }
  for (auto& list : g.in_) sort_unique(list);
  g.edge_count_ = directed ? entries : entries / 2;

  if (stats) {
    stats->edges_read = edges.size();
    stats->self_loops_skipped = loops;
    stats->duplicates_dropped = kept - g.edge_count_;
  }
  return g;
}

Graph Graph::from_internal_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                                 bool directed) {
  Graph g;
  g.directed_ = directed;
  g.ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.ids_[i] = i;
  g.out_.assign(n, {});
  if (directed) g.in_.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw QueryError("edge endpoint out of range");
    if (u == v) continue;
    g.out_[u].push_back(v);
    if (directed) {
      g.in_[v].push_back(u);
    } else {
      g.out_[v].push_back(u);
    }
  }
  std::size_t entries = 0;
  for (auto& list : g.out_) {
    sort_unique(list);
    entries += list.size();
  }
  for (auto& list : g.in_) sort_unique(list);
  g.edge_count_ = directed ? entries : entries / 2;
  return g;
}

void Graph::check_id(NodeId v) const {
  if (v >= size()) {
    throw QueryError("node id " + std::to_string(v) + " out of range (n = " +
                     std::to_string(size()) + ")");
  }
}

bool Graph::adjacent(NodeId u, NodeId v) const {
  check_id(u);
  check_id(v);
  if (u == v) throw QueryError("self query");
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

bool Graph::linked(NodeId u, NodeId v) const {
  check_id(u);
  check_id(v);
  if (std::binary_search(out_[u].begin(), out_[u].end(), v)) return true;
  return directed_ && std::binary_search(out_[v].begin(), out_[v].end(), u);
}

NodeId Graph::internal_id(ExternalId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw QueryError("unknown node id " + std::to_string(id));
  }
  return static_cast<NodeId>(it - ids_.begin());
}

bool Graph::contains_external(ExternalId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : out_[u]) {
      if (!directed_ && v < u) continue;
      out << ids_[u] << ' ' << ids_[v] << '\n';
    }
  }
  return out.str();
}

Graph parse_edge_list(std::string_view text, bool directed, EdgeListStats* stats) {
  std::vector<std::pair<ExternalId, ExternalId>> edges;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::size_t pos = 0;
    while (pos < line.size() && is_blank(line[pos])) ++pos;
    if (pos == line.size() || line[pos] == '#' || line[pos] == '%') continue;

    ExternalId u = 0;
    ExternalId v = 0;
    bool ok = read_id(line, pos, u);
    if (ok) {
      const std::size_t sep_start = pos;
      int commas = 0;
      while (pos < line.size() && (is_blank(line[pos]) || line[pos] == ',')) {
        if (line[pos] == ',') ++commas;
        ++pos;
      }
      ok = pos > sep_start && commas <= 1 && read_id(line, pos, v);
    }
    if (ok) {
      while (pos < line.size() && is_blank(line[pos])) ++pos;
      ok = pos == line.size();
    }
    if (!ok) {
      throw ParseError(line_no, "expected two integer node ids, got '" + std::string(line) + "'");
    }
    edges.emplace_back(u, v);
  }

  Graph g = Graph::from_edges(edges, directed, stats);
  if (stats) stats->lines = line_no;
  if (g.size() == 0) throw ParseError(line_no, "empty graph");
  return g;
}

Graph load_edge_list(const std::string& path, bool directed, EdgeListStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), directed, stats);
}

}  // namespace fuzzmap
