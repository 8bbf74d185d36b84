#include <doctest.h>

#include <cstring>
#include <sstream>

#include "fuzzmap/error.hpp"
#include "fuzzmap/fcl.hpp"
#include "fuzzmap/generators.hpp"
#include "fuzzmap/oracle.hpp"

using namespace fuzzmap;

namespace {

std::string bytes_of(const CompressedGraph& cg) {
  std::ostringstream out(std::ios::binary);
  save(cg, out);
  return out.str();
}

CompressedGraph from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return load(in);
}

std::uint64_t fault_offset(const std::string& bytes) {
  try {
    from_bytes(bytes);
  } catch (const FormatError& e) {
    return e.offset();
  }
  FAIL("load accepted a corrupt model");
  return 0;
}

std::uint32_t u32_at(const std::string& b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[at + i]);
  return v;
}

}  // namespace

TEST_CASE("save/load round trip preserves every field and every answer") {
  for (bool directed : {false, true}) {
    for (bool quantize : {false, true}) {
      const Graph g = erdos_renyi(60, 0.1, 17, directed);
      const CompressedGraph cg = build(g, 3, 17, quantize, default_system());
      const std::string bytes = bytes_of(cg);
      const CompressedGraph back = from_bytes(bytes);
      CHECK(back == cg);
      CHECK(back.directed() == directed);
      CHECK(back.quantized() == quantize);
      CHECK(bytes_of(back) == bytes);
      for (NodeId u = 0; u < g.size(); ++u) {
        for (NodeId v = 0; v < g.size(); ++v) {
          if (u != v) REQUIRE(ask(back, u, v) == ask(cg, u, v));
        }
      }
    }
  }
}

TEST_CASE("file layout: header, tables, FCL and checksum") {
  const Graph g = parse_edge_list("100 7\n7 3\n3 100\n3 9\n", false);
  const CompressedGraph cg = build(g, 2, 1, true, default_system());
  const std::string b = bytes_of(cg);
  const std::uint64_t n = 4, k = 2;
  const std::size_t fcl = cg.fcl_source().size();
  CHECK(b.size() == kModelHeaderBytes + 8 * n + model_body_bytes(n, k) + fcl + 4);
  CHECK(b.compare(0, 4, "FZG1") == 0);
  CHECK(u32_at(b, 4) == 1);           // version
  CHECK(u32_at(b, 8) == 0b10);        // quantized, undirected
  CHECK(u32_at(b, 12) == 4);          // n (low word)
  CHECK(u32_at(b, 16) == 0);          // n (high word)
  CHECK(u32_at(b, 20) == 2);          // k
  CHECK(u32_at(b, 24) == fcl);
  CHECK(u32_at(b, 28) == 3);          // smallest external id first
  CHECK(b.compare(b.size() - 4 - fcl, fcl, cg.fcl_source()) == 0);
  CHECK(cg.fcl_source() == to_fcl(default_system()));
}

TEST_CASE("body size is n * (8k + 16) bytes") {
  CHECK(model_body_bytes(100, 4) == 4800);
  for (std::size_t n : {2, 10, 250}) {
    for (std::size_t k : {1, 4, 9}) {
      const Graph g = erdos_renyi(n, 0.2, n + k);
      const CompressedGraph cg = build(g, k, 0, true, default_system());
      const std::size_t total = bytes_of(cg).size();
      CHECK(total - kModelHeaderBytes - 8 * n - cg.fcl_source().size() - 4 == n * (8 * k + 16));
    }
  }
}

TEST_CASE("corrupt inputs name the failing offset") {
  const CompressedGraph cg = build(erdos_renyi(12, 0.3, 2), 2, 2, true, default_system());
  const std::string good = bytes_of(cg);

  std::string bad = good;
  bad[0] = 'X';
  CHECK(fault_offset(bad) == 0);

  bad = good;
  bad[4] = 2;
  CHECK(fault_offset(bad) == 4);

  bad = good;
  bad[8] = 0x7;
  CHECK(fault_offset(bad) == 8);

  CHECK(fault_offset(good.substr(0, 10)) == 8);
  CHECK(fault_offset(good.substr(0, good.size() - 1)) > kModelHeaderBytes);
  CHECK(fault_offset(good.substr(0, 100)) >= kModelHeaderBytes);

  bad = good;
  bad[kModelHeaderBytes + 12 * 8 + 3] ^= 0x40;  // a coordinate byte
  CHECK(fault_offset(bad) == good.size() - 4);  // checksum mismatch

  CHECK_THROWS_AS(from_bytes(""), FormatError);
  CHECK_THROWS_WITH_AS(from_bytes("FZG1"), doctest::Contains("truncated"), FormatError);
}

TEST_CASE("read_header reports the fixed fields") {
  const CompressedGraph cg = build(erdos_renyi(30, 0.2, 4, true), 5, 4, false, default_system());
  std::istringstream in(bytes_of(cg), std::ios::binary);
  const ModelHeader h = read_header(in);
  CHECK(h.version == 1);
  CHECK(h.directed);
  CHECK_FALSE(h.quantized);
  CHECK(h.n == 30);
  CHECK(h.k == 5);
  CHECK(h.fcl_bytes == cg.fcl_source().size());
}

TEST_CASE("custom FCL is embedded verbatim") {
  FuzzySystemSpec spec = default_system().spec();
  spec.input_terms[0].shape = {{{0.0, 0.0}, {0.5, 0.2}, {1.0, 1.0}}};
  const FuzzySystem sys(spec);
  const CompressedGraph cg = build(erdos_renyi(20, 0.2, 1), 2, 1, true, sys);
  const CompressedGraph back = from_bytes(bytes_of(cg));
  CHECK(back.fuzzy() == sys);
}
