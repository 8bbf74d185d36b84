#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include "fuzzmap/error.hpp"
#include "fuzzmap/fcl.hpp"
#include "fuzzmap/oracle.hpp"

namespace fuzzmap {

namespace {

constexpr char kMagic[4] = {'F', 'Z', 'G', '1'};
constexpr std::uint32_t kFlagDirected = 1u << 0;
constexpr std::uint32_t kFlagQuantized = 1u << 1;

class Writer {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    buf_.insert(buf_.end(), p, p + size);
  }
  template <typename T>
  void le(T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) buf_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  std::vector<std::uint8_t>& buffer() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& buf, std::size_t end) : buf_(buf), end_(end) {}

  template <typename T>
  T le(const char* what) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
    need(sizeof(U), what);
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(buf_[pos_ + i]) << (8 * i);
    pos_ += sizeof(U);
    return std::bit_cast<T>(bits);
  }

  void need(std::uint64_t size, const char* what) const {
    if (size > end_ - pos_) {
      throw FormatError(pos_, std::string("truncated ") + what);
    }
  }

  std::size_t pos() const noexcept { return pos_; }
  const std::uint8_t* here() const { return buf_.data() + pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  const std::vector<std::uint8_t>& buf_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(const std::uint8_t* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths.
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

ModelHeader parse_header(Reader& in) {
  in.need(4, "magic");
  if (std::memcmp(in.here(), kMagic, 4) != 0) throw FormatError(0, "bad magic (expected FZG1)");
  in.skip(4);
  ModelHeader h;
  h.version = in.le<std::uint32_t>("version");
  if (h.version != kModelVersion) {
    throw FormatError(4, "unsupported format version " + std::to_string(h.version));
  }
  const auto flags = in.le<std::uint32_t>("flags");
  if (flags & ~(kFlagDirected | kFlagQuantized)) throw FormatError(8, "unknown flag bits");
  h.directed = flags & kFlagDirected;
  h.quantized = flags & kFlagQuantized;
  h.n = in.le<std::uint64_t>("node count");
  if (h.n < 2) throw FormatError(12, "node count below 2");
  h.k = in.le<std::uint32_t>("dimension");
  if (h.k < 1) throw FormatError(20, "dimension below 1");
  h.fcl_bytes = in.le<std::uint32_t>("FCL length");
  return h;
}

std::vector<std::uint8_t> slurp(std::istream& source) {
  std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(source)),
                                std::istreambuf_iterator<char>());
  if (source.bad()) throw Error("read failed");
  return buf;
}

}  // namespace

std::uint64_t model_body_bytes(std::uint64_t n, std::uint64_t k) { return n * (8 * k + 16); }

std::uint64_t save(const CompressedGraph& cg, std::ostream& sink) {
  const std::string& fcl = cg.fcl_source();
  if (fcl.size() > std::numeric_limits<std::uint32_t>::max()) throw Error("FCL text too large");

  Writer out;
  out.bytes(kMagic, 4);
  out.le<std::uint32_t>(kModelVersion);
  out.le<std::uint32_t>((cg.directed() ? kFlagDirected : 0) | (cg.quantized() ? kFlagQuantized : 0));
  out.le<std::uint64_t>(cg.size());
  out.le<std::uint32_t>(static_cast<std::uint32_t>(cg.dimensions()));
  out.le<std::uint32_t>(static_cast<std::uint32_t>(fcl.size()));
  for (ExternalId id : cg.external_ids()) out.le<std::uint64_t>(id);
  for (double x : cg.embedding().to_row_major()) out.le<double>(x);
  for (const Radii& r : cg.radii().all()) {
    out.le<double>(r.r);
    out.le<double>(r.R);
  }
  out.bytes(fcl.data(), fcl.size());
  auto& buf = out.buffer();
  out.le<std::uint32_t>(crc_of(buf.data(), buf.size()));

  sink.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!sink) throw Error("write failed");
  return buf.size();
}

ModelHeader read_header(std::istream& source) {
  std::vector<std::uint8_t> buf(kModelHeaderBytes);
  source.read(reinterpret_cast<char*>(buf.data()), kModelHeaderBytes);
  buf.resize(static_cast<std::size_t>(source.gcount()));
  Reader in(buf, buf.size());
  return parse_header(in);
}

CompressedGraph load(std::istream& source) {
  const std::vector<std::uint8_t> buf = slurp(source);
  if (buf.size() < kModelHeaderBytes + 4) {
    Reader in(buf, buf.size());
    parse_header(in);  // names the first missing field
    throw FormatError(buf.size(), "truncated checksum");
  }
  const std::size_t body_end = buf.size() - 4;
  Reader in(buf, body_end);
  const ModelHeader h = parse_header(in);

  const std::uint64_t n = h.n;
  const std::uint64_t k = h.k;
  if (n > (body_end / 8) || k > body_end / 8 / n) {
    throw FormatError(in.pos(), "truncated tables for n = " + std::to_string(n));
  }

  std::vector<ExternalId> ids(n);
  for (auto& id : ids) id = in.le<std::uint64_t>("id map");

  in.need(n * k * 8, "coordinates");
  std::vector<double> rows(n * k);
  for (auto& x : rows) {
    const std::size_t at = in.pos();
    x = in.le<double>("coordinates");
    if (!std::isfinite(x)) throw FormatError(at, "non-finite coordinate");
  }

  std::vector<Radii> radii(n);
  for (auto& r : radii) {
    const std::size_t at = in.pos();
    r.r = in.le<double>("radii");
    r.R = in.le<double>("radii");
    if (!std::isfinite(r.r) || (r.r < 0.0 && r.r != kNoYesRadius)) {
      throw FormatError(at, "invalid definite-yes radius");
    }
    if (std::isnan(r.R) || r.R < 0.0) throw FormatError(at + 8, "invalid definite-no radius");
  }

  in.need(h.fcl_bytes, "FCL text");
  const std::size_t fcl_at = in.pos();
  std::string fcl(reinterpret_cast<const char*>(in.here()), h.fcl_bytes);
  in.skip(h.fcl_bytes);
  if (in.pos() != body_end) throw FormatError(in.pos(), "trailing bytes before checksum");

  Reader tail(buf, buf.size());
  tail.skip(body_end);
  const auto stored = tail.le<std::uint32_t>("checksum");
  if (stored != crc_of(buf.data(), body_end)) throw FormatError(body_end, "checksum mismatch");

  FuzzySystem fuzzy = [&] {
    try {
      return parse_fcl(fcl);
    } catch (const ParseError& e) {
      throw FormatError(fcl_at, std::string("embedded FCL: ") + e.what());
    }
  }();

  try {
    return CompressedGraph(Embedding::from_row_major(n, k, rows), NodeRadii(std::move(radii), h.quantized),
                           h.directed, std::move(fuzzy), std::move(ids), std::move(fcl));
  } catch (const std::invalid_argument& e) {
    throw FormatError(kModelHeaderBytes, e.what());
  }
}

std::uint64_t save_file(const CompressedGraph& cg, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  const std::uint64_t bytes = save(cg, out);
  out.close();
  if (!out) throw Error("write failed: " + path);
  return bytes;
}

CompressedGraph load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return load(in);
}

}  // namespace fuzzmap
