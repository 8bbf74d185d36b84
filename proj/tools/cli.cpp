#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "fuzzmap/error.hpp"
#include "fuzzmap/eval.hpp"
#include "fuzzmap/fcl.hpp"
#include "fuzzmap/graph.hpp"
#include "fuzzmap/oracle.hpp"

namespace fuzzmap::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

SampleSize parse_sample(const std::string& text) {
  if (text == "ALL" || text == "all") return std::nullopt;
  const std::uint64_t n = parse_u64(text, "sample size");
  if (n == 0) throw UsageError("sample size must be at least 1");
  return n;
}

// lo:hi[:step], or a single value.
std::vector<std::size_t> parse_k_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty() || parts.size() > 3) throw UsageError("k range must be lo:hi[:step]");
  const std::uint64_t lo = parse_u64(parts[0], "k");
  const std::uint64_t hi = parts.size() > 1 ? parse_u64(parts[1], "k") : lo;
  const std::uint64_t step = parts.size() > 2 ? parse_u64(parts[2], "k step") : 1;
  if (lo < 1 || hi < lo || step < 1) throw UsageError("k range needs 1 <= lo <= hi and step >= 1");
  std::vector<std::size_t> ks;
  for (std::uint64_t k = lo; k <= hi; k += step) ks.push_back(k);
  return ks;
}

FuzzySystem fuzzy_from(const std::string& fcl_path) {
  return fcl_path.empty() ? default_system() : load_fcl(fcl_path);
}

void write_output(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw Error("write failed: " + path);
}

std::string format_answer(const Answer& a) {
  if (a.definite()) return a.value == 1.0 ? "yes" : "no";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "fuzzy %.4f", a.value);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compress graphs into k-dimensional point sets and query adjacency"};
  app.name("fuzzmap");
  app.require_subcommand(1);

  struct {
    std::string input, output, fcl, model, graph, out_path, k_range, sample = "1000000";
    std::size_t k = 4;
    std::uint64_t seed = 0, u = 0, v = 0;
    bool quantize = true, directed = false;
  } o;

  auto* compress = app.add_subcommand("compress", "Build a model file from an edge list");
  compress->add_option("--input", o.input, "Edge list file")->required();
  compress->add_option("--output", o.output, "Model file to write")->required();
  compress->add_option("--k", o.k, "Embedding dimension")->required()->check(CLI::PositiveNumber);
  compress->add_option("--seed", o.seed, "Pivot search seed");
  compress->add_flag("--quantize,!--no-quantize", o.quantize, "Integer radii (default on)");
  compress->add_flag("--directed", o.directed, "Treat edges as arcs");
  compress->add_option("--fcl", o.fcl, "FCL rule file (default: built-in system)");

  auto* query_cmd = app.add_subcommand("query", "Ask whether two nodes are adjacent");
  query_cmd->add_option("--model", o.model, "Model file")->required();
  query_cmd->add_option("--u", o.u, "First node id")->required();
  query_cmd->add_option("--v", o.v, "Second node id")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score a model against its source graph");
  evaluate->add_option("--model", o.model, "Model file")->required();
  evaluate->add_option("--graph", o.graph, "Edge list the model was built from")->required();
  evaluate->add_option("--sample", o.sample, "Pairs to evaluate, or ALL");
  evaluate->add_option("--seed", o.seed, "Pair sampling seed");
  evaluate->add_option("--out", o.out_path, "CSV file (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "Build and evaluate one model per k");
  sweep->add_option("--input", o.input, "Edge list file")->required();
  sweep->add_option("--k", o.k_range, "k range lo:hi[:step]")->required();
  sweep->add_option("--seed", o.seed, "Pivot search and sampling seed");
  sweep->add_option("--sample", o.sample, "Pairs to evaluate per k, or ALL");
  sweep->add_flag("--quantize,!--no-quantize", o.quantize, "Integer radii (default on)");
  sweep->add_flag("--directed", o.directed, "Treat edges as arcs");
  sweep->add_option("--fcl", o.fcl, "FCL rule file (default: built-in system)");
  sweep->add_option("--out", o.out_path, "CSV file (default: standard output)");

  auto* info = app.add_subcommand("info", "Print model header fields");
  info->add_option("model", o.model, "Model file")->required();

  std::vector<const char*> argv{"fuzzmap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream diag;
    const int code = app.exit(e, help_out, diag);
    out << help_out.str();
    err << diag.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (compress->parsed()) {
      EdgeListStats stats;
      const Graph g = load_edge_list(o.input, o.directed, &stats);
      if (stats.self_loops_skipped > 0) {
        err << "warning: skipped " << stats.self_loops_skipped << " self-loop line(s)\n";
      }
      if (g.size() < 2) throw UsageError("graph needs at least two nodes");
      const CompressedGraph cg = build(g, o.k, o.seed, o.quantize, fuzzy_from(o.fcl));
      const std::uint64_t bytes = save_file(cg, o.output);
      out << "n " << cg.size() << "\nk " << cg.dimensions() << "\nbytes " << bytes << '\n';
    } else if (query_cmd->parsed()) {
      const CompressedGraph cg = load_file(o.model);
      const NodeId u = cg.internal_id(o.u);
      const NodeId v = cg.internal_id(o.v);
      out << format_answer(ask(cg, u, v)) << '\n';
    } else if (evaluate->parsed()) {
      const SampleSize sample = parse_sample(o.sample);
      const CompressedGraph cg = load_file(o.model);
      const Graph g = load_edge_list(o.graph, cg.directed());
      const EvalReport report = evaluate_model(cg, g, sample, o.seed);
      write_output(o.out_path, out, csv_header() + '\n' + csv_row(report) + '\n');
    } else if (sweep->parsed()) {
      const SampleSize sample = parse_sample(o.sample);
      const std::vector<std::size_t> ks = parse_k_range(o.k_range);
      const Graph g = load_edge_list(o.input, o.directed);
      if (g.size() < 2) throw UsageError("graph needs at least two nodes");
      const auto reports = sweep_k(g, ks, o.quantize, o.seed, sample, fuzzy_from(o.fcl));
      std::ostringstream csv;
      write_csv(csv, reports);
      write_output(o.out_path, out, csv.str());
    } else if (info->parsed()) {
      std::ifstream file(o.model, std::ios::binary | std::ios::ate);
      if (!file) throw Error("cannot open " + o.model);
      const auto file_bytes = static_cast<std::uint64_t>(file.tellg());
      file.seekg(0);
      const ModelHeader h = read_header(file);
      out << "format FZG1\nversion " << h.version << "\nn " << h.n << "\nk " << h.k
          << "\ndirected " << (h.directed ? "true" : "false") << "\nquantized "
          << (h.quantized ? "true" : "false") << "\nfcl_bytes " << h.fcl_bytes << "\nbody_bytes "
          << model_body_bytes(h.n, h.k) << "\nfile_bytes " << file_bytes << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const QueryError& e) {
    err << "error: " << e.what() << '\n';
    return kQuery;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace fuzzmap::cli
