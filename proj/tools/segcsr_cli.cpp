// segcsr: generate, convert, validate, run and analyze segmented graphs.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "segcsr/segcsr.hpp"

namespace {

using namespace segcsr;
using json = nlohmann::ordered_json;

enum class Format { kAuto, kText, kBinary };

Format format_for_path(const std::string& path) {
  for (const char* ext : {".txt", ".el", ".edges", ".tsv"}) {
    const std::string e(ext);
    if (path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0) return Format::kText;
  }
  return Format::kBinary;
}

EdgeList read_text(const std::string& path, std::optional<std::size_t> vertices) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open '" + path + "'");
  return parse_edge_list(in, vertices);
}

/// Loads a graph as a pull-layout CSR, sniffing the binary magic.
CsrGraph load_graph(const std::string& path, std::optional<std::size_t> vertices = std::nullopt) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw Error("io", "cannot open '" + path + "'");
  CsrGraph g = looks_binary(probe) ? read_binary(probe) : build_csr(read_text(path, vertices));
  if (g.orientation == Orientation::kOutEdges) g = transpose(g);
  return g;
}

std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

json traffic_json(const TrafficEstimate& t) {
  return json{{"segmentPhase", t.segment_phase}, {"mergePhase", t.merge_phase}, {"total", t.total}};
}

void apply_workers(std::optional<int> workers) {
  if (workers) {
    set_worker_count(*workers);
  } else if (const char* env = std::getenv("SEGCSR_WORKERS")) {
    set_worker_count(std::atoi(env));
  }
}

Permutation make_ordering(const std::string& ordering, const CsrGraph& g, std::uint64_t seed) {
  if (ordering == "original") return Permutation::identity(g.vertex_count());
  if (ordering == "random") return random_permutation(g.vertex_count(), seed);
  if (ordering == "clustered") return frequency_cluster(g);
  throw Error("param-range", "unknown ordering '" + ordering + "'");
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::vector<double> rmat;
  std::uint64_t seed = 1;
  std::string out;
  bool noise = false;
  bool symmetric = false;
  bool simple = false;
  bool ratings = false;
};

int cmd_generate(const GenerateArgs& a) {
  RmatParams p;
  p.scale = static_cast<int>(a.rmat.at(0));
  p.edge_factor = static_cast<int>(a.rmat.at(1));
  if (a.rmat.size() == 5) {
    p.a = a.rmat[2];
    p.b = a.rmat[3];
    p.c = a.rmat[4];
  } else if (a.rmat.size() != 2) {
    throw Error("param-range", "--rmat takes SCALE EDGEFACTOR [A B C]");
  }
  p.seed = a.seed;
  p.noise = a.noise;
  EdgeList el = rmat_generate(p);
  if (a.simple) el = simplify(el, true, true);
  if (a.symmetric) el = symmetrize(el);
  if (a.ratings) attach_ratings(el, a.seed ^ 0x9e3779b97f4a7c15ull);
  if (format_for_path(a.out) == Format::kText) {
    std::ofstream out(a.out);
    if (!out) throw Error("io", "cannot open '" + a.out + "' for writing");
    write_edge_list(out, el);
  } else {
    write_binary(a.out, build_csr(el));
  }
  std::cout << el.edges.size() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// convert / validate

struct ConvertArgs {
  std::string in;
  std::string out;
  std::string to = "auto";
  std::optional<std::size_t> vertices;
};

int cmd_convert(const ConvertArgs& a) {
  const CsrGraph g = load_graph(a.in, a.vertices);
  Format target = a.to == "text" ? Format::kText : a.to == "binary" ? Format::kBinary : format_for_path(a.out);
  if (target == Format::kText) {
    std::ofstream out(a.out);
    if (!out) throw Error("io", "cannot open '" + a.out + "' for writing");
    write_edge_list(out, to_edge_list(g));
  } else {
    write_binary(a.out, g);
  }
  std::cout << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  CsrGraph g;
  try {
    g = load_graph(path);
  } catch (const Error& e) {
    std::cout << "invalid: " << e.what() << '\n';
    return 1;
  }
  const ValidationReport report = validate(g);
  if (!report) {
    std::cout << "invalid: " << report.violation << ": " << report.detail << '\n';
    return 1;
  }
  std::cout << "ok: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  std::string graph;
  std::string app = "pagerank";
  int iters = 20;
  std::size_t llc_bytes = kDefaultLlcBytes;
  std::size_t block_bytes = kDefaultBlockBytes;
  std::string ordering = "original";
  std::optional<int> workers;
  bool json_out = false;
  std::uint64_t seed = 1;
  std::size_t sources = 12;
  std::size_t factors = 8;
  std::string dump_permutation;
};

int cmd_run(const RunArgs& a) {
  apply_workers(a.workers);
  static const std::vector<std::string> kApps{"pagerank", "cc", "cf", "bc"};
  if (std::find(kApps.begin(), kApps.end(), a.app) == kApps.end()) {
    throw Error("param-range", "unknown app '" + a.app + "'");
  }

  Stopwatch clock;
  const CsrGraph base = load_graph(a.graph);
  const double build_ms = clock.millis();

  clock.restart();
  const Permutation perm = make_ordering(a.ordering, base, a.seed);
  const CsrGraph g = perm.is_identity() ? base : apply_permutation(base, perm);
  const double cluster_ms = clock.millis();
  if (!a.dump_permutation.empty()) {
    std::ofstream out(a.dump_permutation);
    write_permutation(out, perm);
  }

  std::size_t value_bytes = sizeof(double);
  if (a.app == "cc") value_bytes = sizeof(VertexId);
  if (a.app == "cf") value_bytes = sizeof(double) * a.factors;
  const std::size_t seg_vertices = vertices_for_bytes(a.llc_bytes, value_bytes);
  const std::size_t block_vertices = vertices_for_bytes(a.block_bytes, value_bytes);

  clock.restart();
  const SegmentedGraph sg = segment_graph(g, seg_vertices, block_vertices);
  std::optional<SegmentedGraph> backward;
  double transpose_ms = 0;
  if (a.app == "bc") {
    Stopwatch t;
    const CsrGraph out_edges = transpose(g);
    transpose_ms = t.millis();
    backward = segment_graph(out_edges, seg_vertices, block_vertices);
  }
  const double segment_ms = clock.millis() - transpose_ms;

  std::vector<apps::IterationTimes> iterations;
  Digest digest;
  if (a.app == "pagerank") {
    auto r = apps::pagerank(sg, a.iters);
    iterations = r.iterations;
    digest.add(std::span<const double>(to_old_order<double>(r.ranks, perm)));
  } else if (a.app == "cc") {
    auto r = apps::label_propagate(sg);
    iterations = r.iterations;
    // Component ids in original numbering: each vertex gets the smallest
    // original id in its component.
    const auto back = to_old_order<VertexId>(r.labels, perm);
    std::map<VertexId, VertexId> smallest;
    for (VertexId v = 0; v < back.size(); ++v) smallest.emplace(back[v], v);
    std::vector<VertexId> canonical(back.size());
    for (VertexId v = 0; v < back.size(); ++v) canonical[v] = smallest[back[v]];
    digest.add(std::span<const VertexId>(canonical));
  } else if (a.app == "cf") {
    apps::CfParams params;
    params.iterations = a.iters;
    params.factors = a.factors;
    params.seed = a.seed;
    // Start from factors seeded in original order so every ordering trains
    // the same model.
    auto start = apps::initial_factors(g.vertex_count(), a.factors, a.seed);
    auto r = apps::collaborative_filter(sg, params, to_new_order<apps::Factors>(start, perm));
    iterations = r.iterations;
    for (const auto& x : to_old_order<apps::Factors>(r.factors, perm)) digest.add(std::span<const double>(x));
  } else {
    std::vector<VertexId> sources;
    const std::size_t n = g.vertex_count();
    std::mt19937_64 gen(a.seed);
    for (std::size_t i = 0; i < std::min(a.sources, n); ++i) sources.push_back(perm.to_new(gen() % n));
    auto r = apps::betweenness(sg, *backward, sources);
    iterations = r.iterations;
    digest.add(std::span<const double>(to_old_order<double>(r.centrality, perm)));
  }

  json report;
  report["graph"] = a.graph;
  report["app"] = a.app;
  report["ordering"] = a.ordering;
  report["segmentVertices"] = sg.segment_vertices;
  report["segmentCount"] = sg.segment_count();
  report["blockVertices"] = sg.block_vertices;
  report["workers"] = worker_count();
  report["vertices"] = sg.vertex_count;
  report["edges"] = sg.edge_count;
  json per = json::array();
  double seg_total = 0, merge_total = 0, vertex_total = 0;
  for (const auto& t : iterations) {
    per.push_back({{"segmentMillis", t.segment_ms}, {"mergeMillis", t.merge_ms}, {"vertexMillis", t.vertex_ms}});
    seg_total += t.segment_ms;
    merge_total += t.merge_ms;
    vertex_total += t.vertex_ms;
  }
  report["perIteration"] = per;
  report["preprocess"] = {{"buildCsrMillis", build_ms + transpose_ms}, {"clusterMillis", cluster_ms}, {"segmentMillis", segment_ms}};
  report["q"] = expansion_factor(sg);
  report["trafficEstimate"] = traffic_json(estimate_traffic(sg));
  report["resultDigest"] = hex64(digest.value());

  if (a.json_out) {
    std::cout << report.dump() << '\n';
  } else {
    const double total = seg_total + merge_total + vertex_total;
    std::cout << std::fixed << std::setprecision(3);
    std::cout << "app            " << a.app << " (" << a.ordering << " order)\n"
              << "graph          " << a.graph << ": " << sg.vertex_count << " vertices, " << sg.edge_count << " edges\n"
              << "segments       k=" << sg.segment_count() << "  N=" << sg.segment_vertices << "  B=" << sg.block_vertices
              << "  q=" << expansion_factor(sg) << '\n'
              << "workers        " << worker_count() << '\n'
              << "preprocess ms  build " << build_ms + transpose_ms << "  cluster " << cluster_ms << "  segment " << segment_ms << '\n'
              << "rounds         " << iterations.size() << '\n'
              << "phase ms       segment " << seg_total << "  merge " << merge_total << "  vertex " << vertex_total << '\n';
    if (total > 0) std::cout << "merge share    " << 100.0 * merge_total / total << "%\n";
    std::cout << "digest         " << hex64(digest.value()) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string graph;
  std::string sweep = "1,2,4,8,16,32";
  std::string orderings = "all";
  std::uint64_t seed = 1;
  bool json_out = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_analyze(const AnalyzeArgs& a) {
  const CsrGraph base = load_graph(a.graph);
  std::vector<std::size_t> ks;
  for (const auto& tok : split(a.sweep)) {
    std::size_t k = 0;
    try {
      k = std::stoul(tok);
    } catch (const std::exception&) {
      throw Error("param-range", "bad segment count '" + tok + "'");
    }
    if (k == 0) throw Error("param-range", "segment counts must be >= 1");
    ks.push_back(k);
  }
  std::vector<std::string> orderings = a.orderings == "all" ? std::vector<std::string>{"original", "random", "clustered"}
                                                             : split(a.orderings);
  const double avg_degree = base.vertex_count() == 0 ? 0.0
                                                     : static_cast<double>(base.edge_count()) / static_cast<double>(base.vertex_count());
  if (!a.json_out) {
    std::cout << std::left << std::setw(11) << "ordering" << std::setw(7) << "k" << std::setw(12) << "N" << std::setw(12)
              << "q" << "traffic(E+2qV+V)\n";
  }
  for (const auto& name : orderings) {
    const Permutation perm = make_ordering(name, base, a.seed);
    const CsrGraph g = perm.is_identity() ? base : apply_permutation(base, perm);
    for (const auto& row : expansion_sweep(g, ks)) {
      const TrafficEstimate t = estimate_traffic(g.edge_count(), row.destination_slots, g.vertex_count());
      if (a.json_out) {
        json j;
        j["ordering"] = name;
        j["k"] = row.requested_segments;
        j["segments"] = row.segments;
        j["segmentVertices"] = row.segment_vertices;
        j["q"] = row.q;
        j["qUpperBound"] = std::min(static_cast<double>(row.segments), avg_degree);
        j["destinationSlots"] = row.destination_slots;
        j["trafficEstimate"] = traffic_json(t);
        std::cout << j.dump() << '\n';
      } else {
        std::cout << std::left << std::setw(11) << name << std::setw(7) << row.requested_segments << std::setw(12)
                  << row.segment_vertices << std::setw(12) << std::setprecision(5) << row.q << t.total << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-segmented CSR graph engine"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write an R-MAT graph");
  generate->add_option("--rmat", gen.rmat, "SCALE EDGEFACTOR [A B C]")->required()->expected(2, 5);
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--out", gen.out, "Output path (.txt/.el for text, otherwise binary)")->required();
  generate->add_flag("--noise", gen.noise, "Perturb quadrant probabilities per level");
  generate->add_flag("--symmetrize", gen.symmetric, "Add the reverse of every edge");
  generate->add_flag("--simplify", gen.simple, "Drop self-loops and duplicate edges");
  generate->add_flag("--ratings", gen.ratings, "Attach seeded ratings in 1..5 as weights");

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert between text and binary graph formats");
  convert->add_option("--in", conv.in, "Input graph (format sniffed)")->required();
  convert->add_option("--out", conv.out, "Output path")->required();
  convert->add_option("--to", conv.to, "Output format")->check(CLI::IsMember({"auto", "text", "binary"}));
  convert->add_option("--vertices", conv.vertices, "Vertex count for text input");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a graph file's CSR invariants");
  validate_cmd->add_option("--graph", validate_path, "Graph file")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an application on a segmented graph");
  run_cmd->add_option("--graph", run.graph, "Graph file")->required();
  run_cmd->add_option("--app", run.app, "pagerank | cc | cf | bc");
  run_cmd->add_option("--iters", run.iters, "Iterations (pagerank, cf)");
  run_cmd->add_option("--llc-bytes", run.llc_bytes, "Segment budget in bytes");
  run_cmd->add_option("--block-bytes", run.block_bytes, "Merge block budget in bytes");
  run_cmd->add_option("--ordering", run.ordering, "original | random | clustered")
      ->check(CLI::IsMember({"original", "random", "clustered"}));
  run_cmd->add_option("--workers", run.workers, "Worker threads (default: SEGCSR_WORKERS or all cores)");
  run_cmd->add_flag("--json", run.json_out, "Emit one JSON object");
  run_cmd->add_option("--seed", run.seed, "Seed for random ordering, bc sources, cf factors");
  run_cmd->add_option("--sources", run.sources, "bc source count");
  run_cmd->add_option("--factors", run.factors, "cf latent dimension");
  run_cmd->add_option("--dump-permutation", run.dump_permutation, "Write the vertex ordering (new -> old) here");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Expansion factor and traffic sweep");
  analyze->add_option("--graph", an.graph, "Graph file")->required();
  analyze->add_option("--sweep-k", an.sweep, "Comma-separated segment counts");
  analyze->add_option("--orderings", an.orderings, "all or comma-separated list");
  analyze->add_option("--seed", an.seed, "Seed for the random ordering");
  analyze->add_flag("--json", an.json_out, "Emit JSON lines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (convert->parsed()) return cmd_convert(conv);
    if (validate_cmd->parsed()) return cmd_validate(validate_path);
    if (run_cmd->parsed()) return cmd_run(run);
    if (analyze->parsed()) return cmd_analyze(an);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
