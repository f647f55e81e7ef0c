#pragma once

// CSR segmenting. Source vertices are split into contiguous segments of N
// ids; subgraph i holds every edge whose source lies in segment i, grouped by
// destination. Each subgraph keeps a sorted local->global destination map
// (idx_map) and, per merge block of B global ids, the local index range whose
// destinations fall in that block.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "segcsr/graph.hpp"
#include "segcsr/parallel.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

inline constexpr std::size_t kDefaultLlcBytes = std::size_t{8} << 20;
inline constexpr std::size_t kDefaultBlockBytes = std::size_t{16} << 10;
inline constexpr EdgeIndex kDefaultGrainEdges = 4096;

/// Number of vertex values of `bytes_per_value` that fit in `budget_bytes`
/// (at least one).
inline std::size_t vertices_for_bytes(std::size_t budget_bytes, std::size_t bytes_per_value) {
  return std::max<std::size_t>(1, budget_bytes / std::max<std::size_t>(1, bytes_per_value));
}

/// Splits [0, n) into consecutive ranges holding at most `grain_edges` edges
/// each. A vertex whose own degree exceeds the grain gets a range to itself.
inline std::vector<VertexRange> chunk_by_edges(std::span<const EdgeIndex> offsets, EdgeIndex grain_edges) {
  std::vector<VertexRange> ranges;
  if (offsets.size() < 2) return ranges;
  const std::size_t n = offsets.size() - 1;
  const EdgeIndex grain = std::max<EdgeIndex>(1, grain_edges);
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && offsets[end + 1] - offsets[begin] <= grain) ++end;
    ranges.push_back({begin, end});
    begin = end;
  }
  return ranges;
}

struct Subgraph {
  std::size_t segment_id = 0;
  VertexRange sources;                 // global source ids [begin, end)
  std::vector<EdgeIndex> offsets{0};   // local CSR over destinations
  std::vector<VertexId> neighbors;     // global source ids, all within `sources`
  std::vector<double> weights;         // empty for unweighted graphs
  std::vector<VertexId> idx_map;       // local destination -> global id, strictly ascending
  std::vector<std::size_t> block_starts;
  std::vector<std::size_t> block_ends;
  std::vector<VertexRange> chunks;     // work ranges over local destinations

  std::size_t dest_count() const { return idx_map.size(); }
  std::size_t edge_count() const { return neighbors.size(); }
};

struct SegmentedGraph {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t segment_vertices = 1;  // N
  std::size_t block_vertices = 1;    // B
  std::size_t block_count = 0;
  bool weighted = false;
  std::vector<EdgeIndex> out_degree;  // copied from the base graph
  std::vector<Subgraph> subgraphs;

  std::size_t segment_count() const { return subgraphs.size(); }

  /// Sum of destCount over subgraphs: the number of intermediate slots.
  std::size_t destination_slots() const {
    std::size_t total = 0;
    for (const auto& s : subgraphs) total += s.dest_count();
    return total;
  }
};

/// Builds ceil(V / N) subgraphs from a pull-layout CSR. The adjacency lists
/// are read as "pull from" lists, so a kOutEdges graph segments the reversed
/// graph. Within a subgraph, destinations and their edges keep base-CSR order.
inline SegmentedGraph segment_graph(const CsrGraph& g, std::size_t segment_vertices, std::size_t block_vertices,
                                    EdgeIndex grain_edges = kDefaultGrainEdges) {
  if (segment_vertices == 0) throw Error("param-range", "segment size must be >= 1");
  if (block_vertices == 0) throw Error("param-range", "block size must be >= 1");
  const std::size_t n = g.vertex_count();
  const std::size_t N = segment_vertices;
  const std::size_t B = block_vertices;
  const std::size_t k = (n + N - 1) / N;

  SegmentedGraph sg;
  sg.vertex_count = n;
  sg.edge_count = g.edge_count();
  sg.segment_vertices = N;
  sg.block_vertices = B;
  sg.block_count = (n + B - 1) / B;
  sg.weighted = g.weighted();
  sg.out_degree = g.out_degree;
  sg.subgraphs.resize(k);

  // Pass 1: exact sizes. `last_dest[s]` remembers the last destination that
  // segment s saw, so each (segment, destination) pair is counted once.
  std::vector<std::size_t> edges_per(k, 0), dests_per(k, 0);
  std::vector<std::size_t> last_dest(k, SIZE_MAX);
  for (std::size_t v = 0; v < n; ++v) {
    for (VertexId u : g.adjacent(v)) {
      const std::size_t s = u / N;
      ++edges_per[s];
      if (last_dest[s] != v) {
        last_dest[s] = v;
        ++dests_per[s];
      }
    }
  }
  for (std::size_t s = 0; s < k; ++s) {
    Subgraph& sub = sg.subgraphs[s];
    sub.segment_id = s;
    sub.sources = {s * N, std::min(n, (s + 1) * N)};
    sub.offsets.reserve(dests_per[s] + 1);
    sub.idx_map.reserve(dests_per[s]);
    sub.neighbors.reserve(edges_per[s]);
    if (g.weighted()) sub.weights.reserve(edges_per[s]);
  }

  // Pass 2: destinations in ascending order, so each idx_map comes out sorted
  // and edges stay in base-CSR order.
  for (std::size_t v = 0; v < n; ++v) {
    for (EdgeIndex e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const VertexId u = g.neighbors[e];
      Subgraph& sub = sg.subgraphs[u / N];
      if (sub.idx_map.empty() || sub.idx_map.back() != v) {
        sub.idx_map.push_back(static_cast<VertexId>(v));
        sub.offsets.push_back(sub.neighbors.size());
      }
      sub.neighbors.push_back(u);
      if (g.weighted()) sub.weights.push_back(g.weights[e]);
      sub.offsets.back() = sub.neighbors.size();
    }
  }

  // Per-subgraph derived indices are independent.
  parallel_for_tasks(k, [&](std::size_t s) {
    Subgraph& sub = sg.subgraphs[s];
    sub.block_starts.resize(sg.block_count);
    sub.block_ends.resize(sg.block_count);
    std::size_t cursor = 0;
    for (std::size_t b = 0; b < sg.block_count; ++b) {
      sub.block_starts[b] = cursor;
      const std::size_t limit = (b + 1) * B;
      while (cursor < sub.idx_map.size() && sub.idx_map[cursor] < limit) ++cursor;
      sub.block_ends[b] = cursor;
    }
    sub.chunks = chunk_by_edges(sub.offsets, grain_edges);
  });
  return sg;
}

/// q = (sum of destCount over subgraphs) / V.
inline double expansion_factor(const SegmentedGraph& sg) {
  if (sg.vertex_count == 0) return 0.0;
  return static_cast<double>(sg.destination_slots()) / static_cast<double>(sg.vertex_count);
}

/// Vertex-value transfers between cache and memory for one pass, in units of
/// one vertex value. qV is the exact slot count.
struct TrafficEstimate {
  std::uint64_t segment_phase = 0;  // E + qV + V
  std::uint64_t merge_phase = 0;    // qV + V
  std::uint64_t total = 0;          // E + 2qV + V
};

inline TrafficEstimate estimate_traffic(std::uint64_t edges, std::uint64_t slots, std::uint64_t vertices) {
  TrafficEstimate t;
  t.segment_phase = edges + slots + vertices;
  t.merge_phase = slots + vertices;
  t.total = edges + 2 * slots + vertices;
  return t;
}

inline TrafficEstimate estimate_traffic(const SegmentedGraph& sg) {
  return estimate_traffic(sg.edge_count, sg.destination_slots(), sg.vertex_count);
}

/// Sum of destCount that segment_graph(g, N, .) would produce, without
/// materializing the subgraphs.
inline std::size_t count_destination_slots(const CsrGraph& g, std::size_t segment_vertices) {
  const std::size_t n = g.vertex_count();
  const std::size_t N = std::max<std::size_t>(1, segment_vertices);
  const std::size_t k = (n + N - 1) / N;
  std::vector<std::size_t> last_dest(k, SIZE_MAX);
  std::size_t slots = 0;
  for (std::size_t v = 0; v < n; ++v) {
    for (VertexId u : g.adjacent(v)) {
      const std::size_t s = u / N;
      if (last_dest[s] != v) {
        last_dest[s] = v;
        ++slots;
      }
    }
  }
  return slots;
}

struct ExpansionPoint {
  std::size_t requested_segments = 0;  // k as asked for
  std::size_t segment_vertices = 0;    // N = ceil(V / k)
  std::size_t segments = 0;            // actual ceil(V / N)
  std::size_t destination_slots = 0;
  double q = 0.0;
};

/// q for each requested segment count k, with N = ceil(V / k).
inline std::vector<ExpansionPoint> expansion_sweep(const CsrGraph& g, std::span<const std::size_t> segment_counts) {
  std::vector<ExpansionPoint> out;
  const std::size_t n = g.vertex_count();
  for (std::size_t k : segment_counts) {
    ExpansionPoint p;
    p.requested_segments = k;
    p.segment_vertices = std::max<std::size_t>(1, (n + std::max<std::size_t>(1, k) - 1) / std::max<std::size_t>(1, k));
    p.segments = (n + p.segment_vertices - 1) / p.segment_vertices;
    p.destination_slots = count_destination_slots(g, p.segment_vertices);
    p.q = n == 0 ? 0.0 : static_cast<double>(p.destination_slots) / static_cast<double>(n);
    out.push_back(p);
  }
  return out;
}

}  // namespace segcsr
