#pragma once

// Compressed sparse row graphs: construction from edge lists, transposition,
// structural validation, and a few edge-list post-passes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segcsr/parallel.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Raw directed edges. `weights` is either empty or parallel to `edges`.
struct EdgeList {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;

  bool weighted() const { return !weights.empty(); }
  std::size_t size() const { return edges.size(); }
};

enum class Orientation : std::uint8_t { kInEdges, kOutEdges };

inline Orientation flipped(Orientation o) {
  return o == Orientation::kInEdges ? Orientation::kOutEdges : Orientation::kInEdges;
}

/// CSR adjacency. With kInEdges, neighbors[offsets[v]..offsets[v+1]) are the
/// sources of edges into v (pull layout); with kOutEdges they are the
/// destinations of edges out of v. out_degree is always per source vertex.
struct CsrGraph {
  Orientation orientation = Orientation::kInEdges;
  std::vector<EdgeIndex> offsets{0};
  std::vector<VertexId> neighbors;
  std::vector<double> weights;
  std::vector<EdgeIndex> out_degree;

  std::size_t vertex_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t edge_count() const { return neighbors.size(); }
  bool weighted() const { return !weights.empty(); }

  EdgeIndex degree(std::size_t v) const { return offsets[v + 1] - offsets[v]; }

  std::span<const VertexId> adjacent(std::size_t v) const {
    return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
  }

  bool operator==(const CsrGraph&) const = default;
};

inline void check_edge_list(const EdgeList& el) {
  if (el.weighted() && el.weights.size() != el.edges.size()) {
    throw Error("weight-count", "edge list has " + std::to_string(el.edges.size()) +
                                    " edges but " + std::to_string(el.weights.size()) + " weights");
  }
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    if (e.src >= el.vertex_count || e.dst >= el.vertex_count) {
      throw Error("vertex-range", "edge " + std::to_string(i) + " (" + std::to_string(e.src) + "," +
                                      std::to_string(e.dst) + ") exceeds vertex count " +
                                      std::to_string(el.vertex_count));
    }
  }
}

namespace detail {

// Sorts every adjacency list ascending by (neighbor, weight).
inline void canonicalize_lists(CsrGraph& g) {
  const std::size_t n = g.vertex_count();
  if (!g.weighted()) {
    parallel_for_tasks(n, [&](std::size_t v) {
      std::sort(g.neighbors.begin() + static_cast<std::ptrdiff_t>(g.offsets[v]),
                g.neighbors.begin() + static_cast<std::ptrdiff_t>(g.offsets[v + 1]));
    });
    return;
  }
  parallel_for_tasks(n, [&](std::size_t v) {
    const auto lo = g.offsets[v];
    const auto hi = g.offsets[v + 1];
    if (hi - lo < 2) return;
    std::vector<std::pair<VertexId, double>> tmp;
    tmp.reserve(hi - lo);
    for (auto e = lo; e < hi; ++e) tmp.emplace_back(g.neighbors[e], g.weights[e]);
    std::sort(tmp.begin(), tmp.end());
    for (auto e = lo; e < hi; ++e) {
      g.neighbors[e] = tmp[e - lo].first;
      g.weights[e] = tmp[e - lo].second;
    }
  });
}

}  // namespace detail

/// Builds a canonical CSR: counting sort by the grouping endpoint, then each
/// adjacency list sorted ascending. Throws Error("vertex-range") naming the
/// offending edge index.
inline CsrGraph build_csr(const EdgeList& el, Orientation orientation = Orientation::kInEdges) {
  check_edge_list(el);
  const std::size_t n = el.vertex_count;
  const bool in = orientation == Orientation::kInEdges;

  CsrGraph g;
  g.orientation = orientation;
  g.offsets.assign(n + 1, 0);
  g.out_degree.assign(n, 0);
  for (const Edge& e : el.edges) {
    ++g.offsets[(in ? e.dst : e.src) + 1];
    ++g.out_degree[e.src];
  }
  std::inclusive_scan(g.offsets.begin(), g.offsets.end(), g.offsets.begin());

  g.neighbors.resize(el.edges.size());
  if (el.weighted()) g.weights.resize(el.edges.size());
  std::vector<EdgeIndex> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    const auto slot = cursor[in ? e.dst : e.src]++;
    g.neighbors[slot] = in ? e.src : e.dst;
    if (el.weighted()) g.weights[slot] = el.weights[i];
  }
  detail::canonicalize_lists(g);
  return g;
}

/// Flattens back to (src, dst[, weight]) triples in CSR order.
inline EdgeList to_edge_list(const CsrGraph& g) {
  EdgeList el;
  el.vertex_count = g.vertex_count();
  el.edges.reserve(g.edge_count());
  if (g.weighted()) el.weights = g.weights;
  const bool in = g.orientation == Orientation::kInEdges;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (VertexId u : g.adjacent(v)) {
      const auto self = static_cast<VertexId>(v);
      el.edges.push_back(in ? Edge{u, self} : Edge{self, u});
    }
  }
  return el;
}

/// Same edges, opposite orientation.
inline CsrGraph transpose(const CsrGraph& g) {
  return build_csr(to_edge_list(g), flipped(g.orientation));
}

struct ValidationReport {
  bool ok = true;
  std::string violation;  // empty when ok
  std::string detail;

  explicit operator bool() const { return ok; }
};

/// Checks every CSR invariant and reports the first violation.
inline ValidationReport validate(const CsrGraph& g) {
  auto fail = [](std::string what, std::string detail) {
    return ValidationReport{false, std::move(what), std::move(detail)};
  };
  if (g.offsets.empty()) return fail("offset-size", "offsets array is empty");
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.neighbors.size();
  if (g.offsets[0] != 0) return fail("offset-origin", "offsets[0] = " + std::to_string(g.offsets[0]));
  for (std::size_t v = 0; v < n; ++v) {
    if (g.offsets[v + 1] < g.offsets[v]) {
      return fail("offset-monotonic", "offsets[" + std::to_string(v + 1) + "] < offsets[" +
                                          std::to_string(v) + "]");
    }
  }
  if (g.offsets[n] != m) {
    return fail("offset-terminal", "offsets[" + std::to_string(n) + "] = " + std::to_string(g.offsets[n]) +
                                       ", edge count " + std::to_string(m));
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (g.neighbors[e] >= n) {
      return fail("neighbor-range", "neighbors[" + std::to_string(e) + "] = " + std::to_string(g.neighbors[e]));
    }
  }
  if (g.weighted() && g.weights.size() != m) {
    return fail("weight-count", std::to_string(g.weights.size()) + " weights for " + std::to_string(m) + " edges");
  }
  if (g.out_degree.size() != n) {
    return fail("degree-count", std::to_string(g.out_degree.size()) + " degrees for " + std::to_string(n) + " vertices");
  }
  std::vector<EdgeIndex> expected(n, 0);
  if (g.orientation == Orientation::kInEdges) {
    for (VertexId u : g.neighbors) ++expected[u];
  } else {
    for (std::size_t v = 0; v < n; ++v) expected[v] = g.degree(v);
  }
  const EdgeIndex total = std::accumulate(g.out_degree.begin(), g.out_degree.end(), EdgeIndex{0});
  if (total != m) return fail("degree-sum", "out-degrees sum to " + std::to_string(total));
  for (std::size_t v = 0; v < n; ++v) {
    if (expected[v] != g.out_degree[v]) {
      return fail("degree-mismatch", "out_degree[" + std::to_string(v) + "] = " + std::to_string(g.out_degree[v]) +
                                         ", adjacency implies " + std::to_string(expected[v]));
    }
  }
  return {};
}

/// Drops self-loops and/or repeated (src, dst) pairs. For duplicates the
/// first occurrence (and its weight) is kept. Order of survivors is preserved.
inline EdgeList simplify(const EdgeList& el, bool drop_self_loops, bool drop_duplicates) {
  std::vector<bool> duplicate(el.edges.size(), false);
  if (drop_duplicates) {
    std::vector<std::size_t> order(el.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return el.edges[a] < el.edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (el.edges[order[i]] == el.edges[order[i - 1]]) duplicate[order[i]] = true;
    }
  }
  EdgeList out;
  out.vertex_count = el.vertex_count;
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    if (duplicate[i]) continue;
    if (drop_self_loops && el.edges[i].src == el.edges[i].dst) continue;
    out.edges.push_back(el.edges[i]);
    if (el.weighted()) out.weights.push_back(el.weights[i]);
  }
  return out;
}

/// Appends the reverse of every edge (weights copied), making the graph
/// symmetric. Self-loops are not doubled.
inline EdgeList symmetrize(const EdgeList& el) {
  EdgeList out = el;
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    const Edge& e = el.edges[i];
    if (e.src == e.dst) continue;
    out.edges.push_back({e.dst, e.src});
    if (el.weighted()) out.weights.push_back(el.weights[i]);
  }
  return out;
}

}  // namespace segcsr
