#pragma once

// Single-source betweenness contributions (Brandes) on top of edge_map.
// The forward sweep is a level-synchronous BFS that counts shortest paths by
// pulling over in-edges; the backward sweep pulls dependencies over out-edges
// (the transpose), deepest level first.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "segcsr/apps/common.hpp"
#include "segcsr/engine.hpp"
#include "segcsr/graph.hpp"
#include "segcsr/segmenting.hpp"

namespace segcsr::apps {

/// Counts paths into vertices not reached yet (dst_old = path count, 0 while
/// unvisited).
struct PathCountKernel {
  double identity() const { return 0.0; }
  bool update(double& acc, double src, double dst_old, double /*weight*/) const {
    if (dst_old != 0.0) return false;
    acc += src;
    return true;
  }
  void merge(double& acc, double partial) const { acc += partial; }
};

/// Sums (1 + dependency[w]) / paths[w] over children w, for parents flagged
/// through dst_old.
struct DependencyKernel {
  double identity() const { return 0.0; }
  bool update(double& acc, double src, double dst_old, double /*weight*/) const {
    if (dst_old == 0.0) return false;
    acc += src;
    return true;
  }
  void merge(double& acc, double partial) const { acc += partial; }
};

struct SourceSweep {
  std::vector<double> num_paths;
  std::vector<std::int32_t> level;  // -1 when unreachable
  std::vector<double> dependency;
};

struct BetweennessResult {
  std::vector<double> centrality;
  std::vector<IterationTimes> iterations;  // one entry per BFS level, both sweeps
};

class Betweenness {
 public:
  /// `forward` segments the in-edge CSR, `backward` the out-edge CSR of the
  /// same graph.
  Betweenness(const SegmentedGraph& forward, const SegmentedGraph& backward)
      : forward_(forward), backward_(backward), n_(forward.vertex_count) {
    if (backward.vertex_count != n_ || backward.edge_count != forward.edge_count) {
      throw Error("size-mismatch", "forward and backward segmentations describe different graphs");
    }
  }

  /// Runs both sweeps from `source` and adds the dependencies of every other
  /// vertex into `centrality`.
  SourceSweep accumulate(VertexId source, std::vector<double>& centrality,
                         std::vector<IterationTimes>* times = nullptr) {
    if (source >= n_) {
      throw Error("vertex-range", "source " + std::to_string(source) + " >= vertex count " + std::to_string(n_));
    }
    centrality.resize(n_, 0.0);
    SourceSweep sweep;
    sweep.num_paths.assign(n_, 0.0);
    sweep.level.assign(n_, -1);
    sweep.dependency.assign(n_, 0.0);
    sweep.num_paths[source] = 1.0;
    sweep.level[source] = 0;

    std::vector<Frontier> levels;
    levels.push_back(Frontier::of(n_, std::span<const VertexId>(&source, 1)));
    while (true) {
      IterationTimes t;
      const std::span<const double> paths(sweep.num_paths);
      auto reached = forward_map_(levels.back(), paths, paths, PathCountKernel{});
      t.add_edge_map(reached.times);
      Stopwatch clock;
      const auto depth = static_cast<std::int32_t>(levels.size());
      Frontier next = vertex_map(reached.next, [&](VertexId v) {
        sweep.num_paths[v] = reached.values[v];
        sweep.level[v] = depth;
        return true;
      });
      t.vertex_ms = clock.millis();
      if (times) times->push_back(t);
      if (next.empty()) break;
      levels.push_back(std::move(next));
    }

    std::vector<double> child_share(n_, 0.0);
    std::vector<double> is_parent(n_, 0.0);
    for (std::size_t d = levels.size() - 1; d-- > 0;) {
      IterationTimes t;
      Stopwatch clock;
      vertex_map(levels[d + 1], [&](VertexId w) {
        child_share[w] = (1.0 + sweep.dependency[w]) / sweep.num_paths[w];
        return false;
      });
      vertex_map(levels[d], [&](VertexId u) {
        is_parent[u] = 1.0;
        return false;
      });
      t.vertex_ms += clock.millis();

      auto shares = backward_map_(levels[d + 1], std::span<const double>(child_share),
                                  std::span<const double>(is_parent), DependencyKernel{});
      t.add_edge_map(shares.times);

      clock.restart();
      vertex_map(levels[d], [&](VertexId u) {
        sweep.dependency[u] = sweep.num_paths[u] * shares.values[u];
        is_parent[u] = 0.0;
        if (u != source) centrality[u] += sweep.dependency[u];
        return false;
      });
      t.vertex_ms += clock.millis();
      if (times) times->push_back(t);
    }
    return sweep;
  }

 private:
  const SegmentedGraph& forward_;
  const SegmentedGraph& backward_;
  std::size_t n_;
  EdgeMapper<double> forward_map_{forward_};
  EdgeMapper<double> backward_map_{backward_};
};

/// Sum of single-source contributions over `sources`.
inline BetweennessResult betweenness(const SegmentedGraph& forward, const SegmentedGraph& backward,
                                     std::span<const VertexId> sources) {
  Betweenness bc(forward, backward);
  BetweennessResult result;
  result.centrality.assign(forward.vertex_count, 0.0);
  for (VertexId s : sources) bc.accumulate(s, result.centrality, &result.iterations);
  return result;
}

/// Convenience overload: segments both orientations of `g` itself.
inline BetweennessResult betweenness(const CsrGraph& g, std::span<const VertexId> sources,
                                     std::size_t segment_vertices, std::size_t block_vertices) {
  const CsrGraph in = g.orientation == Orientation::kInEdges ? g : transpose(g);
  const CsrGraph out = transpose(in);
  const SegmentedGraph forward = segment_graph(in, segment_vertices, block_vertices);
  const SegmentedGraph backward = segment_graph(out, segment_vertices, block_vertices);
  return betweenness(forward, backward, sources);
}

}  // namespace segcsr::apps
