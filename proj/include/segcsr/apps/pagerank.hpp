#pragma once

#include <span>
#include <vector>

#include "segcsr/apps/common.hpp"
#include "segcsr/engine.hpp"
#include "segcsr/parallel.hpp"
#include "segcsr/segmenting.hpp"

namespace segcsr::apps {

/// Sums source contributions.
struct SumKernel {
  double identity() const { return 0.0; }
  bool update(double& acc, double src, double /*dst_old*/, double /*weight*/) const {
    acc += src;
    return true;
  }
  void merge(double& acc, double partial) const { acc += partial; }
};

struct PageRankResult {
  std::vector<double> ranks;
  std::vector<IterationTimes> iterations;
};

/// Pull PageRank without dangling-mass redistribution. Every rank starts at
/// 1; each round computes rank[v] = teleport + damping * sum of
/// rank[u] / outDegree[u] over in-neighbors u. Vertices with no out-edges
/// contribute nothing.
inline PageRankResult pagerank(const SegmentedGraph& sg, int iterations, double damping = 0.85,
                               double teleport = 0.15) {
  const std::size_t n = sg.vertex_count;
  PageRankResult result;
  result.ranks.assign(n, 1.0);
  std::vector<double> contrib(n);
  auto refresh_contrib = [&](std::size_t v) {
    contrib[v] = sg.out_degree[v] == 0 ? 0.0 : result.ranks[v] / static_cast<double>(sg.out_degree[v]);
  };
  parallel_for_static(n, refresh_contrib);

  EdgeMapper<double> edge_map(sg);
  const Frontier everyone = Frontier::all(n);
  for (int it = 0; it < iterations; ++it) {
    IterationTimes times;
    auto sums = edge_map(everyone, std::span<const double>(contrib), std::span<const double>(contrib), SumKernel{});
    times.add_edge_map(sums.times);

    Stopwatch clock;
    vertex_map(everyone, [&](VertexId v) {
      result.ranks[v] = teleport + damping * sums.values[v];
      refresh_contrib(v);
      return true;
    });
    times.vertex_ms = clock.millis();
    result.iterations.push_back(times);
  }
  return result;
}

}  // namespace segcsr::apps
