#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "segcsr/apps/common.hpp"
#include "segcsr/engine.hpp"
#include "segcsr/segmenting.hpp"

namespace segcsr::apps {

/// Minimum of active in-neighbor labels. An edge activates its destination
/// when it offers a label smaller than the destination's current one.
struct MinLabelKernel {
  VertexId identity() const { return std::numeric_limits<VertexId>::max(); }
  bool update(VertexId& acc, VertexId src, VertexId dst_old, double /*weight*/) const {
    acc = std::min(acc, src);
    return src < dst_old;
  }
  void merge(VertexId& acc, VertexId partial) const { acc = std::min(acc, partial); }
};

struct LabelResult {
  std::vector<VertexId> labels;
  std::vector<IterationTimes> iterations;
};

/// Min-label propagation. Starting from labels[v] = v, only vertices whose
/// label changed in the previous round push again, until nothing changes.
/// On a symmetric graph each label ends as the smallest id in its component.
inline LabelResult label_propagate(const SegmentedGraph& sg) {
  const std::size_t n = sg.vertex_count;
  LabelResult result;
  result.labels.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.labels[v] = static_cast<VertexId>(v);

  EdgeMapper<VertexId> edge_map(sg);
  Frontier active = Frontier::all(n);
  while (!active.empty()) {
    IterationTimes times;
    const std::span<const VertexId> labels(result.labels);
    auto mins = edge_map(active, labels, labels, MinLabelKernel{});
    times.add_edge_map(mins.times);

    Stopwatch clock;
    active = vertex_map(mins.next, [&](VertexId v) {
      if (mins.values[v] < result.labels[v]) {
        result.labels[v] = mins.values[v];
        return true;
      }
      return false;
    });
    times.vertex_ms = clock.millis();
    result.iterations.push_back(times);
  }
  return result;
}

}  // namespace segcsr::apps
