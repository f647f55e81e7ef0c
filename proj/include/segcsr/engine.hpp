#pragma once

// Pull-mode EdgeMap over a segmented graph, plus VertexMap and frontiers.
//
// edge_map runs in two phases:
//   1. Segment processing. Subgraphs are visited one at a time in ascending
//      segment order; inside a subgraph, local destinations are split into
//      edge-balanced chunks and processed in parallel. Each destination's
//      intermediate slot is folded by exactly one worker, in CSR edge order.
//   2. Cache-aware merge. Blocks of B global ids are processed in parallel;
//      a block visits every subgraph in ascending order and merges that
//      subgraph's slots for the block into the dense output.
// Both fold orders are fixed, so the result does not depend on worker count.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segcsr/parallel.hpp"
#include "segcsr/segmenting.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

/// Dense active-vertex mask with a population count.
class Frontier {
 public:
  Frontier() = default;
  explicit Frontier(std::size_t n) : mask_(n, 0) {}

  static Frontier all(std::size_t n) {
    Frontier f;
    f.mask_.assign(n, 1);
    f.active_ = n;
    return f;
  }

  static Frontier none(std::size_t n) { return Frontier(n); }

  static Frontier of(std::size_t n, std::span<const VertexId> vertices) {
    Frontier f(n);
    for (VertexId v : vertices) f.insert(v);
    return f;
  }

  std::size_t size() const { return mask_.size(); }
  std::size_t count() const { return active_; }
  bool empty() const { return active_ == 0; }
  bool full() const { return active_ == mask_.size(); }
  bool contains(std::size_t v) const { return mask_[v] != 0; }

  void insert(std::size_t v) {
    if (!mask_[v]) {
      mask_[v] = 1;
      ++active_;
    }
  }

  std::span<const std::uint8_t> mask() const { return mask_; }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(active_);
    for (std::size_t v = 0; v < mask_.size(); ++v) {
      if (mask_[v]) out.push_back(static_cast<VertexId>(v));
    }
    return out;
  }

  bool operator==(const Frontier& o) const { return mask_ == o.mask_; }

 private:
  template <class T>
  friend class EdgeMapper;
  template <class F>
  friend Frontier vertex_map(const Frontier&, F&&);

  void recount() {
    active_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
  }

  std::vector<std::uint8_t> mask_;
  std::size_t active_ = 0;
};

/// A kernel folds edge contributions into a per-destination accumulator.
///   identity()                     neutral accumulator value
///   update(acc, src, dst_old, w)   folds one edge into acc; returning true
///                                  marks the destination for the next frontier
///   merge(acc, partial)            combines partial results; associative and
///                                  commutative, with identity as its unit
template <class K, class T>
concept EdgeKernel = requires(const K& k, T& acc, const T& value, double weight) {
  { k.identity() } -> std::convertible_to<T>;
  { k.update(acc, value, value, weight) } -> std::convertible_to<bool>;
  k.merge(acc, value);
};

/// Hooks for instrumentation; the default does nothing.
struct NullObserver {
  void buffer_write(std::size_t /*segment*/, std::size_t /*local*/) const {}
  void output_write(std::size_t /*vertex*/) const {}
};

struct PhaseTimes {
  double segment_ms = 0;
  double merge_ms = 0;
};

template <class T>
struct EdgeMapResult {
  std::vector<T> values;
  Frontier next;
  PhaseTimes times;
};

/// Runs edge_map repeatedly over one segmented graph, keeping the
/// per-subgraph intermediate buffers alive between calls.
template <class T>
class EdgeMapper {
 public:
  explicit EdgeMapper(const SegmentedGraph& sg) : sg_(&sg), buffers_(sg.segment_count()) {}

  const SegmentedGraph& graph() const { return *sg_; }

  template <EdgeKernel<T> Kernel, class Observer = NullObserver>
  EdgeMapResult<T> operator()(const Frontier& frontier, std::span<const T> src, std::span<const T> dst_old,
                              const Kernel& kernel, Observer&& observer = Observer{}) {
    const SegmentedGraph& sg = *sg_;
    const std::size_t n = sg.vertex_count;
    if (frontier.size() != n || src.size() != n || dst_old.size() != n) {
      throw Error("size-mismatch", "edge_map over " + std::to_string(n) + " vertices got frontier " +
                                       std::to_string(frontier.size()) + ", src " + std::to_string(src.size()) +
                                       ", dst " + std::to_string(dst_old.size()));
    }
    EdgeMapResult<T> result;
    result.next = Frontier(n);
    const T identity = kernel.identity();

    Stopwatch clock;
    if (!frontier.empty()) {
      const bool all_active = frontier.full();
      const std::uint8_t* active = frontier.mask().data();
      std::uint8_t* next_mask = result.next.mask_.data();
      for (std::size_t s = 0; s < sg.segment_count(); ++s) {
        const Subgraph& sub = sg.subgraphs[s];
        std::vector<T>& buf = buffers_[s];
        buf.resize(sub.dest_count());
        parallel_for_tasks(sub.chunks.size(), [&](std::size_t c) {
          for (std::size_t l = sub.chunks[c].begin; l < sub.chunks[c].end; ++l) {
            const VertexId v = sub.idx_map[l];
            T& acc = buf[l];
            acc = identity;
            bool activate = false;
            for (EdgeIndex e = sub.offsets[l]; e < sub.offsets[l + 1]; ++e) {
              const VertexId u = sub.neighbors[e];
              if (!all_active && !active[u]) continue;
              const double w = sub.weights.empty() ? 1.0 : sub.weights[e];
              activate |= static_cast<bool>(kernel.update(acc, src[u], dst_old[v], w));
            }
            observer.buffer_write(s, l);
            // Only this worker touches v within this subgraph, and subgraphs
            // run one after another, so a plain store is race-free.
            if (activate) next_mask[v] = 1;
          }
        });
      }
    }
    result.times.segment_ms = clock.millis();

    clock.restart();
    result.values.assign(n, identity);
    if (!frontier.empty()) {
      T* out = result.values.data();
      parallel_for_tasks(sg.block_count, [&](std::size_t b) {
        for (std::size_t s = 0; s < sg.segment_count(); ++s) {
          const Subgraph& sub = sg.subgraphs[s];
          const std::vector<T>& buf = buffers_[s];
          for (std::size_t l = sub.block_starts[b]; l < sub.block_ends[b]; ++l) {
            const VertexId v = sub.idx_map[l];
            kernel.merge(out[v], buf[l]);
            observer.output_write(v);
          }
        }
      });
    }
    result.next.recount();
    result.times.merge_ms = clock.millis();
    return result;
  }

 private:
  const SegmentedGraph* sg_;
  std::vector<std::vector<T>> buffers_;
};

/// One-shot edge_map; allocates its own intermediate buffers.
template <class T, EdgeKernel<T> Kernel>
EdgeMapResult<T> edge_map(const SegmentedGraph& sg, const Frontier& frontier, std::span<const T> src,
                          std::span<const T> dst_old, const Kernel& kernel) {
  EdgeMapper<T> mapper(sg);
  return mapper(frontier, src, dst_old, kernel);
}

/// Calls f(v) once for every active v, in parallel. The returned frontier
/// holds the vertices for which f returned true. f may write only to slots
/// owned by v.
template <class F>
Frontier vertex_map(const Frontier& subset, F&& f) {
  Frontier out(subset.size());
  if (subset.empty()) return out;
  const std::uint8_t* in = subset.mask().data();
  std::uint8_t* keep = out.mask_.data();
  parallel_for_static(subset.size(), [&](std::size_t v) {
    if (in[v] && f(static_cast<VertexId>(v))) keep[v] = 1;
  });
  out.recount();
  return out;
}

}  // namespace segcsr
