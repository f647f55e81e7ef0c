#pragma once

// Frequency-based vertex clustering: a stable, out-degree-banded relabeling
// that moves frequently read vertices to the front while keeping the
// original order inside each band.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "segcsr/graph.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

/// Bijection on [0, V). new_to_old is the exact inverse of old_to_new.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.new_to_old_.resize(n);
    std::iota(p.new_to_old_.begin(), p.new_to_old_.end(), VertexId{0});
    p.old_to_new_ = p.new_to_old_;
    return p;
  }

  /// Builds from the new-order listing; throws Error("not-bijection").
  static Permutation from_new_to_old(std::vector<VertexId> new_to_old) {
    Permutation p;
    const std::size_t n = new_to_old.size();
    p.old_to_new_.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId old = new_to_old[i];
      if (old >= n || seen[old]) throw Error("not-bijection", "vertex " + std::to_string(old) + " repeated or out of range");
      seen[old] = true;
      p.old_to_new_[old] = static_cast<VertexId>(i);
    }
    p.new_to_old_ = std::move(new_to_old);
    return p;
  }

  std::size_t size() const { return old_to_new_.size(); }
  VertexId to_new(std::size_t old_id) const { return old_to_new_[old_id]; }
  VertexId to_old(std::size_t new_id) const { return new_to_old_[new_id]; }
  std::span<const VertexId> old_to_new() const { return old_to_new_; }
  std::span<const VertexId> new_to_old() const { return new_to_old_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (new_to_old_[i] != i) return false;
    }
    return true;
  }

 private:
  std::vector<VertexId> old_to_new_;
  std::vector<VertexId> new_to_old_;
};

/// max(1, ceil(E / V)): the average degree rounded up.
inline EdgeIndex default_cluster_threshold(const CsrGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 1;
  return std::max<EdgeIndex>(1, (g.edge_count() + n - 1) / n);
}

/// Orders vertices by floor(outDegree / threshold) descending. The sort is
/// stable, so vertices below the threshold keep their original order at the
/// tail, as do vertices within any one band.
inline Permutation frequency_cluster(const CsrGraph& g, std::optional<EdgeIndex> threshold = std::nullopt) {
  const EdgeIndex t = std::max<EdgeIndex>(1, threshold.value_or(default_cluster_threshold(g)));
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&](VertexId x, VertexId y) {
    return g.out_degree[x] / t > g.out_degree[y] / t;
  });
  return Permutation::from_new_to_old(std::move(order));
}

/// Seeded uniform shuffle; the baseline ordering clustering is compared to.
inline Permutation random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::mt19937_64 gen(seed);
  std::shuffle(order.begin(), order.end(), gen);
  return Permutation::from_new_to_old(std::move(order));
}

/// Relabels every edge (u, v) to (to_new(u), to_new(v)) and rebuilds the
/// canonical CSR in the same orientation.
inline CsrGraph apply_permutation(const CsrGraph& g, const Permutation& p) {
  if (p.size() != g.vertex_count()) {
    throw Error("size-mismatch", "permutation over " + std::to_string(p.size()) + " vertices, graph has " +
                                     std::to_string(g.vertex_count()));
  }
  EdgeList el = to_edge_list(g);
  for (Edge& e : el.edges) e = {p.to_new(e.src), p.to_new(e.dst)};
  return build_csr(el, g.orientation);
}

/// Values indexed by old id -> values indexed by new id.
template <class T>
std::vector<T> to_new_order(std::span<const T> values, const Permutation& p) {
  std::vector<T> out(values.size());
  for (std::size_t old = 0; old < values.size(); ++old) out[p.to_new(old)] = values[old];
  return out;
}

/// Values indexed by new id -> values indexed by old id.
template <class T>
std::vector<T> to_old_order(std::span<const T> values, const Permutation& p) {
  std::vector<T> out(values.size());
  for (std::size_t old = 0; old < values.size(); ++old) out[old] = values[p.to_new(old)];
  return out;
}

/// Audit listing: one old id per line, in new order.
inline void write_permutation(std::ostream& out, const Permutation& p) {
  for (VertexId old : p.new_to_old()) out << old << '\n';
}

inline Permutation read_permutation(std::istream& in) {
  std::vector<VertexId> order;
  std::uint64_t id = 0;
  while (in >> id) {
    if (id > UINT32_MAX) throw Error("vertex-range", "id " + std::to_string(id) + " out of range");
    order.push_back(static_cast<VertexId>(id));
  }
  if (!in.eof()) throw Error("malformed", "non-numeric entry after " + std::to_string(order.size()) + " ids");
  return Permutation::from_new_to_old(std::move(order));
}

}  // namespace segcsr
