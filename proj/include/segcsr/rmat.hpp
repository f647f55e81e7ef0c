#pragma once

// Recursive-matrix (R-MAT) edge generator in the Graph500 style. Each edge
// descends `scale` levels of the adjacency matrix, picking one of four
// quadrants per level with probabilities a, b, c, d = 1 - a - b - c.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "segcsr/graph.hpp"
#include "segcsr/parallel.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

struct RmatParams {
  int scale = 10;
  int edge_factor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  std::uint64_t seed = 1;
  // Multiplies each quadrant probability by a factor in [0.95, 1.05] per
  // level, then renormalizes.
  bool noise = false;
};

inline void check_rmat_params(const RmatParams& p) {
  if (p.scale < 0 || p.scale > 32) throw Error("param-range", "scale must be in [0, 32]");
  if (p.edge_factor < 0) throw Error("param-range", "edge factor must be non-negative");
  const bool in_unit = p.a >= 0 && p.a <= 1 && p.b >= 0 && p.b <= 1 && p.c >= 0 && p.c <= 1;
  if (!in_unit || p.a + p.b + p.c > 1.0 + 1e-12) {
    throw Error("probability-range", "need a, b, c in [0, 1] with a + b + c <= 1");
  }
}

namespace detail {

inline double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Generates edge_factor * 2^scale edges over 2^scale vertices. Edges are
/// produced in fixed blocks, each with its own seeded engine, so the output
/// is identical for any worker count.
inline EdgeList rmat_generate(const RmatParams& p) {
  check_rmat_params(p);
  constexpr std::size_t kBlock = 1 << 16;
  const std::uint64_t n = std::uint64_t{1} << p.scale;
  const std::uint64_t m = static_cast<std::uint64_t>(p.edge_factor) * n;

  EdgeList el;
  el.vertex_count = static_cast<std::size_t>(n);
  el.edges.resize(m);
  const std::size_t blocks = (m + kBlock - 1) / kBlock;
  const double ab = p.a + p.b;
  const double abc = p.a + p.b + p.c;

  parallel_for_tasks(blocks, [&](std::size_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    std::mt19937_64 gen(seq);
    const std::size_t lo = block * kBlock;
    const std::size_t hi = std::min<std::size_t>(m, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      std::uint64_t src = 0;
      std::uint64_t dst = 0;
      for (int level = 0; level < p.scale; ++level) {
        double qa = p.a, qab = ab, qabc = abc;
        if (p.noise) {
          const double na = p.a * (0.95 + 0.1 * detail::unit_draw(gen));
          const double nb = p.b * (0.95 + 0.1 * detail::unit_draw(gen));
          const double nc = p.c * (0.95 + 0.1 * detail::unit_draw(gen));
          const double nd = (1.0 - abc) * (0.95 + 0.1 * detail::unit_draw(gen));
          const double total = na + nb + nc + nd;
          qa = na / total;
          qab = (na + nb) / total;
          qabc = (na + nb + nc) / total;
        }
        const double u = detail::unit_draw(gen);
        const std::uint64_t bit = std::uint64_t{1} << (p.scale - 1 - level);
        if (u < qa) {
        } else if (u < qab) {
          dst |= bit;
        } else if (u < qabc) {
          src |= bit;
        } else {
          src |= bit;
          dst |= bit;
        }
      }
      el.edges[i] = {static_cast<VertexId>(src), static_cast<VertexId>(dst)};
    }
  });
  return el;
}

/// Attaches seeded ratings drawn uniformly from {1, ..., levels}.
inline void attach_ratings(EdgeList& el, std::uint64_t seed, int levels = 5) {
  std::mt19937_64 gen(seed);
  el.weights.resize(el.edges.size());
  for (double& w : el.weights) w = 1.0 + static_cast<double>(gen() % static_cast<std::uint64_t>(levels));
}

/// Random bipartite rating graph: users [0, users), items [users, users +
/// items). Each user rates `per_user` distinct items; every rating is stored
/// in both directions with the same weight.
inline EdgeList bipartite_ratings(std::size_t users, std::size_t items, std::size_t per_user,
                                  std::uint64_t seed, int levels = 5) {
  if (per_user > items) throw Error("param-range", "cannot rate more items than exist");
  std::mt19937_64 gen(seed);
  EdgeList el;
  el.vertex_count = users + items;
  std::vector<VertexId> pool(items);
  for (std::size_t u = 0; u < users; ++u) {
    std::iota(pool.begin(), pool.end(), static_cast<VertexId>(users));
    for (std::size_t j = 0; j < per_user; ++j) {
      std::swap(pool[j], pool[j + gen() % (items - j)]);
      const double r = 1.0 + static_cast<double>(gen() % static_cast<std::uint64_t>(levels));
      el.edges.push_back({static_cast<VertexId>(u), pool[j]});
      el.weights.push_back(r);
      el.edges.push_back({pool[j], static_cast<VertexId>(u)});
      el.weights.push_back(r);
    }
  }
  return el;
}

}  // namespace segcsr
