#pragma once

// Matrix-factorization collaborative filtering by full-gradient descent.
// Ratings are edge weights of a symmetric bipartite graph; every vertex
// (user or item) owns a latent vector p_v of F reals. One round computes
//   g_v = sum over neighbors u of (p_u . p_v - r_uv) p_u
// with edge_map, then steps p_v -= step * (g_v + lambda * p_v).

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "segcsr/apps/common.hpp"
#include "segcsr/engine.hpp"
#include "segcsr/segmenting.hpp"

namespace segcsr::apps {

using Factors = std::vector<double>;

inline double dot(const Factors& x, const Factors& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Accumulates (p_u . p_v - r) p_u; reads the destination's current factors
/// through dst_old.
struct GradientKernel {
  std::size_t factors = 8;

  Factors identity() const { return Factors(factors, 0.0); }
  bool update(Factors& acc, const Factors& src, const Factors& dst_old, double rating) const {
    const double err = dot(src, dst_old) - rating;
    for (std::size_t i = 0; i < factors; ++i) acc[i] += err * src[i];
    return true;
  }
  void merge(Factors& acc, const Factors& partial) const {
    for (std::size_t i = 0; i < factors; ++i) acc[i] += partial[i];
  }
};

struct CfParams {
  int iterations = 5;
  std::size_t factors = 8;
  double step = 1e-3;
  double lambda = 1e-2;
  std::uint64_t seed = 1;
};

struct CfResult {
  std::vector<Factors> factors;
  std::vector<double> objective;      // before training, then after each round
  std::vector<double> squared_error;  // same cadence
  std::vector<IterationTimes> iterations;
};

/// Seeded factors drawn uniformly from [0, 1 / sqrt(F)).
inline std::vector<Factors> initial_factors(std::size_t n, std::size_t f, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f));
  std::vector<Factors> out(n, Factors(f));
  for (auto& p : out) {
    for (double& x : p) x = static_cast<double>(gen() >> 11) * 0x1.0p-53 * scale;
  }
  return out;
}

/// Sum over stored edges of (p_u . p_v - r_uv)^2.
inline double squared_error(const SegmentedGraph& sg, std::span<const Factors> p) {
  double total = 0.0;
  for (const Subgraph& sub : sg.subgraphs) {
    for (std::size_t l = 0; l < sub.dest_count(); ++l) {
      const VertexId v = sub.idx_map[l];
      for (EdgeIndex e = sub.offsets[l]; e < sub.offsets[l + 1]; ++e) {
        const double err = dot(p[sub.neighbors[e]], p[v]) - sub.weights[e];
        total += err * err;
      }
    }
  }
  return total;
}

/// The function the descent minimizes on a symmetric rating graph:
/// 1/2 sum over ratings of err^2 + lambda/2 sum over vertices of |p_v|^2.
/// Each rating is stored twice, hence the 1/4 on the stored-edge sum.
inline double cf_objective(const SegmentedGraph& sg, std::span<const Factors> p, double lambda) {
  double reg = 0.0;
  for (const auto& x : p) reg += dot(x, x);
  return 0.25 * squared_error(sg, p) + 0.5 * lambda * reg;
}

inline void check_cf_input(const SegmentedGraph& sg, std::size_t f) {
  if (f == 0) throw Error("param-range", "latent dimension must be >= 1");
  if (!sg.weighted && sg.edge_count > 0) throw Error("unweighted", "collaborative filtering needs rating weights");
}

/// Data term of the gradient for every vertex (no regularization).
inline std::vector<Factors> cf_gradient(EdgeMapper<Factors>& mapper, std::span<const Factors> p, std::size_t f,
                                        PhaseTimes* times = nullptr) {
  const std::size_t n = mapper.graph().vertex_count;
  for (const auto& x : p) {
    if (x.size() != f) throw Error("factor-mismatch", "factor vector of length " + std::to_string(x.size()) + ", expected " + std::to_string(f));
  }
  auto r = mapper(Frontier::all(n), p, p, GradientKernel{f});
  if (times) *times = r.times;
  return std::move(r.values);
}

inline std::vector<Factors> cf_gradient(const SegmentedGraph& sg, std::span<const Factors> p, std::size_t f) {
  check_cf_input(sg, f);
  EdgeMapper<Factors> mapper(sg);
  return cf_gradient(mapper, p, f);
}

inline CfResult collaborative_filter(const SegmentedGraph& sg, const CfParams& params,
                                     std::optional<std::vector<Factors>> start = std::nullopt) {
  const std::size_t n = sg.vertex_count;
  const std::size_t f = params.factors;
  check_cf_input(sg, f);
  CfResult result;
  result.factors = start ? std::move(*start) : initial_factors(n, f, params.seed);
  if (result.factors.size() != n) throw Error("size-mismatch", "expected " + std::to_string(n) + " factor vectors");

  EdgeMapper<Factors> mapper(sg);
  result.objective.push_back(cf_objective(sg, result.factors, params.lambda));
  result.squared_error.push_back(squared_error(sg, result.factors));
  for (int it = 0; it < params.iterations; ++it) {
    IterationTimes times;
    PhaseTimes phases;
    auto grad = cf_gradient(mapper, result.factors, f, &phases);
    times.add_edge_map(phases);

    Stopwatch clock;
    vertex_map(Frontier::all(n), [&](VertexId v) {
      Factors& x = result.factors[v];
      for (std::size_t i = 0; i < f; ++i) x[i] -= params.step * (grad[v][i] + params.lambda * x[i]);
      return true;
    });
    times.vertex_ms = clock.millis();
    result.iterations.push_back(times);
    result.objective.push_back(cf_objective(sg, result.factors, params.lambda));
    result.squared_error.push_back(squared_error(sg, result.factors));
  }
  return result;
}

}  // namespace segcsr::apps
