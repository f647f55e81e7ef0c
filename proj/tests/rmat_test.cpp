#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "segcsr/graph.hpp"
#include "segcsr/rmat.hpp"

using namespace segcsr;

TEST(Rmat, SmallGraphIsReproducible) {
  RmatParams p;
  p.scale = 4;
  p.edge_factor = 16;
  p.seed = 42;
  const EdgeList a = rmat_generate(p);
  const EdgeList b = rmat_generate(p);
  EXPECT_EQ(a.vertex_count, 16u);
  EXPECT_EQ(a.edges.size(), 256u);
  EXPECT_EQ(a.edges, b.edges);
  check_edge_list(a);

  p.seed = 43;
  EXPECT_NE(rmat_generate(p).edges, a.edges);
}

TEST(Rmat, IndependentOfWorkerCount) {
  RmatParams p;
  p.scale = 12;
  p.edge_factor = 40;  // several generation blocks
  p.seed = 7;
  set_worker_count(1);
  const EdgeList one = rmat_generate(p);
  set_worker_count(4);
  const EdgeList four = rmat_generate(p);
  set_worker_count(1);
  EXPECT_EQ(one.edges, four.edges);
}

TEST(Rmat, ScaleZeroIsAllSelfLoops) {
  RmatParams p;
  p.scale = 0;
  p.edge_factor = 5;
  const EdgeList el = rmat_generate(p);
  EXPECT_EQ(el.vertex_count, 1u);
  ASSERT_EQ(el.edges.size(), 5u);
  for (const Edge& e : el.edges) EXPECT_EQ(e, (Edge{0, 0}));
}

TEST(Rmat, UniformQuadrantsWithinThreeSigma) {
  RmatParams p;
  p.scale = 10;
  p.edge_factor = 98;  // 100352 edges
  p.a = p.b = p.c = 0.25;
  p.seed = 2024;
  const EdgeList el = rmat_generate(p);
  ASSERT_GE(el.edges.size(), 100000u);
  std::array<double, 4> counts{};
  for (const Edge& e : el.edges) {
    const int q = ((e.src >> 9) & 1) * 2 + ((e.dst >> 9) & 1);
    counts[q] += 1;
  }
  const double n = static_cast<double>(el.edges.size());
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  for (double c : counts) EXPECT_NEAR(c / n, 0.25, 3 * sigma);
}

TEST(Rmat, DefaultParametersGiveSkewedOutDegrees) {
  RmatParams p;
  p.scale = 16;
  p.edge_factor = 16;
  p.seed = 5;
  const CsrGraph g = build_csr(rmat_generate(p));
  const auto max_degree = *std::max_element(g.out_degree.begin(), g.out_degree.end());
  const double avg = static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
  EXPECT_GT(static_cast<double>(max_degree), 10 * avg);
}

TEST(Rmat, NoiseIsStillDeterministic) {
  RmatParams p;
  p.scale = 8;
  p.noise = true;
  p.seed = 11;
  EXPECT_EQ(rmat_generate(p).edges, rmat_generate(p).edges);
  RmatParams plain = p;
  plain.noise = false;
  EXPECT_NE(rmat_generate(p).edges, rmat_generate(plain).edges);
}

TEST(Rmat, RejectsBadProbabilities) {
  RmatParams p;
  p.a = 0.6;
  p.b = 0.3;
  p.c = 0.2;
  EXPECT_THROW(rmat_generate(p), Error);
  p = {};
  p.b = -0.1;
  EXPECT_THROW(rmat_generate(p), Error);
  p = {};
  p.scale = 40;
  EXPECT_THROW(rmat_generate(p), Error);
}

TEST(BipartiteRatings, SymmetricDistinctRatings) {
  const EdgeList el = bipartite_ratings(20, 15, 4, 3);
  EXPECT_EQ(el.vertex_count, 35u);
  ASSERT_EQ(el.edges.size(), 20u * 4 * 2);
  for (std::size_t i = 0; i < el.edges.size(); i += 2) {
    EXPECT_LT(el.edges[i].src, 20u);
    EXPECT_GE(el.edges[i].dst, 20u);
    EXPECT_EQ(el.edges[i + 1], (Edge{el.edges[i].dst, el.edges[i].src}));
    EXPECT_EQ(el.weights[i], el.weights[i + 1]);
  }
  EXPECT_EQ(simplify(el, false, true).size(), el.size());
}
