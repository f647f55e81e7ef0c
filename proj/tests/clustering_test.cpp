#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "segcsr/clustering.hpp"

using namespace segcsr;

namespace {

// Graph whose out-degrees are exactly `degrees` (edges go to vertex 0).
CsrGraph with_out_degrees(const std::vector<int>& degrees) {
  EdgeList el;
  el.vertex_count = degrees.size();
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    for (int i = 0; i < degrees[v]; ++i) el.edges.push_back({static_cast<VertexId>(v), 0});
  }
  return build_csr(el);
}

std::vector<VertexId> as_vector(std::span<const VertexId> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(FrequencyCluster, BandsByThreshold) {
  const CsrGraph g = with_out_degrees({1, 9, 1, 9, 1, 1});
  EXPECT_EQ(default_cluster_threshold(g), 4u);
  const Permutation p = frequency_cluster(g);
  EXPECT_EQ(as_vector(p.new_to_old()), (std::vector<VertexId>{1, 3, 0, 2, 4, 5}));
}

TEST(FrequencyCluster, EqualDegreesGiveIdentity) {
  EXPECT_TRUE(frequency_cluster(with_out_degrees({3, 3, 3, 3})).is_identity());
  EXPECT_TRUE(frequency_cluster(with_out_degrees({5})).is_identity());
}

TEST(FrequencyCluster, KeysNonIncreasingAndStableWithinBands) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CsrGraph g = build_csr(oracle::skewed_edges(400, 3000, seed));
    const EdgeIndex t = default_cluster_threshold(g);
    const Permutation p = frequency_cluster(g);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      EXPECT_EQ(p.to_new(p.to_old(i)), i);
    }
    for (std::size_t i = 1; i < g.vertex_count(); ++i) {
      const auto prev = p.to_old(i - 1), cur = p.to_old(i);
      const auto kp = g.out_degree[prev] / t, kc = g.out_degree[cur] / t;
      ASSERT_GE(kp, kc);
      if (kp == kc) ASSERT_LT(prev, cur);
    }
  }
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation::from_new_to_old({0, 0, 1}), Error);
  EXPECT_THROW(Permutation::from_new_to_old({0, 3}), Error);
}

TEST(ApplyPermutation, IdentityAndSwap) {
  const CsrGraph g = build_csr(oracle::fig5_edges());
  EXPECT_EQ(apply_permutation(g, Permutation::identity(6)), g);

  EdgeList cycle;
  cycle.vertex_count = 2;
  cycle.edges = {{0, 1}, {1, 0}};
  const CsrGraph c = build_csr(cycle);
  EXPECT_EQ(apply_permutation(c, Permutation::from_new_to_old({1, 0})), c);
}

TEST(ApplyPermutation, RelabelAndInvert) {
  const EdgeList el = oracle::fig5_edges();
  const CsrGraph g = build_csr(el);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Permutation p = random_permutation(6, seed);
    const CsrGraph h = apply_permutation(g, p);
    EdgeList back = to_edge_list(h);
    for (Edge& e : back.edges) e = {p.to_old(e.src), p.to_old(e.dst)};
    EXPECT_EQ(oracle::multiset(back), oracle::multiset(el));

    auto da = g.out_degree, db = h.out_degree;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    EXPECT_EQ(da, db);
  }
}

TEST(ApplyPermutation, SizeMismatch) {
  EXPECT_THROW(apply_permutation(build_csr(oracle::fig5_edges()), Permutation::identity(5)), Error);
}

TEST(Permutation, ValueReorderingInverts) {
  const Permutation p = random_permutation(50, 3);
  std::vector<double> values(50);
  for (std::size_t i = 0; i < 50; ++i) values[i] = static_cast<double>(i) * 1.5;
  const auto moved = to_new_order<double>(values, p);
  for (std::size_t old = 0; old < 50; ++old) EXPECT_EQ(moved[p.to_new(old)], values[old]);
  EXPECT_EQ(to_old_order<double>(moved, p), values);
}

TEST(Permutation, TextListingRoundTrip) {
  const Permutation p = random_permutation(30, 8);
  std::stringstream io;
  write_permutation(io, p);
  const Permutation back = read_permutation(io);
  EXPECT_EQ(as_vector(back.new_to_old()), as_vector(p.new_to_old()));

  std::istringstream bad("0\n1\nx\n");
  EXPECT_THROW(read_permutation(bad), Error);
}
