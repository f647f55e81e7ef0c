#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "oracles.hpp"
#include "segcsr/io.hpp"

using namespace segcsr;

namespace {

std::string kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "no-error";
}

std::string to_binary(const CsrGraph& g) {
  std::ostringstream out(std::ios::binary);
  write_binary(out, g);
  return out.str();
}

CsrGraph from_binary(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return read_binary(in);
}

}  // namespace

TEST(ParseEdgeList, Unweighted) {
  std::istringstream in("0 1\n1 0\n");
  const EdgeList el = parse_edge_list(in);
  EXPECT_EQ(el.vertex_count, 2u);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1}, {1, 0}}));
  EXPECT_FALSE(el.weighted());
}

TEST(ParseEdgeList, CommentAndWeight) {
  std::istringstream in("# c\n0 5 2.5\n");
  const EdgeList el = parse_edge_list(in);
  EXPECT_EQ(el.vertex_count, 6u);
  ASSERT_EQ(el.edges.size(), 1u);
  EXPECT_EQ(el.edges[0], (Edge{0, 5}));
  EXPECT_EQ(el.weights, (std::vector<double>{2.5}));
}

TEST(ParseEdgeList, MixedWeightingFailsAtLine2) {
  std::istringstream in("0 1\n1 0 3.0\n");
  try {
    parse_edge_list(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "mixed-weighting");
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseEdgeList, MalformedTokens) {
  for (const char* text : {"0 x\n", "0\n", "0 1 2 3\n", "-1 2\n", "0 1 abc\n"}) {
    std::istringstream in(text);
    EXPECT_EQ(kind_of([&] { parse_edge_list(in); }), "malformed") << text;
  }
}

TEST(ParseEdgeList, PercentCommentsBlankLinesAndOverride) {
  std::istringstream in("% header\n\n  3\t4  \n");
  const EdgeList el = parse_edge_list(in, 10);
  EXPECT_EQ(el.vertex_count, 10u);
  EXPECT_EQ(el.edges, (std::vector<Edge>{{3, 4}}));
  std::istringstream small("3 4\n");
  EXPECT_EQ(kind_of([&] { parse_edge_list(small, 4); }), "vertex-range");
}

TEST(ParseEdgeList, WriteParseIsAFixedPoint) {
  const EdgeList el = oracle::random_edges(50, 400, 3, true);
  std::ostringstream first;
  write_edge_list(first, el);
  std::istringstream in(first.str());
  const EdgeList back = parse_edge_list(in, el.vertex_count);
  EXPECT_EQ(back.edges, el.edges);
  EXPECT_EQ(back.weights, el.weights);
  std::ostringstream second;
  write_edge_list(second, back);
  EXPECT_EQ(first.str(), second.str());
}

TEST(Binary, TwoCycleLayout) {
  EdgeList el;
  el.vertex_count = 2;
  el.edges = {{0, 1}, {1, 0}};
  const std::string bytes = to_binary(build_csr(el));
  // 28-byte header, 3 offsets, 2 neighbors.
  ASSERT_EQ(bytes.size(), kBinaryHeaderBytes + 24 + 16);
  EXPECT_EQ(bytes.substr(0, 8), std::string("SEGCSR\0\0", 8));
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[9], 0);
  EXPECT_EQ(bytes[10], 0);  // unweighted, in-edge layout
  EXPECT_EQ(bytes[12], 2);  // vertexCount
  EXPECT_EQ(bytes[20], 2);  // edgeCount
  EXPECT_EQ(bytes[28 + 8], 1);   // offsets[1]
  EXPECT_EQ(bytes[28 + 24], 1);  // neighbors[0]: in-neighbor of 0 is 1
}

TEST(Binary, RoundTripFig5AndWeighted) {
  const CsrGraph g = build_csr(oracle::fig5_edges());
  EXPECT_EQ(from_binary(to_binary(g)), g);

  const CsrGraph w = build_csr(oracle::random_edges(100, 700, 9, true), Orientation::kOutEdges);
  const std::string bytes = to_binary(w);
  EXPECT_EQ(bytes[10], 3);
  const CsrGraph back = from_binary(bytes);
  EXPECT_EQ(back, w);
  EXPECT_EQ(to_binary(back), bytes);
}

TEST(Binary, RejectsBadInput) {
  const std::string good = to_binary(build_csr(oracle::fig5_edges()));

  std::string magic = good;
  magic.replace(0, 8, std::string("XXXXXX\0\0", 8));
  EXPECT_EQ(kind_of([&] { from_binary(magic); }), "bad-magic");

  std::string version = good;
  version[8] = 2;
  EXPECT_EQ(kind_of([&] { from_binary(version); }), "bad-version");

  std::string flags = good;
  flags[10] = 8;
  EXPECT_EQ(kind_of([&] { from_binary(flags); }), "bad-flags");

  EXPECT_EQ(kind_of([&] { from_binary(good.substr(0, 20)); }), "truncated");
  EXPECT_EQ(kind_of([&] { from_binary(good.substr(0, good.size() - 3)); }), "truncated");
  EXPECT_EQ(kind_of([&] { from_binary(good + "x"); }), "size-mismatch");

  std::string edge_count = good;
  edge_count[20] = 9;
  EXPECT_EQ(kind_of([&] { from_binary(edge_count); }), "size-mismatch");

  std::string neighbor = good;
  neighbor[28 + 7 * 8] = 6;  // first neighbor id -> 6 with V = 6
  EXPECT_EQ(kind_of([&] { from_binary(neighbor); }), "neighbor-range");
}

TEST(Binary, LooksBinarySniffsMagic) {
  std::istringstream bin(to_binary(build_csr(oracle::fig5_edges())));
  EXPECT_TRUE(looks_binary(bin));
  EXPECT_EQ(bin.tellg(), 0);
  std::istringstream text("0 1\n");
  EXPECT_FALSE(looks_binary(text));
}
