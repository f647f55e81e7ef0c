#pragma once

// On-disk graph formats.
//
// Text: one edge per line, "src dst" or "src dst weight", whitespace
// separated. Lines starting with '#' or '%' are comments; blank lines are
// skipped.
//
// Binary (all integers little-endian, packed, no padding):
//   offset  0  magic        8 bytes  "SEGCSR\0\0"
//   offset  8  version      u16      1
//   offset 10  flags        u16      bit0 weights present, bit1 out-edge layout
//   offset 12  vertexCount  u64
//   offset 20  edgeCount    u64
//   offset 28  offsets      (vertexCount + 1) x u64
//              neighbors    edgeCount x u64
//              weights      edgeCount x f64 (only with bit0)

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "segcsr/graph.hpp"
#include "segcsr/types.hpp"

namespace segcsr {

inline constexpr std::array<char, 8> kBinaryMagic{'S', 'E', 'G', 'C', 'S', 'R', '\0', '\0'};
inline constexpr std::uint16_t kBinaryVersion = 1;
inline constexpr std::uint16_t kFlagWeights = 1u << 0;
inline constexpr std::uint16_t kFlagOutEdges = 1u << 1;
inline constexpr std::size_t kBinaryHeaderBytes = 28;

// ---------------------------------------------------------------------------
// Text edge lists

namespace detail {

inline std::string_view next_token(std::string_view& rest) {
  constexpr std::string_view kSpace = " \t\r\f\v";
  const auto start = rest.find_first_not_of(kSpace);
  if (start == std::string_view::npos) {
    rest = {};
    return {};
  }
  rest.remove_prefix(start);
  const auto stop = std::min(rest.find_first_of(kSpace), rest.size());
  auto tok = rest.substr(0, stop);
  rest.remove_prefix(stop);
  return tok;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace detail

/// Parses a text edge list. vertex_count becomes 1 + the largest id seen
/// unless `vertex_count_override` is given (which must cover every id).
inline EdgeList parse_edge_list(std::istream& in,
                                std::optional<std::size_t> vertex_count_override = std::nullopt) {
  EdgeList el;
  std::optional<bool> weighted;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& kind, const std::string& what) {
    throw Error(kind, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = line;
    auto first = detail::next_token(rest);
    if (first.empty() || first.front() == '#' || first.front() == '%') continue;
    auto second = detail::next_token(rest);
    auto third = detail::next_token(rest);
    if (!detail::next_token(rest).empty()) fail("malformed", "too many fields");
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    if (second.empty()) fail("malformed", "expected 'src dst [weight]'");
    if (!detail::parse_number(first, src)) fail("malformed", "bad source id '" + std::string(first) + "'");
    if (!detail::parse_number(second, dst)) fail("malformed", "bad destination id '" + std::string(second) + "'");
    if (std::max(src, dst) > UINT32_MAX) fail("vertex-range", "id exceeds 32-bit vertex range");
    const bool has_weight = !third.empty();
    if (weighted.has_value() && *weighted != has_weight) fail("mixed-weighting", "weighted and unweighted lines mixed");
    weighted = has_weight;
    if (has_weight) {
      double w = 0;
      if (!detail::parse_number(third, w)) fail("malformed", "bad weight '" + std::string(third) + "'");
      el.weights.push_back(w);
    }
    el.edges.push_back({static_cast<VertexId>(src), static_cast<VertexId>(dst)});
    max_id = std::max({max_id, src, dst});
    any = true;
  }
  el.vertex_count = any ? static_cast<std::size_t>(max_id) + 1 : 0;
  if (vertex_count_override) {
    if (*vertex_count_override < el.vertex_count) {
      throw Error("vertex-range", "vertex count " + std::to_string(*vertex_count_override) +
                                      " does not cover id " + std::to_string(max_id));
    }
    el.vertex_count = *vertex_count_override;
  }
  return el;
}

/// Writes one "src dst [weight]" line per edge. Weights use round-trip
/// precision so parsing the output reproduces the list exactly.
inline void write_edge_list(std::ostream& out, const EdgeList& el) {
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < el.edges.size(); ++i) {
    out << el.edges[i].src << ' ' << el.edges[i].dst;
    if (el.weighted()) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), el.weights[i]);
      out << ' ' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Binary CSR

namespace detail {

template <class U>
void store_le(char* dst, U value) {
  static_assert(std::is_unsigned_v<U>);
  for (std::size_t i = 0; i < sizeof(U); ++i) dst[i] = static_cast<char>((value >> (8 * i)) & 0xff);
}

template <class U>
U load_le(const char* src) {
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(static_cast<unsigned char>(src[i])) << (8 * i);
  }
  return value;
}

// Streams `count` little-endian 64-bit words through a bounded buffer.
template <class Convert>
void write_words(std::ostream& out, std::size_t count, Convert&& word_at) {
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<char> buf(std::min(count, kChunk) * 8);
  for (std::size_t base = 0; base < count; base += kChunk) {
    const std::size_t n = std::min(kChunk, count - base);
    for (std::size_t i = 0; i < n; ++i) store_le<std::uint64_t>(buf.data() + 8 * i, word_at(base + i));
    out.write(buf.data(), static_cast<std::streamsize>(8 * n));
  }
}

template <class Sink>
void read_words(std::istream& in, std::size_t count, std::uint64_t& byte_offset, Sink&& sink) {
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<char> buf(std::min(count, kChunk) * 8);
  for (std::size_t base = 0; base < count; base += kChunk) {
    const std::size_t n = std::min(kChunk, count - base);
    in.read(buf.data(), static_cast<std::streamsize>(8 * n));
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got != 8 * n) {
      throw Error("truncated", "file ends at byte " + std::to_string(byte_offset + got) + ", expected " +
                                   std::to_string(byte_offset + 8 * n));
    }
    for (std::size_t i = 0; i < n; ++i) sink(base + i, load_le<std::uint64_t>(buf.data() + 8 * i));
    byte_offset += 8 * n;
  }
}

}  // namespace detail

inline void write_binary(std::ostream& out, const CsrGraph& g) {
  std::array<char, kBinaryHeaderBytes> header{};
  std::memcpy(header.data(), kBinaryMagic.data(), kBinaryMagic.size());
  std::uint16_t flags = 0;
  if (g.weighted()) flags |= kFlagWeights;
  if (g.orientation == Orientation::kOutEdges) flags |= kFlagOutEdges;
  detail::store_le<std::uint16_t>(header.data() + 8, kBinaryVersion);
  detail::store_le<std::uint16_t>(header.data() + 10, flags);
  detail::store_le<std::uint64_t>(header.data() + 12, g.vertex_count());
  detail::store_le<std::uint64_t>(header.data() + 20, g.edge_count());
  out.write(header.data(), header.size());
  detail::write_words(out, g.offsets.size(), [&](std::size_t i) { return g.offsets[i]; });
  detail::write_words(out, g.neighbors.size(), [&](std::size_t i) { return std::uint64_t{g.neighbors[i]}; });
  if (g.weighted()) {
    detail::write_words(out, g.weights.size(), [&](std::size_t i) { return std::bit_cast<std::uint64_t>(g.weights[i]); });
  }
  if (!out) throw Error("io", "write failed");
}

inline void write_binary(const std::string& path, const CsrGraph& g) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot open '" + path + "' for writing");
  write_binary(out, g);
}

/// Reads a binary CSR. out_degree is recomputed from the adjacency, and the
/// result is validated before it is returned.
inline CsrGraph read_binary(std::istream& in) {
  std::array<char, kBinaryHeaderBytes> header{};
  in.read(header.data(), header.size());
  if (static_cast<std::size_t>(in.gcount()) != header.size()) {
    throw Error("truncated", "file ends at byte " + std::to_string(in.gcount()) + " inside the " +
                                 std::to_string(kBinaryHeaderBytes) + "-byte header");
  }
  if (!std::equal(kBinaryMagic.begin(), kBinaryMagic.end(), header.begin())) {
    throw Error("bad-magic", "byte 0: not a SEGCSR binary graph");
  }
  const auto version = detail::load_le<std::uint16_t>(header.data() + 8);
  if (version != kBinaryVersion) throw Error("bad-version", "byte 8: unsupported version " + std::to_string(version));
  const auto flags = detail::load_le<std::uint16_t>(header.data() + 10);
  if ((flags & ~(kFlagWeights | kFlagOutEdges)) != 0) {
    throw Error("bad-flags", "byte 10: unknown flag bits " + std::to_string(flags));
  }
  const auto n = detail::load_le<std::uint64_t>(header.data() + 12);
  const auto m = detail::load_le<std::uint64_t>(header.data() + 20);
  if (n > (std::uint64_t{1} << 32)) throw Error("size-mismatch", "byte 12: vertex count " + std::to_string(n) + " too large");

  CsrGraph g;
  g.orientation = (flags & kFlagOutEdges) ? Orientation::kOutEdges : Orientation::kInEdges;
  std::uint64_t offset = kBinaryHeaderBytes;
  g.offsets.resize(n + 1);
  detail::read_words(in, n + 1, offset, [&](std::size_t i, std::uint64_t w) { g.offsets[i] = w; });
  if (g.offsets[n] != m) {
    throw Error("size-mismatch", "byte " + std::to_string(offset - 8) + ": final offset " +
                                     std::to_string(g.offsets[n]) + " disagrees with header edge count " +
                                     std::to_string(m));
  }
  g.neighbors.resize(m);
  const std::uint64_t neighbor_base = offset;
  detail::read_words(in, m, offset, [&](std::size_t i, std::uint64_t w) {
    if (w >= n) {
      throw Error("neighbor-range", "byte " + std::to_string(neighbor_base + 8 * i) + ": neighbor id " +
                                        std::to_string(w) + " >= vertex count " + std::to_string(n));
    }
    g.neighbors[i] = static_cast<VertexId>(w);
  });
  if (flags & kFlagWeights) {
    g.weights.resize(m);
    detail::read_words(in, m, offset, [&](std::size_t i, std::uint64_t w) { g.weights[i] = std::bit_cast<double>(w); });
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error("size-mismatch", "byte " + std::to_string(offset) + ": trailing data after graph payload");
  }

  g.out_degree.assign(n, 0);
  if (g.orientation == Orientation::kInEdges) {
    for (VertexId u : g.neighbors) ++g.out_degree[u];
  } else {
    for (std::size_t v = 0; v < n; ++v) g.out_degree[v] = g.offsets[v + 1] - g.offsets[v];
  }
  if (auto report = validate(g); !report) throw Error(report.violation, report.detail);
  return g;
}

inline CsrGraph read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open '" + path + "'");
  return read_binary(in);
}

/// True when the stream starts with the binary magic. Leaves the stream
/// positioned at its start.
inline bool looks_binary(std::istream& in) {
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool match = static_cast<std::size_t>(in.gcount()) == head.size() && head == kBinaryMagic;
  in.clear();
  in.seekg(0);
  return match;
}

}  // namespace segcsr
