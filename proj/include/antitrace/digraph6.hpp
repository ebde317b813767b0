#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"

namespace antitrace {

// digraph6: '&', the order N(n), then the n*n adjacency matrix row-major,
// padded with zeros to a multiple of 6 bits, each 6-bit group as value+63.
// N(n) is one byte n+63 for n <= 62, else '~' followed by three 6-bit groups.

namespace detail {

inline void append_size(std::string& out, int n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

inline int sextet(char c, std::string_view what) {
  const int v = static_cast<unsigned char>(c) - 63;
  if (v < 0 || v > 63) fail(ErrorCode::MalformedPayload, std::string("byte outside '?'..'~' in ") + std::string(what));
  return v;
}

}  // namespace detail

inline std::string encode_digraph6(const OrientedGraph& g) {
  const int n = g.order();
  std::string out = "&";
  detail::append_size(out, n);
  int acc = 0;
  int filled = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc = (acc << 1) | (g.has_arc(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

inline OrientedGraph decode_digraph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty() || text.front() != '&') fail(ErrorCode::MalformedHeader, "missing leading '&'");
  std::size_t pos = 1;
  if (pos >= text.size()) fail(ErrorCode::MalformedHeader, "missing order byte");
  long long n = 0;
  if (text[pos] == '~') {
    ++pos;
    if (pos < text.size() && text[pos] == '~') {
      ++pos;
      if (pos + 6 > text.size()) fail(ErrorCode::MalformedHeader, "truncated 8-byte order field");
      for (int i = 0; i < 6; ++i) n = (n << 6) | detail::sextet(text[pos++], "order field");
    } else {
      if (pos + 3 > text.size()) fail(ErrorCode::MalformedHeader, "truncated 4-byte order field");
      for (int i = 0; i < 3; ++i) n = (n << 6) | detail::sextet(text[pos++], "order field");
    }
  } else {
    const int v = static_cast<unsigned char>(text[pos++]) - 63;
    if (v < 0 || v > 62) fail(ErrorCode::MalformedHeader, "order byte outside '?'..'}'");
    n = v;
  }
  if (n > OrientedGraph::kMaxVertices)
    fail(ErrorCode::TooLarge, "order " + std::to_string(n) + " exceeds the 64-vertex core tier");
  const int order = static_cast<int>(n);
  const std::size_t bits = static_cast<std::size_t>(order) * static_cast<std::size_t>(order);
  const std::size_t bytes = (bits + 5) / 6;
  const std::size_t have = text.size() - pos;
  if (have < bytes)
    fail(ErrorCode::TruncatedPayload,
         "expected " + std::to_string(bytes) + " payload bytes, got " + std::to_string(have));
  if (have > bytes) fail(ErrorCode::MalformedPayload, "trailing bytes after payload");

  std::vector<std::uint64_t> rows(static_cast<std::size_t>(order), 0);
  std::size_t k = 0;
  for (std::size_t b = 0; b < bytes; ++b) {
    const int v = detail::sextet(text[pos + b], "payload");
    for (int s = 5; s >= 0 && k < bits; --s, ++k)
      if ((v >> s) & 1) rows[k / static_cast<std::size_t>(order)] |= bit(static_cast<int>(k % static_cast<std::size_t>(order)));
  }
  for (int i = 0; i < order; ++i) {
    if (rows[static_cast<std::size_t>(i)] & bit(i))
      fail(ErrorCode::SelfLoop, "diagonal bit set at vertex " + std::to_string(i));
    for (int j = i + 1; j < order; ++j)
      if (((rows[static_cast<std::size_t>(i)] >> j) & 1U) && ((rows[static_cast<std::size_t>(j)] >> i) & 1U))
        fail(ErrorCode::DigonInPayload, "arcs both ways between " + std::to_string(i) + " and " + std::to_string(j));
  }
  return OrientedGraph::from_out_rows(order, rows);
}

// One graph per line; blank lines and the ">>digraph6<<" header are skipped.
// Failures are rethrown with the 1-based line number prepended.
inline std::vector<OrientedGraph> read_digraph6_lines(std::istream& in) {
  std::vector<OrientedGraph> graphs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = line;
    if (sv.starts_with(">>digraph6<<")) sv.remove_prefix(12);
    while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ' || sv.back() == '\t')) sv.remove_suffix(1);
    if (sv.empty()) continue;
    try {
      graphs.push_back(decode_digraph6(sv));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return graphs;
}

}  // namespace antitrace
