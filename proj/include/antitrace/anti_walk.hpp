#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"

namespace antitrace {

// Orientation of the arc between walk positions i and i+1.
enum class ArcDirection : std::uint8_t {
  Forward,   // vertices[i] -> vertices[i+1]
  Backward,  // vertices[i+1] -> vertices[i]
};

constexpr ArcDirection flip(ArcDirection d) {
  return d == ArcDirection::Forward ? ArcDirection::Backward : ArcDirection::Forward;
}

// Anti-directed path or cycle witness. For a cycle the closing arc between
// the last and first vertex is implied: it takes the orientation opposite to
// pattern.back(), with Forward meaning vertices.back() -> vertices.front().
struct AntiWalk {
  std::vector<Vertex> vertices;
  std::vector<ArcDirection> pattern;
  bool is_cycle = false;

  int order() const { return static_cast<int>(vertices.size()); }

  friend bool operator==(const AntiWalk&, const AntiWalk&) = default;
};

// Orientation of the arc joining a and b as seen walking from a to b.
template <DigraphLike G>
std::optional<ArcDirection> direction_between(const G& g, Vertex a, Vertex b) {
  if (g.has_arc(a, b)) return ArcDirection::Forward;
  if (g.has_arc(b, a)) return ArcDirection::Backward;
  return std::nullopt;
}

// Fills in the pattern from the host graph; the vertex sequence must already
// be an anti-directed path there (checked by validate_anti_walk afterwards).
template <DigraphLike G>
AntiWalk walk_from_vertices(const G& g, std::vector<Vertex> vertices, bool is_cycle = false) {
  AntiWalk w;
  w.is_cycle = is_cycle;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    auto d = direction_between(g, vertices[i], vertices[i + 1]);
    w.pattern.push_back(d.value_or(ArcDirection::Forward));
  }
  w.vertices = std::move(vertices);
  return w;
}

template <DigraphLike G>
bool validate_anti_walk(const G& g, const AntiWalk& w) {
  const std::size_t p = w.vertices.size();
  if (p == 0 || w.pattern.size() != p - 1) return false;
  const int n = g.order();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : w.vertices) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  auto arc_matches = [&](Vertex a, Vertex b, ArcDirection d) {
    return d == ArcDirection::Forward ? g.has_arc(a, b) : g.has_arc(b, a);
  };
  for (std::size_t i = 0; i + 1 < p; ++i) {
    if (!arc_matches(w.vertices[i], w.vertices[i + 1], w.pattern[i])) return false;
    if (i + 1 < w.pattern.size() && w.pattern[i] == w.pattern[i + 1]) return false;
  }
  if (w.is_cycle) {
    if (p < 4 || p % 2 != 0) return false;
    const ArcDirection closing = flip(w.pattern.back());
    if (closing == w.pattern.front()) return false;
    if (!arc_matches(w.vertices.back(), w.vertices.front(), closing)) return false;
  }
  return true;
}

// Same walk traversed from the other end.
inline AntiWalk reverse_walk(const AntiWalk& w) {
  AntiWalk r;
  r.is_cycle = w.is_cycle;
  r.vertices.assign(w.vertices.rbegin(), w.vertices.rend());
  for (auto it = w.pattern.rbegin(); it != w.pattern.rend(); ++it) r.pattern.push_back(flip(*it));
  return r;
}

// "1>2<0": '>' is an arc from the left vertex to the right one, '<' the
// reverse. Cycles repeat the first vertex after the closing arc.
inline std::string format_anti_walk(const AntiWalk& w) {
  std::string out;
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    if (i > 0) out += w.pattern[i - 1] == ArcDirection::Forward ? '>' : '<';
    out += std::to_string(w.vertices[i]);
  }
  if (w.is_cycle && !w.vertices.empty() && !w.pattern.empty()) {
    out += flip(w.pattern.back()) == ArcDirection::Forward ? '>' : '<';
    out += std::to_string(w.vertices.front());
  }
  return out;
}

inline AntiWalk parse_anti_walk(std::string_view text) {
  AntiWalk w;
  std::size_t i = 0;
  auto read_int = [&]() {
    if (i >= text.size() || text[i] < '0' || text[i] > '9') fail(ErrorCode::BadParameters, "expected vertex index");
    int v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
    return v;
  };
  w.vertices.push_back(read_int());
  while (i < text.size()) {
    const char c = text[i++];
    if (c != '<' && c != '>') fail(ErrorCode::BadParameters, "expected '<' or '>'");
    w.pattern.push_back(c == '>' ? ArcDirection::Forward : ArcDirection::Backward);
    w.vertices.push_back(read_int());
  }
  if (w.vertices.size() >= 3 && w.vertices.back() == w.vertices.front()) {
    w.vertices.pop_back();
    w.pattern.pop_back();
    w.is_cycle = true;
  }
  return w;
}

}  // namespace antitrace
