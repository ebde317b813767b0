#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "antitrace/bits.hpp"
#include "antitrace/error.hpp"

namespace antitrace {

using Vertex = int;

struct Arc {
  Vertex from;
  Vertex to;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Subset of the vertices of a core-tier graph.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<Vertex> vs) {
    for (Vertex v : vs) bits_ |= bit(v);
  }
  static VertexSet from(std::span<const Vertex> vs) {
    VertexSet s;
    for (Vertex v : vs) s.bits_ |= bit(v);
    return s;
  }
  static VertexSet all(int n) { return VertexSet(low_bits(n)); }

  std::uint64_t bits() const { return bits_; }
  bool contains(Vertex v) const { return (bits_ >> v) & 1U; }
  int size() const { return popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  VertexSet with(Vertex v) const { return VertexSet(bits_ | bit(v)); }
  VertexSet without(Vertex v) const { return VertexSet(bits_ & ~bit(v)); }
  bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    for_each_bit(bits_, [&](int v) { out.push_back(v); });
    return out;
  }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend bool operator==(VertexSet, VertexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Digon-free, loop-free digraph on at most 64 vertices with bit-row adjacency.
// Values are immutable once constructed; every factory validates.
class OrientedGraph {
 public:
  static constexpr int kMaxVertices = 64;

  OrientedGraph() = default;

  // Arcless graph on n vertices.
  explicit OrientedGraph(int n) {
    if (n < 0 || n > kMaxVertices)
      fail(ErrorCode::TooLarge, "order " + std::to_string(n) + " outside [0, 64]");
    n_ = n;
    out_.assign(static_cast<std::size_t>(n), 0);
    in_.assign(static_cast<std::size_t>(n), 0);
  }

  // Builds from out-neighbour rows; rejects loops, digons and stray bits.
  static OrientedGraph from_out_rows(int n, std::span<const std::uint64_t> rows) {
    OrientedGraph g(n);
    if (rows.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::BadParameters, "row count does not match order");
    const std::uint64_t mask = low_bits(n);
    for (int v = 0; v < n; ++v) {
      const std::uint64_t r = rows[static_cast<std::size_t>(v)];
      if (r & ~mask) fail(ErrorCode::VertexOutOfRange, "row " + std::to_string(v) + " has bits >= n");
      if (r & bit(v)) fail(ErrorCode::SelfLoop, "self-loop at " + std::to_string(v));
      g.out_[static_cast<std::size_t>(v)] = r;
    }
    for (int v = 0; v < n; ++v)
      for_each_bit(g.out_[static_cast<std::size_t>(v)], [&](int w) { g.in_[static_cast<std::size_t>(w)] |= bit(v); });
    for (int v = 0; v < n; ++v)
      if (g.out_[static_cast<std::size_t>(v)] & g.in_[static_cast<std::size_t>(v)])
        fail(ErrorCode::Digon, "digon at vertex " + std::to_string(v));
    return g;
  }

  int order() const { return n_; }
  std::uint64_t out_row(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::uint64_t in_row(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }
  std::uint64_t neighbour_row(Vertex v) const { return out_row(v) | in_row(v); }
  // Vertices other than v that share no arc with v.
  std::uint64_t non_neighbour_row(Vertex v) const { return low_bits(n_) & ~neighbour_row(v) & ~bit(v); }

  bool has_arc(Vertex u, Vertex v) const { return (out_row(u) >> v) & 1U; }
  bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }
  int out_degree(Vertex v) const { return popcount(out_row(v)); }
  int in_degree(Vertex v) const { return popcount(in_row(v)); }
  VertexSet vertices() const { return VertexSet::all(n_); }

  std::size_t arc_count() const {
    std::size_t c = 0;
    for (auto r : out_) c += static_cast<std::size_t>(popcount(r));
    return c;
  }

  bool is_tournament() const {
    for (int v = 0; v < n_; ++v)
      if (non_neighbour_row(v) != 0) return false;
    return true;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (int v = 0; v < n_; ++v)
      for_each_bit(out_row(v), [&](int w) { out.push_back({v, w}); });
    return out;
  }

  std::span<const std::uint64_t> out_rows() const { return out_; }

  friend bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
};

inline OrientedGraph build_oriented_graph(int n, std::span<const Arc> arcs) {
  if (n < 0 || n > OrientedGraph::kMaxVertices)
    fail(ErrorCode::TooLarge, "order " + std::to_string(n) + " outside [0, 64]");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n)
      fail(ErrorCode::VertexOutOfRange,
           "arc (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") with n=" + std::to_string(n));
    if (a.from == a.to) fail(ErrorCode::SelfLoop, "self-loop at " + std::to_string(a.from));
    auto& row = rows[static_cast<std::size_t>(a.from)];
    if (row & bit(a.to))
      fail(ErrorCode::DuplicateArc, "arc (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") repeated");
    if (rows[static_cast<std::size_t>(a.to)] & bit(a.from))
      fail(ErrorCode::Digon, "both (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") and reverse");
    row |= bit(a.to);
  }
  return OrientedGraph::from_out_rows(n, rows);
}

inline OrientedGraph build_oriented_graph(int n, std::initializer_list<Arc> arcs) {
  return build_oriented_graph(n, std::span<const Arc>(arcs.begin(), arcs.size()));
}

struct InducedSubgraph {
  OrientedGraph graph;
  std::vector<Vertex> mapping;  // new index -> host vertex, ascending
};

// D[S], with the vertices of S relabelled 0..|S|-1 in ascending order.
inline InducedSubgraph induced(const OrientedGraph& g, VertexSet s) {
  if (!s.subset_of(g.vertices())) fail(ErrorCode::VertexOutOfRange, "subset has vertices outside the graph");
  InducedSubgraph res;
  res.mapping = s.to_vector();
  const int m = static_cast<int>(res.mapping.size());
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (g.has_arc(res.mapping[static_cast<std::size_t>(i)], res.mapping[static_cast<std::size_t>(j)]))
        rows[static_cast<std::size_t>(i)] |= bit(j);
  res.graph = OrientedGraph::from_out_rows(m, rows);
  return res;
}

// Same graph with every arc reversed.
inline OrientedGraph reversed(const OrientedGraph& g) {
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) rows[static_cast<std::size_t>(v)] = g.in_row(v);
  return OrientedGraph::from_out_rows(g.order(), rows);
}

// Vertex v of g becomes vertex perm[v] of the result.
inline OrientedGraph relabeled(const OrientedGraph& g, std::span<const Vertex> perm) {
  const int n = g.order();
  if (perm.size() != static_cast<std::size_t>(n)) fail(ErrorCode::BadParameters, "permutation length mismatch");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for_each_bit(g.out_row(v), [&](int w) {
      rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] |= bit(perm[static_cast<std::size_t>(w)]);
    });
  return OrientedGraph::from_out_rows(n, rows);
}

// Unbounded-order tier used by the regularity lab. Same contract as
// OrientedGraph (no loops, no digons, in-rows transpose out-rows), dense rows.
class LargeOrientedGraph {
 public:
  LargeOrientedGraph() = default;

  static LargeOrientedGraph from_arcs(int n, std::span<const Arc> arcs) {
    if (n < 0) fail(ErrorCode::BadParameters, "negative order");
    LargeOrientedGraph g;
    g.n_ = n;
    g.out_.assign(static_cast<std::size_t>(n), DynamicBitset(static_cast<std::size_t>(n)));
    g.in_.assign(static_cast<std::size_t>(n), DynamicBitset(static_cast<std::size_t>(n)));
    for (const Arc& a : arcs) {
      if (a.from < 0 || a.to < 0 || a.from >= n || a.to >= n)
        fail(ErrorCode::VertexOutOfRange, "arc endpoint outside [0, n)");
      if (a.from == a.to) fail(ErrorCode::SelfLoop, "self-loop at " + std::to_string(a.from));
      if (g.has_arc(a.from, a.to))
        fail(ErrorCode::DuplicateArc, "arc (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") repeated");
      if (g.has_arc(a.to, a.from))
        fail(ErrorCode::Digon, "both (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") and reverse");
      g.out_[static_cast<std::size_t>(a.from)].set(static_cast<std::size_t>(a.to));
      g.in_[static_cast<std::size_t>(a.to)].set(static_cast<std::size_t>(a.from));
    }
    return g;
  }

  static LargeOrientedGraph from_core(const OrientedGraph& g) {
    const auto arcs = g.arcs();
    return from_arcs(g.order(), arcs);
  }

  int order() const { return n_; }
  bool has_arc(Vertex u, Vertex v) const { return out_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v)); }
  bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }
  const DynamicBitset& out_row(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  const DynamicBitset& in_row(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }
  int out_degree(Vertex v) const { return static_cast<int>(out_row(v).count()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_row(v).count()); }

  std::size_t arc_count() const {
    std::size_t c = 0;
    for (const auto& r : out_) c += r.count();
    return c;
  }

  // Minimum degree of the underlying undirected graph.
  int min_degree() const {
    int best = n_ == 0 ? 0 : n_;
    for (int v = 0; v < n_; ++v) best = std::min(best, out_degree(v) + in_degree(v));
    return best;
  }

 private:
  int n_ = 0;
  std::vector<DynamicBitset> out_;
  std::vector<DynamicBitset> in_;
};

// What the walk validator and other tier-agnostic code needs from a graph.
template <class G>
concept DigraphLike = requires(const G& g, Vertex u, Vertex v) {
  { g.order() } -> std::convertible_to<int>;
  { g.has_arc(u, v) } -> std::same_as<bool>;
};

}  // namespace antitrace
