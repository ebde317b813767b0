#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "antitrace/anti_walk.hpp"
#include "antitrace/bits.hpp"
#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"

namespace antitrace {

// Exact anti-directed path search by dynamic programming over
// (visited set, last vertex, orientation of last arc). The table for a set S
// and orientation d is a bitmask of the vertices that can end an anti-path
// covering exactly S whose final arc has orientation d. A path's first arc may
// point either way, so single-vertex states are seeded in both orientations.

inline constexpr int kSolverDefaultMaxOrder = 24;
inline constexpr int kSolverHardMaxOrder = 26;

struct SolveOptions {
  // Lifts the 24-vertex cap (up to 26); the table needs 2^(n+3) bytes.
  bool allow_large = false;
};

namespace detail {

inline void check_solver_size(int n, const SolveOptions& opts) {
  const int cap = opts.allow_large ? kSolverHardMaxOrder : kSolverDefaultMaxOrder;
  if (n > cap)
    fail(ErrorCode::TooLarge, "anti-path DP limited to " + std::to_string(cap) + " vertices, got " + std::to_string(n));
}

constexpr std::size_t dir_index(ArcDirection d) { return d == ArcDirection::Forward ? 0 : 1; }

}  // namespace detail

class AntiPathTable {
 public:
  // Seeds: for each vertex v in `starts`, the single-vertex path (v); its
  // first arc may take any orientation in `first_arcs` (empty = both).
  static AntiPathTable build(const OrientedGraph& g, std::uint64_t starts,
                             std::optional<ArcDirection> first_arc = std::nullopt, const SolveOptions& opts = {}) {
    detail::check_solver_size(g.order(), opts);
    AntiPathTable t;
    t.n_ = g.order();
    t.out_.resize(static_cast<std::size_t>(t.n_));
    t.in_.resize(static_cast<std::size_t>(t.n_));
    for (int v = 0; v < t.n_; ++v) {
      t.out_[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.out_row(v));
      t.in_[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.in_row(v));
    }
    if (t.n_ == 0) return t;
    const std::size_t masks = std::size_t{1} << t.n_;
    t.table_.assign(masks * 2, 0);
    // A seed in state d means the next arc must be flip(d).
    for_each_bit(starts, [&](int v) {
      const std::size_t m = std::size_t{1} << v;
      if (!first_arc || *first_arc == ArcDirection::Backward) t.table_[m * 2 + 0] |= 1U << v;
      if (!first_arc || *first_arc == ArcDirection::Forward) t.table_[m * 2 + 1] |= 1U << v;
    });
    for (std::size_t mask = 3; mask < masks; ++mask) {
      if ((mask & (mask - 1)) == 0) continue;
      std::uint32_t fwd = 0;
      std::uint32_t bwd = 0;
      for_each_bit(mask, [&](int w) {
        const std::size_t prev = mask ^ (std::size_t{1} << w);
        if (t.in_[static_cast<std::size_t>(w)] & t.table_[prev * 2 + 1]) fwd |= 1U << w;
        if (t.out_[static_cast<std::size_t>(w)] & t.table_[prev * 2 + 0]) bwd |= 1U << w;
      });
      t.table_[mask * 2 + 0] = fwd;
      t.table_[mask * 2 + 1] = bwd;
    }
    return t;
  }

  int order() const { return n_; }

  std::uint32_t ends(std::uint64_t mask, ArcDirection last) const {
    if (n_ == 0) return 0;
    return table_[static_cast<std::size_t>(mask) * 2 + detail::dir_index(last)];
  }
  std::uint32_t ends(std::uint64_t mask) const {
    return ends(mask, ArcDirection::Forward) | ends(mask, ArcDirection::Backward);
  }

  // Largest number of vertices on a path reachable from the seeds (0 if none).
  int max_order() const {
    int best = 0;
    const std::size_t masks = n_ == 0 ? 0 : std::size_t{1} << n_;
    for (std::size_t m = 1; m < masks; ++m)
      if ((table_[m * 2] | table_[m * 2 + 1]) != 0) best = std::max(best, std::popcount(m));
    return best;
  }

  // Sets of the given size covered by some path.
  std::vector<std::uint64_t> masks_of_order(int k) const {
    std::vector<std::uint64_t> out;
    if (k <= 0 || k > n_) return out;
    for (std::uint64_t m = low_bits(k); m < (std::uint64_t{1} << n_); m = next_combination(m)) {
      if (ends(m) != 0) out.push_back(m);
      if (k == n_) break;
    }
    return out;
  }

  // Walks back through predecessors, always taking the smallest vertex.
  AntiWalk reconstruct(std::uint64_t mask, Vertex end, ArcDirection last) const {
    std::vector<Vertex> rev{end};
    std::vector<ArcDirection> rev_pattern;
    while ((mask & (mask - 1)) != 0) {
      const std::uint64_t prev = mask ^ bit(end);
      const ArcDirection prev_dir = flip(last);
      const std::uint32_t arc_ok = last == ArcDirection::Forward ? in_[static_cast<std::size_t>(end)]
                                                                 : out_[static_cast<std::size_t>(end)];
      const std::uint32_t cand = ends(prev, prev_dir) & arc_ok;
      rev_pattern.push_back(last);
      end = std::countr_zero(cand);
      rev.push_back(end);
      mask = prev;
      last = prev_dir;
    }
    AntiWalk w;
    w.vertices.assign(rev.rbegin(), rev.rend());
    w.pattern.assign(rev_pattern.rbegin(), rev_pattern.rend());
    return w;
  }

  // Tie-break for witnesses on a set: smallest end vertex, Forward first.
  std::optional<AntiWalk> witness(std::uint64_t mask) const {
    const std::uint32_t e = ends(mask);
    if (e == 0) return std::nullopt;
    const Vertex end = std::countr_zero(e);
    const ArcDirection last =
        (ends(mask, ArcDirection::Forward) >> end) & 1U ? ArcDirection::Forward : ArcDirection::Backward;
    return reconstruct(mask, end, last);
  }

 private:
  int n_ = 0;
  std::vector<std::uint32_t> out_, in_;
  std::vector<std::uint32_t> table_;
};

inline std::optional<AntiWalk> anti_hamiltonian_path(const OrientedGraph& g, const SolveOptions& opts = {}) {
  if (g.order() == 0) return std::nullopt;
  const auto t = AntiPathTable::build(g, low_bits(g.order()), std::nullopt, opts);
  return t.witness(low_bits(g.order()));
}

inline bool is_anti_traceable(const OrientedGraph& g, const SolveOptions& opts = {}) {
  if (g.order() == 0) return false;
  const auto t = AntiPathTable::build(g, low_bits(g.order()), std::nullopt, opts);
  return t.ends(low_bits(g.order())) != 0;
}

inline std::optional<AntiWalk> anti_hamiltonian_path_from(const OrientedGraph& g, Vertex v,
                                                          const SolveOptions& opts = {}) {
  if (v < 0 || v >= g.order())
    fail(ErrorCode::VertexOutOfRange, "start vertex " + std::to_string(v) + " outside graph");
  const auto t = AntiPathTable::build(g, bit(v), std::nullopt, opts);
  return t.witness(low_bits(g.order()));
}

// Vertices that start (equivalently, end) some hamiltonian anti-path. One DP
// covers all starts because reversing an anti-path gives an anti-path.
inline std::uint64_t anti_hamiltonian_start_vertices(const OrientedGraph& g, const SolveOptions& opts = {}) {
  if (g.order() == 0) return 0;
  const auto t = AntiPathTable::build(g, low_bits(g.order()), std::nullopt, opts);
  return t.ends(low_bits(g.order()));
}

// Spanning alternating cycle; exists only for even order >= 4.
inline std::optional<AntiWalk> anti_hamiltonian_cycle(const OrientedGraph& g, const SolveOptions& opts = {}) {
  const int n = g.order();
  detail::check_solver_size(n, opts);
  if (n < 4 || n % 2 != 0) return std::nullopt;
  const std::uint64_t full = low_bits(n);
  // Vertex 0 is on every spanning cycle; try it as a source, then as a sink.
  for (ArcDirection first : {ArcDirection::Forward, ArcDirection::Backward}) {
    const auto t = AntiPathTable::build(g, bit(0), first, opts);
    // n-1 arcs starting with `first` end with `first` (n even); the closing
    // arc must be flip(first).
    const std::uint64_t closing_ok = first == ArcDirection::Forward ? g.out_row(0) : g.in_row(0);
    const std::uint32_t e = t.ends(full, first) & static_cast<std::uint32_t>(closing_ok);
    if (e == 0) continue;
    AntiWalk w = t.reconstruct(full, std::countr_zero(e), first);
    // Traverse from vertex 0 towards its smaller cycle neighbour.
    auto& vs = w.vertices;
    if (vs[1] > vs.back()) std::reverse(vs.begin() + 1, vs.end());
    return walk_from_vertices(g, std::move(vs), true);
  }
  return std::nullopt;
}

inline AntiWalk longest_anti_path(const OrientedGraph& g, const SolveOptions& opts = {}) {
  if (g.order() == 0) fail(ErrorCode::BadParameters, "empty graph has no anti-path");
  const auto t = AntiPathTable::build(g, low_bits(g.order()), std::nullopt, opts);
  const int best = t.max_order();
  for (std::uint64_t m : t.masks_of_order(best)) return *t.witness(m);
  fail(ErrorCode::BadParameters, "unreachable");
}

// A maximum-order anti-path described by its endpoints and end-arc orientations.
struct EndpointState {
  Vertex start;
  Vertex end;
  ArcDirection first;  // orientation of the first arc
  ArcDirection last;   // orientation of the last arc
  std::uint64_t mask;  // vertex set covered
};

struct LongestPathStates {
  int max_order = 0;
  std::vector<EndpointState> states;
};

// Every (start, first arc, covered set, end, last arc) combination realised by
// a maximum-order anti-path. Needs one table per start and first-arc
// orientation, so it is meant for small graphs.
inline LongestPathStates longest_anti_path_states(const OrientedGraph& g, const SolveOptions& opts = {}) {
  LongestPathStates res;
  const int n = g.order();
  if (n == 0) return res;
  res.max_order = AntiPathTable::build(g, low_bits(n), std::nullopt, opts).max_order();
  if (res.max_order < 2) {
    for (Vertex v = 0; v < n; ++v)
      res.states.push_back({v, v, ArcDirection::Forward, ArcDirection::Forward, bit(v)});
    return res;
  }
  for (Vertex s = 0; s < n; ++s) {
    for (ArcDirection first : {ArcDirection::Forward, ArcDirection::Backward}) {
      const auto t = AntiPathTable::build(g, bit(s), first, opts);
      for (std::uint64_t m : t.masks_of_order(res.max_order)) {
        if (!(m & bit(s))) continue;
        for (ArcDirection last : {ArcDirection::Forward, ArcDirection::Backward})
          for_each_bit(t.ends(m, last), [&](int e) { res.states.push_back({s, e, first, last, m}); });
      }
    }
  }
  return res;
}

// Anti-traceability of the subgraph induced by `subset`, without building it.
inline bool anti_traceable_within(const OrientedGraph& g, std::uint64_t subset) {
  const int k = popcount(subset);
  if (k == 0) return false;
  if (k == 1) return true;
  detail::check_solver_size(k, {});
  std::array<Vertex, 64> verts{};
  int idx = 0;
  for_each_bit(subset, [&](int v) { verts[static_cast<std::size_t>(idx++)] = v; });
  std::array<std::uint32_t, kSolverHardMaxOrder> out{}, in{};
  for (int i = 0; i < k; ++i) {
    const Vertex v = verts[static_cast<std::size_t>(i)];
    for (int j = 0; j < k; ++j) {
      const Vertex w = verts[static_cast<std::size_t>(j)];
      if (g.has_arc(v, w)) {
        out[static_cast<std::size_t>(i)] |= 1U << j;
        in[static_cast<std::size_t>(j)] |= 1U << i;
      }
    }
  }
  thread_local std::vector<std::uint32_t> table;
  const std::size_t masks = std::size_t{1} << k;
  table.assign(masks * 2, 0);
  for (int v = 0; v < k; ++v) table[(std::size_t{1} << v) * 2] = table[(std::size_t{1} << v) * 2 + 1] = 1U << v;
  for (std::size_t mask = 3; mask < masks; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    std::uint32_t fwd = 0;
    std::uint32_t bwd = 0;
    for_each_bit(mask, [&](int w) {
      const std::size_t prev = mask ^ (std::size_t{1} << w);
      if (in[static_cast<std::size_t>(w)] & table[prev * 2 + 1]) fwd |= 1U << w;
      if (out[static_cast<std::size_t>(w)] & table[prev * 2 + 0]) bwd |= 1U << w;
    });
    table[mask * 2] = fwd;
    table[mask * 2 + 1] = bwd;
  }
  return (table[(masks - 1) * 2] | table[(masks - 1) * 2 + 1]) != 0;
}

}  // namespace antitrace
