#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "antitrace/bits.hpp"
#include "antitrace/canonical.hpp"
#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"
#include "antitrace/parallel.hpp"

namespace antitrace {

struct EnumFilter {
  std::optional<int> min_degree;             // underlying-graph degree
  std::optional<int> complement_max_degree;  // non-neighbours per vertex
  bool tournaments_only = false;
};

inline constexpr int kEnumMaxTournamentOrder = 10;
inline constexpr int kEnumMaxOrder = 8;
inline constexpr int kEnumMaxSparseComplementOrder = 10;

// Largest number of non-neighbours a vertex may have in an order-n graph
// passing the filter. The bound is hereditary, so it also constrains every
// intermediate order during augmentation.
inline int non_neighbour_cap(const EnumFilter& f, int n) {
  int cap = std::max(0, n - 1);
  if (f.complement_max_degree) {
    if (*f.complement_max_degree < 0) fail(ErrorCode::InfeasibleFilter, "negative complement degree bound");
    if (f.tournaments_only && *f.complement_max_degree > 0)
      fail(ErrorCode::InfeasibleFilter, "tournaments have complement degree 0");
    cap = std::min(cap, *f.complement_max_degree);
  }
  if (f.min_degree) {
    if (*f.min_degree < 0 || (n > 0 && *f.min_degree > n - 1))
      fail(ErrorCode::InfeasibleFilter, "minimum degree must lie in [0, n-1]");
    if (n > 0) cap = std::min(cap, n - 1 - *f.min_degree);
  }
  if (f.tournaments_only) cap = 0;
  return cap;
}

inline bool passes_filter(const OrientedGraph& g, const EnumFilter& f) {
  const int n = g.order();
  const int cap = non_neighbour_cap(f, n);
  for (Vertex v = 0; v < n; ++v)
    if (n - 1 - popcount(g.neighbour_row(v)) > cap) return false;
  return true;
}

// Optional early-abort predicate run on each candidate child before any
// canonical work. `added` is the vertex just attached (always the last index).
// It must be hereditary: rejecting a graph must imply rejecting all of its
// one-vertex extensions, otherwise classes are silently lost.
using PruneHook = std::function<bool(const OrientedGraph& child, Vertex added)>;

struct LevelStats {
  std::uint64_t candidates = 0;  // children passing the filter
  std::uint64_t pruned = 0;      // rejected by the hook
  std::uint64_t accepted = 0;    // new isomorphism classes
};

namespace detail {

inline std::array<std::uint64_t, 64> degree_key(const OrientedGraph& g, Vertex skip) {
  std::array<std::uint64_t, 64> key{};
  const std::uint64_t keep = ~(skip >= 0 ? bit(skip) : 0);
  int at = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (v == skip) continue;
    key[static_cast<std::size_t>(at++)] = static_cast<std::uint64_t>(popcount(g.out_row(v) & keep)) << 8 |
                                          static_cast<std::uint64_t>(popcount(g.in_row(v) & keep));
  }
  std::sort(key.begin(), key.begin() + at);
  return key;
}

inline bool same_orbit(const std::vector<Permutation>& gens, int n, Vertex a, Vertex b) {
  if (a == b) return true;
  std::uint64_t reached = bit(a);
  std::uint64_t frontier = reached;
  while (frontier) {
    std::uint64_t next = 0;
    for_each_bit(frontier, [&](int v) {
      for (const auto& p : gens) next |= bit(p[static_cast<std::size_t>(v)]);
    });
    next &= ~reached & low_bits(n);
    reached |= next;
    frontier = next;
  }
  return (reached >> b) & 1U;
}

// All children of one parent accepted by canonical augmentation: the new
// vertex must be equivalent to the vertex placed last by canonical labeling,
// equivalently deleting that vertex must give back the parent's class.
inline std::vector<CanonicalCode> augment_parent(const CanonicalCode& parent_code, int cap, const PruneHook& prune,
                                                 LevelStats& stats) {
  const OrientedGraph parent = decode_canonical_code(parent_code);
  const int m = parent.order();
  const int n = m + 1;
  const Vertex v = m;
  const auto parent_key = degree_key(parent, -1);
  std::array<int, 64> missing{};
  std::uint64_t room = 0;  // vertices that may gain a non-neighbour
  for (Vertex i = 0; i < m; ++i) {
    missing[static_cast<std::size_t>(i)] = m - 1 - popcount(parent.neighbour_row(i));
    if (missing[static_cast<std::size_t>(i)] < cap) room |= bit(i);
  }
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  std::unordered_set<CanonicalCode> seen;
  std::vector<CanonicalCode> out;
  const std::uint64_t all = low_bits(m);

  auto try_child = [&](std::uint64_t none, std::uint64_t outs) {
    const std::uint64_t ins = all & ~none & ~outs;
    for (Vertex i = 0; i < m; ++i) rows[static_cast<std::size_t>(i)] = parent.out_row(i) | ((ins >> i) & 1U ? bit(v) : 0);
    rows[static_cast<std::size_t>(v)] = outs;
    const auto child = OrientedGraph::from_out_rows(n, rows);
    ++stats.candidates;
    if (prune && !prune(child, v)) {
      ++stats.pruned;
      return;
    }
    auto lab = canonical_labeling(child);
    const Vertex last = lab.order.back();
    bool accept = same_orbit(lab.generators, n, v, last);
    if (!accept && degree_key(child, last) == parent_key) {
      const auto minus = induced(child, VertexSet::all(n).without(last)).graph;
      accept = canonical_code(minus) == parent_code;
    }
    if (!accept) return;
    if (seen.insert(lab.code).second) out.push_back(std::move(lab.code));
  };

  // Non-neighbour sets of the new vertex: at most `cap` vertices, each with room.
  for (std::uint64_t none = 0; none <= all; ++none) {
    if (popcount(none) > cap || (none & ~room)) continue;
    const std::uint64_t rest = all & ~none;
    std::uint64_t outs = rest;
    for (;;) {
      try_child(none, outs);
      if (outs == 0) break;
      outs = (outs - 1) & rest;
    }
    if (all == 0) break;
  }
  stats.accepted += out.size();
  return out;
}

}  // namespace detail

// One augmentation step: every class of order m+1 whose canonical parent is
// in `parents` (all of order m) and which passes the cap and the hook. Output
// is sorted by canonical code; parents are independent work units.
inline std::vector<CanonicalCode> augment_level(const std::vector<CanonicalCode>& parents, int cap,
                                                const PruneHook& prune = {}, int threads = 0,
                                                LevelStats* stats = nullptr) {
  std::vector<std::vector<CanonicalCode>> parts(parents.size());
  std::vector<LevelStats> part_stats(parents.size());
  parallel_for(parents.size(), threads, [&](std::size_t i) {
    parts[i] = detail::augment_parent(parents[i], cap, prune, part_stats[i]);
  });
  std::vector<CanonicalCode> level;
  LevelStats total;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    total.candidates += part_stats[i].candidates;
    total.pruned += part_stats[i].pruned;
    total.accepted += part_stats[i].accepted;
    for (auto& c : parts[i]) level.push_back(std::move(c));
  }
  std::sort(level.begin(), level.end());
  if (stats) *stats = total;
  return level;
}

// Grows classes from the single vertex up to order n, calling
// on_level(order, codes) after each order. Returning false from on_level
// stops early.
inline void for_each_level(int n, int cap, const PruneHook& prune, int threads,
                           const std::function<bool(int, const std::vector<CanonicalCode>&, const LevelStats&)>& on_level) {
  if (n < 1) return;
  std::vector<CanonicalCode> level{canonical_code(OrientedGraph(1))};
  LevelStats stats{1, 0, 1};
  if (prune && !prune(OrientedGraph(1), 0)) {
    level.clear();
    stats = {1, 1, 0};
  }
  if (!on_level(1, level, stats)) return;
  for (int order = 2; order <= n; ++order) {
    level = augment_level(level, cap, prune, threads, &stats);
    if (!on_level(order, level, stats)) return;
  }
}

inline void check_enumeration_size(int n, int cap) {
  if (n < 0) fail(ErrorCode::BadParameters, "negative order");
  const int limit = cap == 0 ? kEnumMaxTournamentOrder : cap <= 2 ? kEnumMaxSparseComplementOrder : kEnumMaxOrder;
  if (n > limit)
    fail(ErrorCode::TooLarge, "order " + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limit));
}

inline std::vector<CanonicalCode> enumerate_codes(int n, const EnumFilter& filter, int threads = 0,
                                                  const PruneHook& prune = {}) {
  const int cap = non_neighbour_cap(filter, n);
  check_enumeration_size(n, cap);
  if (n == 0) return {canonical_code(OrientedGraph(0))};
  std::vector<CanonicalCode> result;
  for_each_level(n, cap, prune, threads, [&](int order, const std::vector<CanonicalCode>& codes, const LevelStats&) {
    if (order == n) result = codes;
    return true;
  });
  return result;
}

inline std::vector<OrientedGraph> decode_all(const std::vector<CanonicalCode>& codes) {
  std::vector<OrientedGraph> out;
  out.reserve(codes.size());
  for (const auto& c : codes) out.push_back(decode_canonical_code(c));
  return out;
}

inline std::vector<OrientedGraph> enumerate_oriented_graphs(int n, const EnumFilter& filter = {}, int threads = 0) {
  return decode_all(enumerate_codes(n, filter, threads));
}

inline std::vector<OrientedGraph> enumerate_tournaments(int n, int threads = 0) {
  EnumFilter f;
  f.tournaments_only = true;
  return enumerate_oriented_graphs(n, f, threads);
}

}  // namespace antitrace
