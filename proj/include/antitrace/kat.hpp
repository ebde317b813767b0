#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antitrace/anti_walk.hpp"
#include "antitrace/bits.hpp"
#include "antitrace/enumeration.hpp"
#include "antitrace/error.hpp"
#include "antitrace/generators.hpp"
#include "antitrace/graph.hpp"
#include "antitrace/solver.hpp"

namespace antitrace {

// ---------------------------------------------------------------------------
// Small-subset anti-traceability

namespace detail {

inline constexpr int kSmallTableMax = 5;

// Pair states (i<j, row-major): 0 = non-adjacent, 1 = i->j, 2 = j->i.
inline std::uint32_t pair_key(const OrientedGraph& g, const Vertex* vs, int k) {
  std::uint32_t key = 0, weight = 1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (g.has_arc(vs[i], vs[j])) key += weight;
      else if (g.has_arc(vs[j], vs[i])) key += 2 * weight;
      weight *= 3;
    }
  return key;
}

// Anti-traceability of every labeled oriented graph on k <= 5 vertices.
inline const std::vector<std::uint8_t>& small_table(int k) {
  static const auto tables = [] {
    std::array<std::vector<std::uint8_t>, kSmallTableMax + 1> t;
    for (int k = 1; k <= kSmallTableMax; ++k) {
      const int pairs = k * (k - 1) / 2;
      std::uint32_t size = 1;
      for (int i = 0; i < pairs; ++i) size *= 3;
      t[static_cast<std::size_t>(k)].resize(size);
      std::vector<std::uint64_t> rows(static_cast<std::size_t>(k));
      for (std::uint32_t code = 0; code < size; ++code) {
        std::fill(rows.begin(), rows.end(), 0);
        std::uint32_t c = code;
        for (int i = 0; i < k; ++i)
          for (int j = i + 1; j < k; ++j) {
            if (c % 3 == 1) rows[static_cast<std::size_t>(i)] |= bit(j);
            if (c % 3 == 2) rows[static_cast<std::size_t>(j)] |= bit(i);
            c /= 3;
          }
        t[static_cast<std::size_t>(k)][code] = is_anti_traceable(OrientedGraph::from_out_rows(k, rows));
      }
    }
    return t;
  }();
  return tables[static_cast<std::size_t>(k)];
}

}  // namespace detail

// Anti-traceability of the subgraph induced by `mask`.
inline bool subset_anti_traceable(const OrientedGraph& g, std::uint64_t mask) {
  const int k = popcount(mask);
  if (k == 0 || k > detail::kSmallTableMax) return anti_traceable_within(g, mask);
  std::array<Vertex, detail::kSmallTableMax> vs{};
  int i = 0;
  for_each_bit(mask, [&](int v) { vs[static_cast<std::size_t>(i++)] = v; });
  return detail::small_table(k)[detail::pair_key(g, vs.data(), k)] != 0;
}

// ---------------------------------------------------------------------------
// k-anti-traceability

inline constexpr std::uint64_t kKatDefaultBudget = 50'000'000;

struct KatOptions {
  std::optional<std::uint64_t> samples;  // sampled mode when set
  std::uint64_t seed = 0;
  std::uint64_t budget = kKatDefaultBudget;  // exhaustive subset limit
};

struct KatVerdict {
  int k = 0;
  bool sampled = false;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  bool holds = true;
  std::optional<VertexSet> witness;  // failing subset when holds is false
  std::uint64_t subsets_checked = 0;
};

inline void check_k(const OrientedGraph& g, int k) {
  if (k < 1) fail(ErrorCode::BadParameters, "k must be positive");
  if (k > g.order())
    fail(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds order " + std::to_string(g.order()));
  if (k > kSolverDefaultMaxOrder) fail(ErrorCode::KTooLarge, "k above the solver limit");
}

// Exhaustive mode walks k-subsets in colex order and stops at the first
// failure; sampled mode draws seeded uniform k-subsets.
inline KatVerdict is_k_at(const OrientedGraph& g, int k, const KatOptions& opts = {}) {
  check_k(g, k);
  KatVerdict v;
  v.k = k;
  auto check = [&](std::uint64_t mask) {
    ++v.subsets_checked;
    if (subset_anti_traceable(g, mask)) return true;
    v.holds = false;
    v.witness = VertexSet(mask);
    return false;
  };
  if (opts.samples) {
    if (*opts.samples < 1) fail(ErrorCode::BadParameters, "sample count must be at least 1");
    v.sampled = true;
    v.sample_count = *opts.samples;
    v.seed = opts.seed;
    Rng rng(opts.seed);
    for (std::uint64_t i = 0; i < *opts.samples; ++i) {
      const auto pick = rng.sample(g.order(), k);
      if (!check(VertexSet::from(pick).bits())) break;
    }
    return v;
  }
  const std::uint64_t total = binomial(g.order(), k);
  if (total > opts.budget)
    fail(ErrorCode::Overflow, std::to_string(total) + " subsets exceed the budget; use sampling");
  const int n = g.order();
  for (std::uint64_t m = low_bits(k);;) {
    if (!check(m)) break;
    if (k == n) break;
    m = next_combination(m);
    if (m >> n) break;
  }
  return v;
}

// Hereditary augmentation hook: once the child reaches order k, every
// k-subset through the new vertex must be anti-traceable.
inline PruneHook kat_prune_hook(int k) {
  return [k](const OrientedGraph& g, Vertex added) {
    const int n = g.order();
    if (n < k) return true;
    const std::uint64_t others = low_bits(n) & ~bit(added);
    if (k == 1) return true;
    // (k-1)-subsets of the other vertices via colex ranks over their indices.
    std::array<Vertex, 64> idx{};
    int m = 0;
    for_each_bit(others, [&](int v) { idx[static_cast<std::size_t>(m++)] = v; });
    for (std::uint64_t c = low_bits(k - 1); !(c >> m); c = next_combination(c)) {
      std::uint64_t mask = bit(added);
      for_each_bit(c, [&](int i) { mask |= bit(idx[static_cast<std::size_t>(i)]); });
      if (!subset_anti_traceable(g, mask)) return false;
      if (k - 1 == m) break;
    }
    return true;
  };
}

// ---------------------------------------------------------------------------
// Independence number

namespace detail {

inline void max_independent(const OrientedGraph& g, std::uint64_t cand, std::uint64_t chosen, int& best,
                            std::uint64_t& best_set) {
  if (popcount(chosen) + popcount(cand) <= best) return;
  if (cand == 0) {
    best = popcount(chosen);
    best_set = chosen;
    return;
  }
  // Vertices with no neighbour among the candidates always join.
  std::uint64_t free = 0;
  for_each_bit(cand, [&](int v) {
    if ((g.neighbour_row(v) & cand) == 0) free |= bit(v);
  });
  if (free) return max_independent(g, cand & ~free, chosen | free, best, best_set);
  // Branch on the vertex with the most candidate neighbours.
  int pivot = -1, deg = -1;
  for_each_bit(cand, [&](int v) {
    const int d = popcount(g.neighbour_row(v) & cand);
    if (d > deg) deg = d, pivot = v;
  });
  max_independent(g, cand & ~bit(pivot) & ~g.neighbour_row(pivot), chosen | bit(pivot), best, best_set);
  max_independent(g, cand & ~bit(pivot), chosen, best, best_set);
}

}  // namespace detail

struct IndependenceResult {
  int size = 0;
  VertexSet witness;
};

// Exact alpha(D): maximum clique of the underlying complement, by branching.
inline IndependenceResult independence_number(const OrientedGraph& g) {
  int best = 0;
  std::uint64_t set = 0;
  detail::max_independent(g, low_bits(g.order()), 0, best, set);
  return {best, VertexSet(set)};
}

// ---------------------------------------------------------------------------
// 3-AT recognition and anti-cycles

struct BlockDecomposition {
  std::vector<VertexSet> blocks;  // transitive order: all arcs go forward

  std::vector<int> sizes() const {
    std::vector<int> s;
    for (auto b : blocks) s.push_back(b.size());
    return s;
  }
};

// Extended transitive tournament with blocks of size <= 2, or nothing.
inline std::optional<BlockDecomposition> recognize_3at(const OrientedGraph& g) {
  const int n = g.order();
  if (n < 1) fail(ErrorCode::BadParameters, "empty graph");
  const std::uint64_t all = low_bits(n);
  std::vector<std::pair<int, std::uint64_t>> blocks;  // (out-degree, members)
  std::uint64_t placed = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (placed & bit(v)) continue;
    const std::uint64_t non = all & ~g.neighbour_row(v) & ~bit(v);
    if (popcount(non) > 1) return std::nullopt;
    const std::uint64_t block = bit(v) | non;
    placed |= block;
    blocks.emplace_back(g.out_degree(v), block);
  }
  std::sort(blocks.begin(), blocks.end(), [](auto& a, auto& b) { return a.first > b.first; });
  // Every vertex must beat exactly the vertices of all later blocks.
  std::uint64_t later = all;
  BlockDecomposition d;
  for (const auto& [deg, block] : blocks) {
    later &= ~block;
    bool ok = true;
    for_each_bit(block, [&](int v) { ok = ok && g.out_row(v) == later; });
    if (!ok) return std::nullopt;
    d.blocks.emplace_back(block);
  }
  return d;
}

struct ThreeAtWitness {
  std::optional<AntiWalk> cycle;   // spanning (even order) or on n-1 vertices (odd order)
  AntiWalk path;                   // spanning anti-path
  std::optional<ErrorCode> status; // NoCycle exactly for T_4
};

namespace detail {

// Acyclic order of a 3-AT graph: vertices listed block by block.
inline std::vector<Vertex> acyclic_order(const BlockDecomposition& d) {
  std::vector<Vertex> order;
  for (auto b : d.blocks)
    for (Vertex v : b.to_vector()) order.push_back(v);
  return order;
}

inline bool is_t4_shape(const BlockDecomposition& d) { return d.sizes() == std::vector<int>{1, 2, 1}; }

// Spanning anti-cycle of a 3-AT graph of even order >= 4 (not T_4) on the
// vertex set `verts` of g.
inline std::vector<Vertex> three_at_cycle(const OrientedGraph& g, std::uint64_t verts) {
  const auto sub = induced(g, VertexSet(verts));
  const auto d = *recognize_3at(sub.graph);
  const auto order = acyclic_order(d);
  auto host = [&](Vertex local) { return sub.mapping[static_cast<std::size_t>(local)]; };
  const int n = sub.graph.order();
  if (n == 4) {
    // The last two vertices are common out-neighbours of the first two.
    return {host(order[0]), host(order[2]), host(order[1]), host(order[3])};
  }
  const Vertex u = host(order.front());  // source
  const Vertex v = host(order.back());   // sink
  const std::uint64_t rest = verts & ~bit(u) & ~bit(v);
  if (n == 6) {
    // v1 -> v2 <- v3 -> v4 on the inner four, then u v v1 v2 v3 v4.
    const auto inner = induced(g, VertexSet(rest));
    auto p = *anti_hamiltonian_path(inner.graph);
    if (p.pattern.front() == ArcDirection::Backward) p = reverse_walk(p);
    std::vector<Vertex> c{u, v};
    for (Vertex x : p.vertices) c.push_back(inner.mapping[static_cast<std::size_t>(x)]);
    return c;
  }
  // Splice u, v across an arc c_i -> c_{i+1} of the inner cycle.
  const auto inner = three_at_cycle(g, rest);
  const std::size_t m = inner.size();
  std::size_t i = 0;
  while (!g.has_arc(inner[i], inner[(i + 1) % m])) ++i;
  std::vector<Vertex> c{u, v};
  for (std::size_t step = 0; step < m; ++step) c.push_back(inner[(i + m - step) % m]);
  return c;
}

}  // namespace detail

// Anti-cycles of 3-AT graphs following the inductive construction: strip a
// source and a sink, recurse, splice them back across an arc of the inner
// cycle. Odd orders delete one vertex for the cycle and add a universal sink
// for the spanning path.
inline ThreeAtWitness build_3at_anti_cycle(const OrientedGraph& g) {
  const int n = g.order();
  const auto d = recognize_3at(g);
  if (!d) fail(ErrorCode::Not3AT, "graph is not an extended transitive tournament with blocks of size <= 2");
  if (n < 4) fail(ErrorCode::BadParameters, "need at least 4 vertices");
  ThreeAtWitness w;
  const std::uint64_t all = low_bits(n);
  if (n == 4 && detail::is_t4_shape(*d)) {
    w.status = ErrorCode::NoCycle;
    w.path = *anti_hamiltonian_path(g);
    return w;
  }
  if (n % 2 == 0) {
    auto cycle = walk_from_vertices(g, detail::three_at_cycle(g, all), true);
    w.path = cycle;
    w.path.is_cycle = false;
    w.cycle = std::move(cycle);
    return w;
  }
  // Odd order: drop a vertex whose removal keeps the remainder away from T_4.
  Vertex drop = detail::acyclic_order(*d).back();
  if (n == 5) {
    const auto order = detail::acyclic_order(*d);
    for (Vertex cand : {order.back(), order.front()}) {
      if (!detail::is_t4_shape(*recognize_3at(induced(g, VertexSet(all & ~bit(cand))).graph))) {
        drop = cand;
        break;
      }
    }
  }
  w.cycle = walk_from_vertices(g, detail::three_at_cycle(g, all & ~bit(drop)), true);
  // Universal sink v*: D* stays 3-AT and has even order.
  std::vector<std::uint64_t> rows(g.out_rows().begin(), g.out_rows().end());
  for (auto& r : rows) r |= bit(n);
  rows.push_back(0);
  const auto star = OrientedGraph::from_out_rows(n + 1, rows);
  auto c = detail::three_at_cycle(star, low_bits(n + 1));
  const auto pos = std::find(c.begin(), c.end(), n) - c.begin();
  std::rotate(c.begin(), c.begin() + pos + 1, c.end());
  c.pop_back();
  w.path = walk_from_vertices(g, std::move(c), false);
  return w;
}

// ---------------------------------------------------------------------------
// X/Y family

struct XYPathResult {
  AntiWalk walk;          // host vertex indices
  int t = 0;              // |K intersect X|
  bool fallback = false;  // endpoint orientation had to be repaired
};

namespace detail {

// Anti-path on the tournament induced by `verts` that ends at u with u -> v
// as its last arc (v second to last), or nothing if the solver's path
// orients both end arcs the other way.
inline std::optional<std::vector<Vertex>> path_ending_at_tail(const OrientedGraph& g, std::uint64_t verts) {
  if (verts == 0) return std::vector<Vertex>{};
  const auto sub = induced(g, VertexSet(verts));
  const auto p = anti_hamiltonian_path(sub.graph);
  if (!p) return std::nullopt;
  std::vector<Vertex> vs;
  for (Vertex x : p->vertices) vs.push_back(sub.mapping[static_cast<std::size_t>(x)]);
  if (vs.size() == 1) return std::nullopt;
  const std::size_t s = vs.size();
  if (g.has_arc(vs[s - 1], vs[s - 2])) return vs;  // x_s -> x_{s-1}
  if (g.has_arc(vs[0], vs[1])) {                   // x_1 -> x_2
    std::reverse(vs.begin(), vs.end());
    return vs;
  }
  return std::nullopt;
}

}  // namespace detail

// Spanning anti-path of D[K] by the reservation procedure: thread t X
// vertices through t-1 reserved Y vertices and attach a tournament anti-path
// on the remaining Y vertices at a vertex u with an out-arc along that path.
inline XYPathResult xy_anti_path(const XYInstance& inst, VertexSet k_set) {
  const auto& g = inst.graph;
  if (!k_set.subset_of(g.vertices())) fail(ErrorCode::VertexOutOfRange, "K is not a vertex subset");
  if (k_set.size() != inst.k)
    fail(ErrorCode::WrongSubsetSize, "|K| = " + std::to_string(k_set.size()) + ", expected " + std::to_string(inst.k));
  XYPathResult res;
  const auto kx = (k_set & inst.x).to_vector();
  const auto ky = (k_set & inst.y).to_vector();
  const int t = static_cast<int>(kx.size());
  res.t = t;
  auto solve_directly = [&]() {
    const auto sub = induced(g, k_set);
    const auto p = anti_hamiltonian_path(sub.graph);
    if (!p) fail(ErrorCode::NotKAT, "induced subgraph has no anti-path");
    std::vector<Vertex> vs;
    for (Vertex x : p->vertices) vs.push_back(sub.mapping[static_cast<std::size_t>(x)]);
    return walk_from_vertices(g, std::move(vs), false);
  };
  if (t == 0) {
    res.walk = solve_directly();
    return res;
  }
  const std::vector<Vertex> reserved(ky.begin(), ky.begin() + (t - 1));
  std::vector<Vertex> free_y(ky.begin() + (t - 1), ky.end());
  const int m = inst.k - 2 * t + 1;  // == free_y.size()
  std::vector<Vertex> threaded;      // x_1 r_1 x_2 ... r_{t-1} x_t
  for (int i = 0; i < t; ++i) {
    threaded.push_back(kx[static_cast<std::size_t>(i)]);
    if (i + 1 < t) threaded.push_back(reserved[static_cast<std::size_t>(i)]);
  }
  std::vector<Vertex> seq;
  std::optional<std::vector<Vertex>> tail;
  if (m % 2 == 0) {
    tail = detail::path_ending_at_tail(g, VertexSet::from(free_y).bits());
    if (tail) {
      seq = *tail;  // ..., v, u
      seq.insert(seq.end(), threaded.begin(), threaded.end());
    }
  } else {
    const Vertex a = free_y.front();
    free_y.erase(free_y.begin());
    tail = detail::path_ending_at_tail(g, VertexSet::from(free_y).bits());
    if (tail) {
      seq.push_back(a);
      seq.insert(seq.end(), threaded.begin(), threaded.end());
      seq.insert(seq.end(), tail->rbegin(), tail->rend());  // u, v, ...
    }
  }
  if (tail) {
    res.walk = walk_from_vertices(g, std::move(seq), false);
    if (validate_anti_walk(g, res.walk)) return res;
  }
  res.fallback = true;
  res.walk = solve_directly();
  return res;
}

}  // namespace antitrace
