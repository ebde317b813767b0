#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "antitrace/bits.hpp"
#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"

namespace antitrace {

namespace detail {

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace detail

// Paley tournament on Z_q: i -> j iff j - i is a nonzero square mod q.
inline OrientedGraph paley(int q) {
  if (!detail::is_prime(q)) fail(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  if (q % 4 != 3) fail(ErrorCode::WrongResidueClass, std::to_string(q) + " is not 3 mod 4");
  if (q > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "Paley order exceeds 64");
  std::vector<bool> square(static_cast<std::size_t>(q), false);
  for (int x = 1; x < q; ++x) square[static_cast<std::size_t>(x * x % q)] = true;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(q), 0);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (i != j && square[static_cast<std::size_t>(((j - i) % q + q) % q)]) rows[static_cast<std::size_t>(i)] |= bit(j);
  return OrientedGraph::from_out_rows(q, rows);
}

// Rotational tournament: i beats i+1, ..., i+(n-1)/2 (mod n).
inline OrientedGraph rotational(int n) {
  if (n < 1) fail(ErrorCode::BadParameters, "order must be positive");
  if (n % 2 == 0) fail(ErrorCode::EvenOrder, "rotational tournaments have odd order, got " + std::to_string(n));
  if (n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "order exceeds 64");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int t = 1; t <= (n - 1) / 2; ++t) rows[static_cast<std::size_t>(i)] |= bit((i + t) % n);
  return OrientedGraph::from_out_rows(n, rows);
}

// i -> j iff i < j.
inline OrientedGraph transitive(int n) {
  if (n < 0 || n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "order outside [0, 64]");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = low_bits(n) & ~low_bits(i + 1);
  return OrientedGraph::from_out_rows(n, rows);
}

// a=0, b=1, c=2, d=3 with a -> {b, c, d}, {b, c} -> d and b, c non-adjacent.
inline OrientedGraph t4() {
  return build_oriented_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
}

// D[H_1, ..., H_n]: blow vertex i of D up into parts[i]; every arc i -> j of D
// becomes all arcs from H_i to H_j. Part i occupies a contiguous index range.
inline OrientedGraph composition(const OrientedGraph& d, const std::vector<OrientedGraph>& parts) {
  if (parts.size() != static_cast<std::size_t>(d.order()))
    fail(ErrorCode::ArityMismatch, "need one part per vertex of the outer graph");
  std::vector<int> offset(parts.size() + 1, 0);
  for (std::size_t i = 0; i < parts.size(); ++i) offset[i + 1] = offset[i] + parts[i].order();
  const int n = offset.back();
  if (n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "composition exceeds 64 vertices");
  std::vector<std::uint64_t> block(parts.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i)
    block[i] = low_bits(offset[i + 1]) & ~low_bits(offset[i]);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int v = 0; v < parts[i].order(); ++v) {
      auto& row = rows[static_cast<std::size_t>(offset[i] + v)];
      row |= parts[i].out_row(v) << offset[i];
      for_each_bit(d.out_row(static_cast<Vertex>(i)), [&](int j) { row |= block[static_cast<std::size_t>(j)]; });
    }
  }
  // Cannot produce a digon when d is oriented; from_out_rows asserts it.
  return OrientedGraph::from_out_rows(n, rows);
}

struct BlockSpec {
  std::vector<int> sizes;
};

struct ExtendedTransitive {
  OrientedGraph graph;
  std::vector<VertexSet> blocks;  // in transitive order
};

// T[I_1, ..., I_t]: transitive tournament on t blocks, each an independent set.
inline ExtendedTransitive extended_transitive(const BlockSpec& spec) {
  std::vector<OrientedGraph> parts;
  int total = 0;
  for (int s : spec.sizes) {
    if (s < 1) fail(ErrorCode::BadParameters, "block sizes must be positive");
    total += s;
    if (total > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "more than 64 vertices");
    parts.emplace_back(s);
  }
  ExtendedTransitive res;
  res.graph = composition(transitive(static_cast<int>(spec.sizes.size())), parts);
  int at = 0;
  for (int s : spec.sizes) {
    res.blocks.emplace_back(low_bits(at + s) & ~low_bits(at));
    at += s;
  }
  return res;
}

// Seeded random tournament on `n` vertices as an arc list over [first, first+n).
inline void append_random_tournament(std::vector<Arc>& arcs, int first, int n, Rng& rng) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.coin()) arcs.push_back({first + i, first + j});
      else arcs.push_back({first + j, first + i});
    }
}

// Independent set X (vertices 0..ceil(k/2)-1) dominated by a random
// tournament Y on the remaining vertices: every Y vertex beats every X vertex.
struct XYInstance {
  OrientedGraph graph;
  VertexSet x;
  VertexSet y;
  int k = 0;
};

inline XYInstance xy_family(int k, int n, std::uint64_t seed) {
  if (k < 16 || n < k) fail(ErrorCode::BadParameters, "need n >= k >= 16");
  if (n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "order exceeds 64");
  const int xs = (k + 1) / 2;
  Rng rng(seed);
  std::vector<Arc> arcs;
  append_random_tournament(arcs, xs, n - xs, rng);
  for (int y = xs; y < n; ++y)
    for (int x = 0; x < xs; ++x) arcs.push_back({y, x});
  XYInstance inst;
  inst.graph = build_oriented_graph(n, arcs);
  inst.x = VertexSet(low_bits(xs));
  inst.y = VertexSet(low_bits(n) & ~low_bits(xs));
  inst.k = k;
  return inst;
}

enum class RandomModel { Tournament, Bernoulli, BipartiteOneWay };

struct RandomSpec {
  RandomModel model = RandomModel::Tournament;
  double p = 0.5;  // ignored by Tournament
};

// Arc list of a seeded random oriented graph. BipartiteOneWay splits the
// vertices into X = [0, n/2) and Y = [n/2, n) and draws only X -> Y arcs.
inline std::vector<Arc> random_arcs(int n, const RandomSpec& spec, std::uint64_t seed) {
  if (n < 0) fail(ErrorCode::BadParameters, "negative order");
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) fail(ErrorCode::BadParameters, "p must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Arc> arcs;
  switch (spec.model) {
    case RandomModel::Tournament:
      append_random_tournament(arcs, 0, n, rng);
      break;
    case RandomModel::Bernoulli:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (rng.unit() >= spec.p) continue;
          if (rng.coin()) arcs.push_back({i, j});
          else arcs.push_back({j, i});
        }
      break;
    case RandomModel::BipartiteOneWay: {
      const int half = n / 2;
      for (int x = 0; x < half; ++x)
        for (int y = half; y < n; ++y)
          if (rng.unit() < spec.p) arcs.push_back({x, y});
      break;
    }
  }
  return arcs;
}

inline OrientedGraph random_digraph(int n, const RandomSpec& spec, std::uint64_t seed) {
  if (n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "core tier holds at most 64 vertices");
  return build_oriented_graph(n, random_arcs(n, spec, seed));
}

inline LargeOrientedGraph random_large_digraph(int n, const RandomSpec& spec, std::uint64_t seed) {
  return LargeOrientedGraph::from_arcs(n, random_arcs(n, spec, seed));
}

}  // namespace antitrace
