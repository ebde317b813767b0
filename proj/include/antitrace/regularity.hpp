#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "antitrace/anti_walk.hpp"
#include "antitrace/bits.hpp"
#include "antitrace/error.hpp"
#include "antitrace/generators.hpp"
#include "antitrace/graph.hpp"
#include "antitrace/parallel.hpp"

namespace antitrace {

// Vertex sets on the large tier are sorted, duplicate-free index lists.
using VertexList = std::vector<Vertex>;

namespace detail {

inline DynamicBitset to_bitset(const LargeOrientedGraph& g, const VertexList& s) {
  DynamicBitset b(static_cast<std::size_t>(g.order()));
  for (Vertex v : s) {
    if (v < 0 || v >= g.order()) fail(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " outside graph");
    b.set(static_cast<std::size_t>(v));
  }
  return b;
}

inline std::size_t out_into(const LargeOrientedGraph& g, Vertex v, const DynamicBitset& s) {
  return g.out_row(v).count_and(s);
}

inline std::size_t in_from(const LargeOrientedGraph& g, Vertex v, const DynamicBitset& s) {
  return g.in_row(v).count_and(s);
}

inline void require_disjoint(const DynamicBitset& a, const DynamicBitset& b) {
  if (a.intersects(b)) fail(ErrorCode::Overlap, "vertex sets must be disjoint");
}

inline std::size_t arcs_between(const LargeOrientedGraph& g, const VertexList& x, const DynamicBitset& y) {
  std::size_t c = 0;
  for (Vertex v : x) c += out_into(g, v, y);
  return c;
}

}  // namespace detail

// d(X, Y): arcs from X to Y over |X||Y|.
inline double arc_density(const LargeOrientedGraph& g, const VertexList& x, const VertexList& y) {
  if (x.empty() || y.empty()) fail(ErrorCode::EmptySide, "arc density needs two non-empty sets");
  const auto xb = detail::to_bitset(g, x);
  const auto yb = detail::to_bitset(g, y);
  detail::require_disjoint(xb, yb);
  return static_cast<double>(detail::arcs_between(g, x, yb)) /
         (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

struct RegularityWitness {
  VertexList a;
  VertexList b;
  double density = 0.0;
};

// Outcome of a randomized search for a violating subpair. A pass only means
// no violation was found within the trial budget.
struct RegularPairStats {
  double density = 0.0;
  bool pass = true;
  std::optional<RegularityWitness> witness;
  int trials = 0;
};

// Samples uniform subpairs (A, B) cycling through the size grid
// ceil(eps|X|), 2x, 4x and |X|/2 on each side.
inline RegularPairStats probe_regularity(const LargeOrientedGraph& g, const VertexList& x, const VertexList& y,
                                         double eps, int trials, std::uint64_t seed) {
  if (!(eps > 0.0)) fail(ErrorCode::BadParameters, "eps must be positive");
  if (trials < 1) fail(ErrorCode::BadParameters, "need at least one trial");
  RegularPairStats st;
  st.density = arc_density(g, x, y);
  const auto sizes = [&](std::size_t total) {
    const auto base = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(total) - 1e-12));
    std::vector<std::size_t> out;
    for (std::size_t s : {base, 2 * base, 4 * base, total / 2}) {
      s = std::clamp<std::size_t>(s, std::max<std::size_t>(base, 1), total);
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    return out;
  };
  const auto xs = sizes(x.size());
  const auto ys = sizes(y.size());
  Rng rng(seed);
  const auto pick = [&](const VertexList& from, std::size_t k) {
    VertexList out;
    for (int i : rng.sample(static_cast<int>(from.size()), static_cast<int>(k)))
      out.push_back(from[static_cast<std::size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (int t = 0; t < trials; ++t) {
    ++st.trials;
    const auto a = pick(x, xs[static_cast<std::size_t>(t) % xs.size()]);
    const auto b = pick(y, ys[static_cast<std::size_t>(t / static_cast<int>(xs.size())) % ys.size()]);
    const double dab = arc_density(g, a, b);
    if (std::abs(dab - st.density) > eps) {
      st.pass = false;
      st.witness = RegularityWitness{a, b, dab};
      break;
    }
  }
  return st;
}

enum class DegreeDirection { Out, In };

struct DegreeFilterResult {
  VertexList poor;                // vertices of X below (d - eps)|Y_sub|
  bool guarantee_applies = true;  // |Y_sub| >= eps |Y|
};

// Vertices of X whose out-degree into Y_sub (or in-degree from Y_sub) is
// below (d - eps)|Y_sub|. In an eps-regular pair of density >= d at most
// eps|X| vertices are returned when guarantee_applies holds.
inline DegreeFilterResult degree_filter(const LargeOrientedGraph& g, const VertexList& x, const VertexList& y_sub,
                                        int y_size, double d, double eps, DegreeDirection dir) {
  const auto xb = detail::to_bitset(g, x);
  const auto yb = detail::to_bitset(g, y_sub);
  detail::require_disjoint(xb, yb);
  DegreeFilterResult res;
  res.guarantee_applies = static_cast<double>(y_sub.size()) >= eps * static_cast<double>(y_size);
  const double need = (d - eps) * static_cast<double>(y_sub.size());
  for (Vertex v : x) {
    const auto deg = dir == DegreeDirection::Out ? detail::out_into(g, v, yb) : detail::in_from(g, v, yb);
    if (static_cast<double>(deg) < need) res.poor.push_back(v);
  }
  return res;
}

struct PairPath {
  AntiWalk walk;
  VertexList reserved;      // X*: in-neighbours of y kept back for the closing step
  int threshold_steps = 0;  // vertices added before the stopping rule fired
  int extension_steps = 0;  // vertices added after it, before closing
};

// Anti-directed path from x to y inside the pair (X, Y) with every arc
// oriented X -> Y, avoiding the excluded sets. Greedy choices take the
// smallest eligible index.
inline PairPath pair_anti_path(const LargeOrientedGraph& g, const VertexList& x_set, const VertexList& y_set,
                               const VertexList& x_excl, const VertexList& y_excl, Vertex x, Vertex y, double d,
                               double eps) {
  const auto X = detail::to_bitset(g, x_set);
  const auto Y = detail::to_bitset(g, y_set);
  detail::require_disjoint(X, Y);
  const auto Xex = detail::to_bitset(g, x_excl);
  const auto Yex = detail::to_bitset(g, y_excl);
  const auto n = static_cast<double>(x_set.size());
  if (X.count() != Y.count() || X.count() == 0) fail(ErrorCode::BadParameters, "sides must be non-empty and equal");
  if (!(eps > 0.0) || d < 5.0 * eps) fail(ErrorCode::BadParameters, "need eps > 0 and d >= 5 eps");
  if (static_cast<double>(Xex.count()) >= eps * n || static_cast<double>(Yex.count()) >= eps * n)
    fail(ErrorCode::BadParameters, "excluded sets must be smaller than eps n");
  if ((Xex & X).count() != Xex.count() || (Yex & Y).count() != Yex.count())
    fail(ErrorCode::BadParameters, "excluded sets must lie inside their sides");
  if (x < 0 || x >= g.order() || !X.test(static_cast<std::size_t>(x)) || Xex.test(static_cast<std::size_t>(x)))
    fail(ErrorCode::BadParameters, "x must lie in X minus its excluded set");
  if (y < 0 || y >= g.order() || !Y.test(static_cast<std::size_t>(y)) || Yex.test(static_cast<std::size_t>(y)))
    fail(ErrorCode::BadParameters, "y must lie in Y minus its excluded set");
  const double rich = (d - eps) * n;
  if (static_cast<double>(detail::out_into(g, x, Y)) < rich)
    fail(ErrorCode::PreconditionDegree, "x has out-degree below (d-eps)n into Y");
  if (static_cast<double>(detail::in_from(g, y, X)) < rich)
    fail(ErrorCode::PreconditionDegree, "y has in-degree below (d-eps)n from X");

  const double epsn = eps * n;
  DynamicBitset free_x = X;
  free_x.subtract(Xex);
  free_x.reset(static_cast<std::size_t>(x));
  DynamicBitset free_y = Y;
  free_y.subtract(Yex);
  free_y.reset(static_cast<std::size_t>(y));

  PairPath res;
  DynamicBitset reserved(static_cast<std::size_t>(g.order()));
  {
    const auto want = static_cast<std::size_t>(std::floor(epsn + 1e-9));
    const auto cand = g.in_row(y) & free_x;
    for (std::size_t v = cand.find_first(); v < cand.size() && res.reserved.size() < want; v = cand.find_next(v + 1)) {
      res.reserved.push_back(static_cast<Vertex>(v));
      reserved.set(v);
    }
    if (res.reserved.size() < want) fail(ErrorCode::PreconditionDegree, "y has too few usable in-neighbours");
    free_x.subtract(reserved);
  }

  std::vector<Vertex> path{x};
  Vertex p = x;
  const double stop = epsn / (d - eps) + 2.0;
  while (static_cast<double>(free_x.count()) >= stop) {
    std::optional<Vertex> next_y;
    const auto ys = g.out_row(p) & free_y;
    for (std::size_t c = ys.find_first(); c < ys.size(); c = ys.find_next(c + 1))
      if (static_cast<double>(detail::in_from(g, static_cast<Vertex>(c), free_x)) > epsn) {
        next_y = static_cast<Vertex>(c);
        break;
      }
    if (!next_y) fail(ErrorCode::Stuck, "no Y vertex with enough in-arcs after " + std::to_string(path.size()));
    free_y.reset(static_cast<std::size_t>(*next_y));
    std::optional<Vertex> next_x;
    const auto xs = g.in_row(*next_y) & free_x;
    for (std::size_t c = xs.find_first(); c < xs.size(); c = xs.find_next(c + 1))
      if (static_cast<double>(detail::out_into(g, static_cast<Vertex>(c), free_y)) > epsn) {
        next_x = static_cast<Vertex>(c);
        break;
      }
    if (!next_x) fail(ErrorCode::Stuck, "no X vertex with enough out-arcs after " + std::to_string(path.size() + 1));
    free_x.reset(static_cast<std::size_t>(*next_x));
    path.push_back(*next_y);
    path.push_back(*next_x);
    p = *next_x;
    res.threshold_steps += 2;
  }

  // Y vertices reachable from a reserved vertex, i.e. usable as y' in the
  // closing pattern x* -> y' <- x'' -> y.
  const auto closing_targets = [&]() {
    DynamicBitset t(static_cast<std::size_t>(g.order()));
    reserved.for_each([&](std::size_t r) { t |= g.out_row(static_cast<Vertex>(r)); });
    return t & free_y;
  };

  // Extend two vertices at a time while the new end can still be closed.
  // Unreserved X vertices are used first; a reserved one closes directly.
  for (;;) {
    const auto targets = closing_targets();
    const auto ys = g.out_row(p) & free_y;
    std::optional<std::pair<Vertex, Vertex>> move;
    for (int pass = 0; pass < 2 && !move; ++pass) {
      const auto& pool = pass == 0 ? free_x : reserved;
      for (std::size_t c = ys.find_first(); c < ys.size() && !move; c = ys.find_next(c + 1)) {
        const auto xs = g.in_row(static_cast<Vertex>(c)) & pool;
        for (std::size_t w = xs.find_first(); w < xs.size(); w = xs.find_next(w + 1)) {
          bool closable = g.has_arc(static_cast<Vertex>(w), y);
          if (!closable) {
            const auto reach = g.out_row(static_cast<Vertex>(w)) & targets;
            closable = reach.count() > (reach.test(c) ? 1U : 0U);
          }
          if (closable) {
            move = std::pair{static_cast<Vertex>(c), static_cast<Vertex>(w)};
            break;
          }
        }
      }
    }
    if (!move) break;
    free_y.reset(static_cast<std::size_t>(move->first));
    free_x.reset(static_cast<std::size_t>(move->second));
    reserved.reset(static_cast<std::size_t>(move->second));
    path.push_back(move->first);
    path.push_back(move->second);
    p = move->second;
    res.extension_steps += 2;
  }

  if (!g.has_arc(p, y)) {
    const auto reach = g.out_row(p) & closing_targets();
    const std::size_t y2 = reach.find_first();
    if (y2 >= reach.size()) fail(ErrorCode::Stuck, "cannot close the path into y");
    const auto via = g.in_row(static_cast<Vertex>(y2)) & reserved;
    path.push_back(static_cast<Vertex>(y2));
    path.push_back(static_cast<Vertex>(via.find_first()));
  }
  path.push_back(y);
  res.walk = walk_from_vertices(g, std::move(path));
  if (!validate_anti_walk(g, res.walk)) fail(ErrorCode::Stuck, "assembled walk failed validation");
  return res;
}

// V_0 is the exceptional set; V_1..V_l are the equal-size parts.
struct PartitionSpec {
  VertexList exceptional;
  std::vector<VertexList> parts;
};

// Random equitable split into `parts` parts; the remainder goes to V_0.
inline PartitionSpec random_partition(int n, int parts, std::uint64_t seed) {
  if (parts < 1 || parts > n) fail(ErrorCode::BadParameters, "need 1 <= parts <= n");
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng rng(seed);
  rng.shuffle(perm);
  const std::size_t m = static_cast<std::size_t>(n / parts);
  PartitionSpec spec;
  for (int i = 0; i < parts; ++i) {
    VertexList part(perm.begin() + static_cast<std::ptrdiff_t>(m * static_cast<std::size_t>(i)),
                    perm.begin() + static_cast<std::ptrdiff_t>(m * static_cast<std::size_t>(i + 1)));
    std::sort(part.begin(), part.end());
    spec.parts.push_back(std::move(part));
  }
  spec.exceptional.assign(perm.begin() + static_cast<std::ptrdiff_t>(m * static_cast<std::size_t>(parts)), perm.end());
  std::sort(spec.exceptional.begin(), spec.exceptional.end());
  return spec;
}

struct ReducedEdge {
  int from = 0;  // part index of the denser side's tail
  int to = 0;
  double density = 0.0;
};

enum class ConnectionKind { Direct, TwoHop };

inline std::string_view to_string(ConnectionKind k) { return k == ConnectionKind::Direct ? "direct" : "two_hop"; }

// Link from pair i to pair i+1: Direct is b_i <- a_{i+1}; TwoHop is
// b_i <- u -> x <- a_{i+1}, with u and x kept out of the pair paths.
struct Connection {
  ConnectionKind kind = ConnectionKind::Direct;
  std::vector<Vertex> vertices;  // b_i, [u, x,] a_{i+1}
};

struct PipelineTrace {
  int n = 0;
  double eps = 0.0;
  double d = 0.0;
  std::vector<ReducedEdge> reduced;
  std::size_t matching_required = 0;
  std::vector<ReducedEdge> matching;  // oriented pairs (A_i, B_i)
  std::vector<std::pair<Vertex, Vertex>> endpoints;
  std::vector<int> pair_orders;
  std::vector<Connection> connections;
  AntiWalk walk;

  double ratio() const { return n == 0 ? 0.0 : static_cast<double>(walk.order()) / static_cast<double>(n); }
};

namespace detail {

inline void validate_partition(const LargeOrientedGraph& g, const PartitionSpec& p) {
  if (p.parts.empty()) fail(ErrorCode::BadParameters, "partition has no parts");
  DynamicBitset seen(static_cast<std::size_t>(g.order()));
  const auto absorb = [&](const VertexList& s) {
    const auto b = to_bitset(g, s);
    if (b.count() != s.size() || seen.intersects(b)) fail(ErrorCode::Overlap, "partition classes overlap");
    seen |= b;
  };
  absorb(p.exceptional);
  for (const auto& part : p.parts) {
    if (part.size() != p.parts.front().size() || part.empty())
      fail(ErrorCode::BadParameters, "parts must be non-empty and of equal size");
    absorb(part);
  }
  if (seen.count() != static_cast<std::size_t>(g.order())) fail(ErrorCode::BadParameters, "partition misses vertices");
}

// Greedy matching improved by augmenting paths; blossoms are not contracted.
inline std::vector<int> max_matching(int nodes, const std::vector<std::vector<int>>& adj) {
  std::vector<int> mate(static_cast<std::size_t>(nodes), -1);
  for (int u = 0; u < nodes; ++u)
    if (mate[static_cast<std::size_t>(u)] < 0)
      for (int w : adj[static_cast<std::size_t>(u)])
        if (mate[static_cast<std::size_t>(w)] < 0) {
          mate[static_cast<std::size_t>(u)] = w;
          mate[static_cast<std::size_t>(w)] = u;
          break;
        }
  std::vector<char> seen;
  const auto augment = [&](auto&& self, int u, int root) -> bool {
    seen[static_cast<std::size_t>(u)] = 1;
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      const int m = mate[static_cast<std::size_t>(w)];
      if (m < 0 && w != root) {
        seen[static_cast<std::size_t>(w)] = 1;
        mate[static_cast<std::size_t>(u)] = w;
        mate[static_cast<std::size_t>(w)] = u;
        return true;
      }
      if (m < 0 || seen[static_cast<std::size_t>(m)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      if (self(self, m, root)) {
        mate[static_cast<std::size_t>(u)] = w;
        mate[static_cast<std::size_t>(w)] = u;
        return true;
      }
    }
    return false;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (int s = 0; s < nodes; ++s) {
      if (mate[static_cast<std::size_t>(s)] >= 0) continue;
      seen.assign(static_cast<std::size_t>(nodes), 0);
      if (augment(augment, s, s)) improved = true;
    }
  }
  return mate;
}

inline std::optional<Vertex> first_in(const DynamicBitset& b) {
  const std::size_t v = b.find_first();
  return v < b.size() ? std::optional<Vertex>(static_cast<Vertex>(v)) : std::nullopt;
}

}  // namespace detail

// Almost spanning anti-directed path from a partition into equal parts:
// reduced graph, matching, endpoint and connector selection, one long path
// per matched pair, concatenation.
inline PipelineTrace almost_spanning(const LargeOrientedGraph& g, const PartitionSpec& partition, double eps,
                                     int threads = 0) {
  if (!(eps > 0.0) || eps > 1.0 / 12.0) fail(ErrorCode::BadParameters, "eps must lie in (0, 1/12]");
  detail::validate_partition(g, partition);
  PipelineTrace tr;
  tr.n = g.order();
  tr.eps = eps;
  tr.d = 0.5 - eps;
  const int l = static_cast<int>(partition.parts.size());
  const auto& parts = partition.parts;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      const double fwd = arc_density(g, parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)]);
      const double bwd = arc_density(g, parts[static_cast<std::size_t>(j)], parts[static_cast<std::size_t>(i)]);
      if (std::max(fwd, bwd) < tr.d) continue;
      tr.reduced.push_back(fwd >= bwd ? ReducedEdge{i, j, fwd} : ReducedEdge{j, i, bwd});
      adj[static_cast<std::size_t>(i)].push_back(j);
      adj[static_cast<std::size_t>(j)].push_back(i);
    }
  const auto mate = detail::max_matching(l, adj);
  const double bound = ((1.0 - 2.0 * eps) * l - 1.0) / 2.0;
  tr.matching_required = static_cast<std::size_t>(std::max(1.0, std::ceil(bound - 1e-9)));
  for (const auto& e : tr.reduced)
    if (mate[static_cast<std::size_t>(e.from)] == e.to) tr.matching.push_back(e);
  std::sort(tr.matching.begin(), tr.matching.end(),
            [](const auto& a, const auto& b) { return std::min(a.from, a.to) < std::min(b.from, b.to); });
  if (tr.matching.size() < tr.matching_required)
    fail(ErrorCode::NoMatching, "reduced graph matching has " + std::to_string(tr.matching.size()) + " edges, need " +
                                    std::to_string(tr.matching_required));

  const std::size_t t = tr.matching.size();
  const auto side = [&](std::size_t i, bool a) -> const VertexList& {
    return parts[static_cast<std::size_t>(a ? tr.matching[i].from : tr.matching[i].to)];
  };
  // Rich vertices: A-side out-degree or B-side in-degree >= (d - eps)|part|.
  std::vector<DynamicBitset> rich_a, rich_b;
  for (std::size_t i = 0; i < t; ++i) {
    const auto& a = side(i, true);
    const auto& b = side(i, false);
    DynamicBitset ra(static_cast<std::size_t>(g.order())), rb(static_cast<std::size_t>(g.order()));
    for (Vertex v : degree_filter(g, a, b, static_cast<int>(b.size()), tr.d, eps, DegreeDirection::Out).poor)
      ra.set(static_cast<std::size_t>(v));
    for (Vertex v : degree_filter(g, b, a, static_cast<int>(a.size()), tr.d, eps, DegreeDirection::In).poor)
      rb.set(static_cast<std::size_t>(v));
    DynamicBitset all_a = detail::to_bitset(g, a), all_b = detail::to_bitset(g, b);
    rich_a.push_back(all_a.subtract(ra));
    rich_b.push_back(all_b.subtract(rb));
  }

  std::vector<Vertex> start(t), end(t);
  std::vector<VertexList> excl_a(t), excl_b(t);
  const auto a1 = detail::first_in(rich_a[0]);
  if (!a1) fail(ErrorCode::PairFailure, "pair 0 has no rich start vertex");
  start[0] = *a1;
  for (std::size_t i = 0; i + 1 < t; ++i) {
    Connection c;
    bool found = false;
    rich_b[i].for_each([&](std::size_t u) {
      if (found) return;
      if (const auto v = detail::first_in(g.in_row(static_cast<Vertex>(u)) & rich_a[i + 1])) {
        end[i] = static_cast<Vertex>(u);
        start[i + 1] = *v;
        c = {ConnectionKind::Direct, {end[i], start[i + 1]}};
        found = true;
      }
    });
    // All rich arcs run B_i -> A_{i+1}: use v <- u -> x <- y.
    rich_b[i].for_each([&](std::size_t u) {
      if (found) return;
      const auto vs = g.out_row(static_cast<Vertex>(u)) & rich_b[i];
      const auto xs = g.out_row(static_cast<Vertex>(u)) & rich_a[i + 1];
      const auto v = detail::first_in(vs);
      if (!v) return;
      xs.for_each([&](std::size_t x) {
        if (found) return;
        if (const auto y = detail::first_in(g.in_row(static_cast<Vertex>(x)) & xs)) {
          end[i] = *v;
          start[i + 1] = *y;
          excl_b[i] = {static_cast<Vertex>(u)};
          excl_a[i + 1] = {static_cast<Vertex>(x)};
          c = {ConnectionKind::TwoHop, {*v, static_cast<Vertex>(u), static_cast<Vertex>(x), *y}};
          found = true;
        }
      });
    });
    if (!found) fail(ErrorCode::PairFailure, "no connector between pairs " + std::to_string(i) + " and " +
                                                 std::to_string(i + 1));
    tr.connections.push_back(std::move(c));
  }
  {
    auto last = rich_b[t - 1];
    for (Vertex v : excl_b[t - 1]) last.reset(static_cast<std::size_t>(v));
    const auto bt = detail::first_in(last);
    if (!bt) fail(ErrorCode::PairFailure, "last pair has no rich end vertex");
    end[t - 1] = *bt;
  }

  std::vector<PairPath> paths(t);
  parallel_for(t, threads, [&](std::size_t i) {
    try {
      paths[i] = pair_anti_path(g, side(i, true), side(i, false), excl_a[i], excl_b[i], start[i], end[i], tr.d, eps);
    } catch (const Error& e) {
      fail(ErrorCode::PairFailure, "pair " + std::to_string(i) + ": " + e.what());
    }
  });

  std::vector<Vertex> seq;
  for (std::size_t i = 0; i < t; ++i) {
    tr.endpoints.emplace_back(start[i], end[i]);
    tr.pair_orders.push_back(paths[i].walk.order());
    seq.insert(seq.end(), paths[i].walk.vertices.begin(), paths[i].walk.vertices.end());
    if (i + 1 < t && tr.connections[i].kind == ConnectionKind::TwoHop) {
      seq.push_back(tr.connections[i].vertices[1]);
      seq.push_back(tr.connections[i].vertices[2]);
    }
  }
  tr.walk = walk_from_vertices(g, std::move(seq));
  if (!validate_anti_walk(g, tr.walk)) fail(ErrorCode::PairFailure, "concatenated walk failed validation");
  return tr;
}

// Random tournament with arcs removed so that every vertex keeps degree at
// least n - k; used as a demo input with minimum degree n - k.
inline LargeOrientedGraph near_tournament(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1) fail(ErrorCode::BadParameters, "need n >= 1 and k >= 1");
  Rng rng(seed);
  std::vector<Arc> arcs;
  append_random_tournament(arcs, 0, n, rng);
  std::vector<int> lost(static_cast<std::size_t>(n), 0);
  std::vector<Arc> kept;
  for (const Arc& a : arcs) {
    auto& lf = lost[static_cast<std::size_t>(a.from)];
    auto& lt = lost[static_cast<std::size_t>(a.to)];
    if (lf < k - 1 && lt < k - 1 && rng.below(static_cast<std::uint64_t>(n)) < static_cast<std::uint64_t>(k)) {
      ++lf;
      ++lt;
      continue;
    }
    kept.push_back(a);
  }
  return LargeOrientedGraph::from_arcs(n, kept);
}

// Demo value k = ceil(n / log2 n) standing in for k = o(n).
inline int demo_k(int n) {
  if (n < 2) return 1;
  return static_cast<int>(std::ceil(static_cast<double>(n) / std::log2(static_cast<double>(n))));
}

}  // namespace antitrace
