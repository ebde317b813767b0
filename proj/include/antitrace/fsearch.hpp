#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "antitrace/anti_walk.hpp"
#include "antitrace/canonical.hpp"
#include "antitrace/digraph6.hpp"
#include "antitrace/enumeration.hpp"
#include "antitrace/error.hpp"
#include "antitrace/kat.hpp"
#include "antitrace/parallel.hpp"
#include "antitrace/solver.hpp"

namespace antitrace {

// ---------------------------------------------------------------------------
// f(k) search

struct FSearchOrder {
  int order = 0;
  std::uint64_t classes_scanned = 0;         // filtered classes generated at this order
  std::uint64_t kat_count = 0;               // of which k-AT
  std::vector<std::string> counterexamples;  // k-AT, not anti-traceable (digraph6)
};

struct FSearchReport {
  int k = 0;
  int min_order = 0;
  int max_order = 0;  // the cap: nothing is claimed beyond it
  int complement_max_degree = 0;
  std::vector<FSearchOrder> orders;
  int empirical_f = 0;
  bool complete = true;  // false when the class budget ran out
  std::optional<std::uint64_t> budget;
};

struct FSearchOptions {
  std::optional<std::uint64_t> budget;  // total classes scanned
  int threads = 0;
};

// Grows every k-AT class (with at most k-2 non-neighbours per vertex, a
// necessary condition) order by order. Orders below min_order are generated
// with the k-AT test folded into augmentation; orders in range are generated
// from k-AT parents without it so the scanned count covers the whole stream.
inline FSearchReport f_search(int k, int min_order, int max_order, const FSearchOptions& opts = {}) {
  if (k < 2) fail(ErrorCode::BadParameters, "k must be at least 2");
  if (min_order < 1 || max_order < min_order) fail(ErrorCode::BadParameters, "bad order range");
  const int cap = k - 2;
  check_enumeration_size(max_order, cap);
  FSearchReport rep;
  rep.k = k;
  rep.min_order = min_order;
  rep.max_order = max_order;
  rep.complement_max_degree = cap;
  rep.budget = opts.budget;
  const auto hook = kat_prune_hook(k);
  std::uint64_t scanned = 0;
  int last_counterexample = 0;
  std::vector<CanonicalCode> level{canonical_code(OrientedGraph(1))};
  for (int order = 1; order <= max_order; ++order) {
    const bool in_range = order >= min_order;
    if (order > 1) level = augment_level(level, cap, in_range ? PruneHook{} : hook, opts.threads);
    if (!in_range) continue;
    FSearchOrder row;
    row.order = order;
    row.classes_scanned = level.size();
    scanned += level.size();
    if (order >= k) {
      std::vector<std::uint8_t> kat(level.size()), traceable(level.size());
      parallel_for(level.size(), opts.threads, [&](std::size_t i) {
        const auto g = decode_canonical_code(level[i]);
        kat[i] = is_k_at(g, k).holds;
        traceable[i] = kat[i] && is_anti_traceable(g);
      });
      std::vector<CanonicalCode> kept;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (!kat[i]) continue;
        if (!traceable[i]) row.counterexamples.push_back(encode_digraph6(decode_canonical_code(level[i])));
        kept.push_back(std::move(level[i]));
      }
      level = std::move(kept);
      row.kat_count = level.size();
      if (!row.counterexamples.empty()) last_counterexample = order;
    }
    rep.orders.push_back(std::move(row));
    if (opts.budget && scanned > *opts.budget && order < max_order) {
      rep.complete = false;
      break;
    }
  }
  rep.empirical_f = last_counterexample > 0 ? last_counterexample + 1 : std::max(k, min_order);
  return rep;
}

// ---------------------------------------------------------------------------
// Structural audit of longest anti-paths

enum class LawStatus { Pass, Fail, Skipped };

constexpr std::string_view to_string(LawStatus s) {
  switch (s) {
    case LawStatus::Pass: return "pass";
    case LawStatus::Fail: return "fail";
    case LawStatus::Skipped: return "skipped";
  }
  return "unknown";
}

struct LawResult {
  std::string name;
  LawStatus status = LawStatus::Skipped;
  std::string detail;
  std::optional<AntiWalk> path_witness;
  std::vector<Vertex> vertex_witness;
};

struct AuditReport {
  int k = 0;
  std::string graph;  // digraph6
  int order = 0;
  int longest = 0;
  std::vector<LawResult> laws;

  bool passed() const {
    return std::none_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.status == LawStatus::Fail; });
  }
  const LawResult* law(std::string_view name) const {
    for (const auto& l : laws)
      if (l.name == name) return &l;
    return nullptr;
  }
};

inline constexpr int kAuditPathEnumerationMax = 12;
inline constexpr int kAuditExhaustiveMax = 8;
inline constexpr std::uint64_t kAuditSamples = 2000;

namespace detail {

// Every maximum-order anti-path as an explicit walk (each path appears once
// per direction).
inline std::vector<AntiWalk> all_maximum_paths(const OrientedGraph& g, int s) {
  std::vector<AntiWalk> out;
  AntiWalk cur;
  std::uint64_t used = 0;
  auto dfs = [&](auto&& self, ArcDirection next) -> void {
    if (cur.order() == s) {
      out.push_back(cur);
      return;
    }
    const Vertex last = cur.vertices.back();
    const std::uint64_t cand = (next == ArcDirection::Forward ? g.out_row(last) : g.in_row(last)) & ~used;
    for_each_bit(cand, [&](int w) {
      cur.vertices.push_back(w);
      cur.pattern.push_back(next);
      used |= bit(w);
      self(self, flip(next));
      used &= ~bit(w);
      cur.vertices.pop_back();
      cur.pattern.pop_back();
    });
  };
  for (Vertex v = 0; v < g.order(); ++v) {
    cur = AntiWalk{{v}, {}, false};
    used = bit(v);
    if (s == 1) {
      out.push_back(cur);
      continue;
    }
    dfs(dfs, ArcDirection::Forward);
    dfs(dfs, ArcDirection::Backward);
  }
  return out;
}

// Arcs among {a,b,c} fit inside one directed triangle.
inline bool in_directed_triangle(const OrientedGraph& g, Vertex a, Vertex b, Vertex c) {
  const bool forward_only = !g.has_arc(b, a) && !g.has_arc(c, b) && !g.has_arc(a, c);
  const bool backward_only = !g.has_arc(a, b) && !g.has_arc(b, c) && !g.has_arc(c, a);
  return forward_only || backward_only;
}

inline bool arcs_within(const OrientedGraph& g, const std::array<Vertex, 4>& q, std::initializer_list<std::pair<int, int>> allowed,
                        std::initializer_list<std::pair<int, int>> ignored) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || !g.has_arc(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)])) continue;
      bool skip = false;
      for (auto [x, y] : ignored) skip = skip || (x == i && y == j) || (x == j && y == i);
      if (skip) continue;
      bool ok = false;
      for (auto [x, y] : allowed) ok = ok || (x == i && y == j);
      if (!ok) return false;
    }
  return true;
}

}  // namespace detail

// The three four-vertex observations for one ordered quadruple (a,b,c,d).
// Returns the index (1..3) of the first violated statement, or 0.
inline int four_vertex_violation(const OrientedGraph& g, const std::array<Vertex, 4>& q) {
  const auto [a, b, c, d] = q;
  // (i) arcs other than ad/da lie in {ab, bc, ca, cd, db} => a ~ d.
  if (detail::arcs_within(g, q, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 1}}, {{0, 3}}) && !g.adjacent(a, d)) return 1;
  // (ii) {a,b,c} inside a directed triangle and a !~ d => d common in- or out-neighbour of b, c.
  if (detail::in_directed_triangle(g, a, b, c) && !g.adjacent(a, d)) {
    const bool in = g.has_arc(b, d) && g.has_arc(c, d);
    const bool out = g.has_arc(d, b) && g.has_arc(d, c);
    if (!in && !out) return 2;
  }
  // (iii) non-diagonal arcs inside a directed 4-cycle abcd => both diagonals present.
  const bool cyc = detail::arcs_within(g, q, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 2}, {1, 3}}) ||
                   detail::arcs_within(g, q, {{1, 0}, {2, 1}, {3, 2}, {0, 3}}, {{0, 2}, {1, 3}});
  if (cyc && !(g.adjacent(a, c) && g.adjacent(b, d))) return 3;
  return 0;
}

// Checks the longest-path lemmas on a k-AT graph. The lemma laws are stated
// for 4-AT graphs and are skipped for other k.
inline AuditReport audit_longest_path_laws(const OrientedGraph& g, int k) {
  const auto verdict = is_k_at(g, k);
  if (!verdict.holds) fail(ErrorCode::NotKAT, "graph is not " + std::to_string(k) + "-AT");
  const int n = g.order();
  AuditReport rep;
  rep.k = k;
  rep.graph = encode_digraph6(g);
  rep.order = n;
  const auto states = longest_anti_path_states(g);
  const int s = states.max_order;
  rep.longest = s;
  const bool spanning = s == n;
  const bool four = k == 4;
  auto add = [&](std::string name, LawStatus st, std::string detail) -> LawResult& {
    rep.laws.push_back({std::move(name), st, std::move(detail), std::nullopt, {}});
    return rep.laws.back();
  };
  const std::string vacuous = "longest anti-path is spanning";
  const std::string not_four = "stated for 4-AT graphs";

  // Endpoint adjacency: some / every maximum anti-path has adjacent ends.
  if (!four) {
    add("endpoint_adjacency", LawStatus::Skipped, not_four);
    add("endpoint_adjacency_all", LawStatus::Skipped, not_four);
  } else if (spanning) {
    add("endpoint_adjacency", LawStatus::Pass, vacuous);
    add("endpoint_adjacency_all", LawStatus::Pass, vacuous);
  } else {
    const EndpointState* good = nullptr;
    const EndpointState* bad = nullptr;
    for (const auto& st : states.states) {
      if (g.adjacent(st.start, st.end)) good = good ? good : &st;
      else bad = bad ? bad : &st;
    }
    auto& some = add("endpoint_adjacency", good ? LawStatus::Pass : LawStatus::Fail,
                     std::to_string(states.states.size()) + " maximum endpoint states");
    if (good) some.vertex_witness = {good->start, good->end};
    auto& every = add("endpoint_adjacency_all", bad ? LawStatus::Fail : LawStatus::Pass,
                      std::to_string(states.states.size()) + " maximum endpoint states");
    if (bad) every.vertex_witness = {bad->start, bad->end};
  }

  // Even maximum order.
  if (!four) add("even_longest_order", LawStatus::Skipped, not_four);
  else if (spanning) add("even_longest_order", LawStatus::Pass, vacuous);
  else add("even_longest_order", s % 2 == 0 ? LawStatus::Pass : LawStatus::Fail, "longest order " + std::to_string(s));

  // Endpoint extension exclusions and endpoint triangles over every maximum path.
  if (spanning) {
    add("endpoint_extension_exclusion", LawStatus::Pass, vacuous);
    add("endpoint_triangle", LawStatus::Pass, vacuous);
  } else if (n > kAuditPathEnumerationMax) {
    add("endpoint_extension_exclusion", LawStatus::Skipped, "path enumeration limited to order 12");
    add("endpoint_triangle", LawStatus::Skipped, "path enumeration limited to order 12");
  } else {
    const auto paths = detail::all_maximum_paths(g, s);
    std::optional<std::pair<AntiWalk, Vertex>> excl, tri;
    for (const auto& p : paths) {
      const Vertex v1 = p.vertices.front(), v2 = p.vertices[1];
      const Vertex vs = p.vertices.back(), vs1 = p.vertices[static_cast<std::size_t>(s - 2)];
      std::uint64_t on = 0;
      for (Vertex v : p.vertices) on |= bit(v);
      for_each_bit(low_bits(n) & ~on, [&](int w) {
        const bool both_out_1 = g.has_arc(v1, w) && g.has_arc(v1, v2);
        const bool both_in_1 = g.has_arc(w, v1) && g.has_arc(v2, v1);
        const bool both_out_s = g.has_arc(vs, w) && g.has_arc(vs, vs1);
        const bool both_in_s = g.has_arc(w, vs) && g.has_arc(vs1, vs);
        if ((both_out_1 || both_in_1 || both_out_s || both_in_s) && !excl) excl.emplace(p, w);
        const bool t1 = !g.adjacent(w, v1) || detail::in_directed_triangle(g, v1, v2, w);
        const bool ts = !g.adjacent(w, vs) || detail::in_directed_triangle(g, vs1, vs, w);
        if (!(t1 && ts) && !tri) tri.emplace(p, w);
      });
    }
    const std::string detail = std::to_string(paths.size()) + " maximum paths (both directions)";
    auto& e = add("endpoint_extension_exclusion", excl ? LawStatus::Fail : LawStatus::Pass, detail);
    if (excl) e.path_witness = excl->first, e.vertex_witness = {excl->second};
    auto& t = add("endpoint_triangle", tri ? LawStatus::Fail : LawStatus::Pass, detail);
    if (tri) t.path_witness = tri->first, t.vertex_witness = {tri->second};
  }

  // Four-vertex observations over all ordered quadruples.
  if (!four) {
    add("four_vertex_observations", LawStatus::Skipped, not_four);
  } else {
    std::optional<std::array<Vertex, 4>> bad;
    int which = 0;
    std::uint64_t checked = 0;
    for (Vertex a = 0; a < n && !bad; ++a)
      for (Vertex b = 0; b < n && !bad; ++b)
        for (Vertex c = 0; c < n && !bad; ++c)
          for (Vertex d = 0; d < n && !bad; ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            ++checked;
            which = four_vertex_violation(g, {a, b, c, d});
            if (which) bad = std::array<Vertex, 4>{a, b, c, d};
          }
    auto& l = add("four_vertex_observations", bad ? LawStatus::Fail : LawStatus::Pass,
                  bad ? "statement (" + std::string(which == 1 ? "i" : which == 2 ? "ii" : "iii") + ") fails"
                      : std::to_string(checked) + " ordered quadruples");
    if (bad) l.vertex_witness.assign(bad->begin(), bad->end());
  }

  // Even-size inheritance: 4-AT => 2j-AT for 2 <= j <= n/2.
  if (!four) {
    add("even_subset_inheritance", LawStatus::Skipped, not_four);
  } else {
    std::optional<KatVerdict> failure;
    std::string detail;
    for (int size = 4; size <= n; size += 2) {
      KatOptions ko;
      if (n > kAuditExhaustiveMax) {
        ko.samples = kAuditSamples;
        ko.seed = static_cast<std::uint64_t>(size);
      }
      const auto v = is_k_at(g, size, ko);
      detail += (detail.empty() ? "" : ", ") + std::to_string(size) + (v.sampled ? "-AT sampled" : "-AT");
      if (!v.holds && !failure) failure = v;
    }
    if (detail.empty()) detail = "no even size in range";
    auto& l = add("even_subset_inheritance", failure ? LawStatus::Fail : LawStatus::Pass, detail);
    if (failure) l.vertex_witness = failure->witness->to_vector();
  }
  return rep;
}

}  // namespace antitrace
