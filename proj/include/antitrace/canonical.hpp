#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "antitrace/bits.hpp"
#include "antitrace/error.hpp"
#include "antitrace/graph.hpp"

namespace antitrace {

// Isomorphism-invariant byte string: the order, then the n*n adjacency bits
// (row-major, MSB first) of the canonically relabelled graph.
struct CanonicalCode {
  std::string bytes;

  int order() const { return bytes.empty() ? 0 : static_cast<unsigned char>(bytes[0]); }

  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
      out.push_back(kDigits[c >> 4]);
      out.push_back(kDigits[c & 15]);
    }
    return out;
  }

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

// Vertex permutation stored as images: perm[v] is where v goes.
using Permutation = std::vector<Vertex>;

struct CanonicalLabeling {
  // order[i] is the vertex of the input placed at canonical position i.
  std::vector<Vertex> order;
  // Automorphisms discovered during the search; they generate Aut(G).
  std::vector<Permutation> generators;
  CanonicalCode code;
};

inline constexpr int kCanonicalMaxOrder = 16;

namespace detail {

// Ordered partition of at most 16 vertices, cells as bitmasks.
struct Partition {
  std::array<std::uint32_t, kCanonicalMaxOrder> cells{};
  int count = 0;
};

class CanonSearch {
 public:
  explicit CanonSearch(const OrientedGraph& g) : n_(g.order()) {
    for (int v = 0; v < n_; ++v) {
      out_[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.out_row(v));
      in_[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.in_row(v));
    }
  }

  CanonicalLabeling run() {
    CanonicalLabeling res;
    if (n_ == 0) {
      res.code.bytes.assign(1, '\0');
      return res;
    }
    Partition root;
    root.cells[0] = static_cast<std::uint32_t>(low_bits(n_));
    root.count = 1;
    refine(root);
    search(root, 0);

    res.order.assign(best_lab_.begin(), best_lab_.begin() + n_);
    res.generators = std::move(generators_);
    res.code = encode(best_rows_);
    return res;
  }

 private:
  using Rows = std::array<std::uint32_t, kCanonicalMaxOrder>;
  using Labels = std::array<std::int8_t, kCanonicalMaxOrder>;

  // Splits cells until every cell is equitable with respect to every other
  // cell, counting out- and in-neighbours separately. Restarting the scan after
  // each split keeps the result a function of (graph, cell order) only.
  void refine(Partition& p) const {
    for (;;) {
      bool split = false;
      for (int s = 0; s < p.count && !split; ++s) {
        const std::uint32_t w = p.cells[static_cast<std::size_t>(s)];
        for (int c = 0; c < p.count; ++c) {
          const std::uint32_t cell = p.cells[static_cast<std::size_t>(c)];
          if ((cell & (cell - 1)) == 0) continue;
          std::array<int, kCanonicalMaxOrder> key{};
          int first_key = -1;
          bool uniform = true;
          for_each_bit(cell, [&](int v) {
            const int k = std::popcount(out_[static_cast<std::size_t>(v)] & w) * 32 +
                          std::popcount(in_[static_cast<std::size_t>(v)] & w);
            key[static_cast<std::size_t>(v)] = k;
            if (first_key < 0) first_key = k;
            else if (k != first_key) uniform = false;
          });
          if (uniform) continue;
          std::array<int, kCanonicalMaxOrder> distinct{};
          int nd = 0;
          for_each_bit(cell, [&](int v) {
            const int k = key[static_cast<std::size_t>(v)];
            if (std::find(distinct.begin(), distinct.begin() + nd, k) == distinct.begin() + nd)
              distinct[static_cast<std::size_t>(nd++)] = k;
          });
          std::sort(distinct.begin(), distinct.begin() + nd);
          // Shift the tail right by nd-1 and write the pieces in key order.
          for (int i = p.count - 1; i > c; --i)
            p.cells[static_cast<std::size_t>(i + nd - 1)] = p.cells[static_cast<std::size_t>(i)];
          for (int d = 0; d < nd; ++d) {
            std::uint32_t piece = 0;
            for_each_bit(cell, [&](int v) {
              if (key[static_cast<std::size_t>(v)] == distinct[static_cast<std::size_t>(d)]) piece |= 1U << v;
            });
            p.cells[static_cast<std::size_t>(c + d)] = piece;
          }
          p.count += nd - 1;
          split = true;
          break;
        }
      }
      if (!split) return;
    }
  }

  Rows rows_for(const Labels& lab) const {
    Labels pos{};
    for (int i = 0; i < n_; ++i) pos[static_cast<std::size_t>(lab[static_cast<std::size_t>(i)])] = static_cast<std::int8_t>(i);
    Rows rows{};
    for (int i = 0; i < n_; ++i) {
      std::uint32_t r = 0;
      for_each_bit(out_[static_cast<std::size_t>(lab[static_cast<std::size_t>(i)])], [&](int w) {
        r |= 1U << (n_ - 1 - pos[static_cast<std::size_t>(w)]);
      });
      rows[static_cast<std::size_t>(i)] = r;
    }
    return rows;
  }

  int compare_rows(const Rows& a, const Rows& b) const {
    for (int i = 0; i < n_; ++i) {
      if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
        return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)] ? -1 : 1;
    }
    return 0;
  }

  CanonicalCode encode(const Rows& rows) const {
    CanonicalCode code;
    code.bytes.push_back(static_cast<char>(n_));
    int acc = 0;
    int filled = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        acc = (acc << 1) | static_cast<int>((rows[static_cast<std::size_t>(i)] >> (n_ - 1 - j)) & 1U);
        if (++filled == 8) {
          code.bytes.push_back(static_cast<char>(acc));
          acc = 0;
          filled = 0;
        }
      }
    }
    if (filled > 0) code.bytes.push_back(static_cast<char>(acc << (8 - filled)));
    return code;
  }

  int divergence(const std::vector<Vertex>& ref) const {
    const std::size_t m = std::min(ref.size(), path_.size());
    for (std::size_t i = 0; i < m; ++i)
      if (ref[i] != path_[i]) return static_cast<int>(i);
    return static_cast<int>(m);
  }

  void store_automorphism(const Labels& from, const Labels& to) {
    Permutation gamma(static_cast<std::size_t>(n_));
    bool identity = true;
    for (int i = 0; i < n_; ++i) {
      gamma[static_cast<std::size_t>(from[static_cast<std::size_t>(i)])] = to[static_cast<std::size_t>(i)];
      if (from[static_cast<std::size_t>(i)] != to[static_cast<std::size_t>(i)]) identity = false;
    }
    if (!identity) generators_.push_back(std::move(gamma));
  }

  // Leaf handling; returns the level to backtrack to.
  int leaf(const Partition& p, int depth) {
    Labels lab{};
    for (int i = 0; i < n_; ++i) lab[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(std::countr_zero(p.cells[static_cast<std::size_t>(i)]));
    const Rows rows = rows_for(lab);
    if (!have_first_) {
      have_first_ = true;
      first_lab_ = best_lab_ = lab;
      first_rows_ = best_rows_ = rows;
      first_path_ = best_path_ = path_;
      return depth;
    }
    if (compare_rows(rows, first_rows_) == 0) {
      store_automorphism(first_lab_, lab);
      return divergence(first_path_);
    }
    const int cmp = compare_rows(rows, best_rows_);
    if (cmp == 0) {
      store_automorphism(best_lab_, lab);
      return divergence(best_path_);
    }
    if (cmp > 0) {
      best_lab_ = lab;
      best_rows_ = rows;
      best_path_ = path_;
    }
    return depth;
  }

  // Root of v's orbit under the stored automorphisms fixing path_[0..depth).
  void stabiliser_orbits(int depth, std::array<int, kCanonicalMaxOrder>& root) const {
    std::iota(root.begin(), root.begin() + n_, 0);
    auto find = [&](int x) {
      while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
      return x;
    };
    for (const auto& g : generators_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i)
        fixes = g[static_cast<std::size_t>(path_[static_cast<std::size_t>(i)])] == path_[static_cast<std::size_t>(i)];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v);
        const int b = find(g[static_cast<std::size_t>(v)]);
        if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) root[static_cast<std::size_t>(v)] = find(v);
  }

  int search(const Partition& p, int depth) {
    if (p.count == n_) return leaf(p, depth);
    int target = 0;
    while ((p.cells[static_cast<std::size_t>(target)] & (p.cells[static_cast<std::size_t>(target)] - 1)) == 0) ++target;
    const std::uint32_t cell = p.cells[static_cast<std::size_t>(target)];
    std::uint32_t explored = 0;
    std::uint32_t remaining = cell;
    while (remaining != 0) {
      const int v = std::countr_zero(remaining);
      remaining &= remaining - 1;
      if (explored != 0 && !generators_.empty()) {
        std::array<int, kCanonicalMaxOrder> root{};
        stabiliser_orbits(depth, root);
        bool equivalent = false;
        for_each_bit(explored, [&](int u) {
          if (root[static_cast<std::size_t>(u)] == root[static_cast<std::size_t>(v)]) equivalent = true;
        });
        if (equivalent) continue;
      }
      explored |= 1U << v;

      Partition child = p;
      for (int i = child.count - 1; i > target; --i) child.cells[static_cast<std::size_t>(i + 1)] = child.cells[static_cast<std::size_t>(i)];
      child.cells[static_cast<std::size_t>(target)] = 1U << v;
      child.cells[static_cast<std::size_t>(target + 1)] = cell & ~(1U << v);
      ++child.count;
      refine(child);

      path_.push_back(v);
      const int back = search(child, depth + 1);
      path_.pop_back();
      if (back < depth) return back;
    }
    return depth;
  }

  int n_;
  Rows out_{};
  Rows in_{};
  std::vector<Vertex> path_;
  bool have_first_ = false;
  Labels first_lab_{}, best_lab_{};
  Rows first_rows_{}, best_rows_{};
  std::vector<Vertex> first_path_, best_path_;
  std::vector<Permutation> generators_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const OrientedGraph& g) {
  if (g.order() > kCanonicalMaxOrder)
    fail(ErrorCode::TooLarge, "canonical labelling is exact only up to 16 vertices, got " + std::to_string(g.order()));
  return detail::CanonSearch(g).run();
}

inline CanonicalCode canonical_code(const OrientedGraph& g) { return canonical_labeling(g).code; }

inline OrientedGraph decode_canonical_code(const CanonicalCode& code) {
  if (code.bytes.empty()) fail(ErrorCode::MalformedHeader, "empty canonical code");
  const int n = code.order();
  if (n > OrientedGraph::kMaxVertices) fail(ErrorCode::TooLarge, "order too large");
  const std::size_t need = 1 + (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 7) / 8;
  if (code.bytes.size() != need) fail(ErrorCode::TruncatedPayload, "canonical code has wrong length");
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * n + j);
      if ((static_cast<unsigned char>(code.bytes[1 + k / 8]) >> (7 - k % 8)) & 1U) rows[static_cast<std::size_t>(i)] |= bit(j);
    }
  return OrientedGraph::from_out_rows(n, rows);
}

// The representative of g's isomorphism class that its code decodes to.
inline OrientedGraph canonical_form(const OrientedGraph& g) { return decode_canonical_code(canonical_code(g)); }

inline bool isomorphic(const OrientedGraph& a, const OrientedGraph& b) {
  return a.order() == b.order() && a.arc_count() == b.arc_count() && canonical_code(a) == canonical_code(b);
}

// Orbit representative (smallest member) for every vertex under the group
// generated by gens.
inline std::vector<Vertex> orbit_roots(int n, const std::vector<Permutation>& gens) {
  std::vector<Vertex> root(static_cast<std::size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](Vertex x) {
    while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& g : gens)
    for (Vertex v = 0; v < n; ++v) {
      const Vertex a = find(v);
      const Vertex b = find(g[static_cast<std::size_t>(v)]);
      if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  for (Vertex v = 0; v < n; ++v) root[static_cast<std::size_t>(v)] = find(v);
  return root;
}

}  // namespace antitrace

template <>
struct std::hash<antitrace::CanonicalCode> {
  std::size_t operator()(const antitrace::CanonicalCode& c) const noexcept { return std::hash<std::string>{}(c.bytes); }
};
