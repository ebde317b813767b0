#include <gtest/gtest.h>

#include "antitrace/canonical.hpp"
#include "antitrace/digraph6.hpp"
#include "antitrace/enumeration.hpp"
#include "antitrace/fsearch.hpp"
#include "antitrace/generators.hpp"
#include "antitrace/kat.hpp"
#include "oracles.hpp"

using namespace antitrace;

namespace {

bool spans(const AntiWalk& w, VertexSet s) {
  return static_cast<int>(w.vertices.size()) == s.size() && VertexSet::from(w.vertices) == s;
}

}  // namespace

TEST(SmallTable, MatchesBruteForce) {
  for (int k = 1; k <= 5; ++k) {
    const auto& table = detail::small_table(k);
    for (std::uint64_t c = 0; c < table.size(); c += (k == 5 ? 7 : 1)) {
      const auto g = oracle::labeled_oriented(k, c);
      EXPECT_EQ(subset_anti_traceable(g, low_bits(k)), oracle::brute_anti_traceable(g)) << k << " " << c;
    }
  }
}

TEST(IsKat, PaleySeven) {
  const auto four = is_k_at(paley(7), 4);
  EXPECT_TRUE(four.holds);
  EXPECT_EQ(four.subsets_checked, 35U);
  EXPECT_FALSE(four.witness);
  const auto seven = is_k_at(paley(7), 7);
  EXPECT_FALSE(seven.holds);
  ASSERT_TRUE(seven.witness);
  EXPECT_EQ(*seven.witness, VertexSet::all(7));
}

TEST(IsKat, RotationalFiveTriangle) {
  const auto v = is_k_at(rotational(5), 3);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  const auto g = rotational(5);
  // Oracle: first failing 3-subset in colex order.
  std::optional<VertexSet> first;
  for (int c = 2; c < 5 && !first; ++c)
    for (int b = 1; b < c && !first; ++b)
      for (int a = 0; a < b && !first; ++a)
        if (!oracle::brute_anti_traceable(induced(g, VertexSet{a, b, c}).graph)) first = VertexSet{a, b, c};
  ASSERT_TRUE(first);
  EXPECT_EQ(*v.witness, *first);
  EXPECT_EQ(*v.witness, (VertexSet{0, 1, 3}));
  EXPECT_FALSE(oracle::brute_anti_traceable(induced(g, VertexSet{0, 2, 4}).graph));
}

TEST(IsKat, Errors) {
  EXPECT_THROW(is_k_at(paley(3), 4), Error);
  KatOptions zero;
  zero.samples = 0;
  EXPECT_THROW(is_k_at(paley(7), 3, zero), Error);
  KatOptions tiny;
  tiny.budget = 10;
  try {
    is_k_at(paley(7), 4, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
}

TEST(IsKat, AgreesWithBruteForce) {
  for (int n = 3; n <= 5; ++n)
    for (const auto& g : enumerate_oriented_graphs(n))
      for (int k = 2; k <= n; ++k) EXPECT_EQ(is_k_at(g, k).holds, oracle::brute_k_at(g, k));
}

TEST(IsKat, SamplingIsSound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_digraph(9, {RandomModel::Bernoulli, 0.9}, seed);
    KatOptions ko;
    ko.samples = 30;
    ko.seed = seed;
    const auto sampled = is_k_at(g, 4, ko);
    const auto exact = is_k_at(g, 4);
    if (exact.holds) EXPECT_TRUE(sampled.holds);
    if (!sampled.holds) {
      EXPECT_FALSE(exact.holds);
      EXPECT_FALSE(is_anti_traceable(induced(g, *sampled.witness).graph));
    }
  }
}

TEST(KatHook, MatchesFullCheck) {
  for (int k = 2; k <= 4; ++k) {
    const auto hook = kat_prune_hook(k);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto g = random_digraph(7, {RandomModel::Bernoulli, 0.85}, seed);
      const auto parent = induced(g, VertexSet::all(6)).graph;
      if (!is_k_at(parent, k).holds) continue;
      EXPECT_EQ(hook(g, 6), is_k_at(g, k).holds);
    }
  }
}

TEST(Independence, SmallCases) {
  EXPECT_EQ(independence_number(OrientedGraph(5)).size, 5);
  EXPECT_EQ(independence_number(paley(7)).size, 1);
  EXPECT_EQ(independence_number(t4()).size, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = random_digraph(8, {RandomModel::Bernoulli, 0.5}, seed);
    const auto r = independence_number(g);
    int brute = 0;
    for (std::uint64_t m = 0; m < 256; ++m) {
      bool ok = true;
      for_each_bit(m, [&](int v) { ok = ok && (g.neighbour_row(v) & m) == 0; });
      if (ok) brute = std::max(brute, popcount(m));
    }
    EXPECT_EQ(r.size, brute);
    for_each_bit(r.witness.bits(), [&](int v) { EXPECT_EQ(g.neighbour_row(v) & r.witness.bits(), 0U); });
  }
}

TEST(Recognize, Examples) {
  const auto d = recognize_3at(t4());
  ASSERT_TRUE(d);
  EXPECT_EQ(d->blocks, (std::vector<VertexSet>{VertexSet{0}, VertexSet{1, 2}, VertexSet{3}}));
  EXPECT_FALSE(recognize_3at(paley(3)));
  EXPECT_FALSE(recognize_3at(OrientedGraph(3)));
}

TEST(Recognize, EquivalentToBruteForceUpToSix) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& g : enumerate_oriented_graphs(n)) {
      const auto d = recognize_3at(g);
      ASSERT_EQ(d.has_value(), is_k_at(g, 3).holds) << encode_digraph6(g);
      if (n <= 5) {
        EXPECT_EQ(d.has_value(), oracle::brute_k_at(g, 3));
      }
      if (d) {
        EXPECT_EQ(canonical_code(extended_transitive({d->sizes()}).graph), canonical_code(g));
      }
    }
}

TEST(Recognize, ExtendedTransitiveBlockSizes) {
  EXPECT_TRUE(recognize_3at(extended_transitive({{2, 1, 2, 2}}).graph));
  EXPECT_FALSE(recognize_3at(extended_transitive({{1, 3, 1}}).graph));
  EXPECT_FALSE(recognize_3at(extended_transitive({{3}}).graph));
}

TEST(AntiCycle3At, Examples) {
  const auto tt4 = build_3at_anti_cycle(transitive(4));
  ASSERT_TRUE(tt4.cycle);
  EXPECT_TRUE(validate_anti_walk(transitive(4), *tt4.cycle));
  EXPECT_EQ(tt4.cycle->order(), 4);

  const auto t = build_3at_anti_cycle(t4());
  EXPECT_EQ(t.status, ErrorCode::NoCycle);
  EXPECT_FALSE(t.cycle);
  EXPECT_TRUE(validate_anti_walk(t4(), t.path));
  EXPECT_EQ(t.path.order(), 4);

  const auto et = extended_transitive({{2, 2}});
  const auto c = build_3at_anti_cycle(et.graph);
  ASSERT_TRUE(c.cycle);
  EXPECT_TRUE(validate_anti_walk(et.graph, *c.cycle));
  EXPECT_EQ(format_anti_walk(*c.cycle), "0>2<1>3<0");

  EXPECT_THROW(build_3at_anti_cycle(paley(3)), Error);
}

TEST(AntiCycle3At, AllBlockPatternsUpToTen) {
  // Every composition of n into parts of size 1 or 2.
  for (int n = 4; n <= 10; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      std::vector<int> sizes;
      int total = 0;
      for (int i = 0; total < n; ++i) {
        const int s = (bits >> i) & 1U ? 2 : 1;
        sizes.push_back(s);
        total += s;
      }
      if (total != n || (bits >> sizes.size()) != 0) continue;
      const auto g = extended_transitive({sizes}).graph;
      const auto w = build_3at_anti_cycle(g);
      EXPECT_TRUE(validate_anti_walk(g, w.path));
      EXPECT_EQ(w.path.order(), n);
      if (n == 4 && sizes == std::vector<int>{1, 2, 1}) {
        EXPECT_EQ(w.status, ErrorCode::NoCycle);
        continue;
      }
      ASSERT_TRUE(w.cycle);
      EXPECT_TRUE(validate_anti_walk(g, *w.cycle));
      EXPECT_EQ(w.cycle->order(), n % 2 == 0 ? n : n - 1);
    }
  }
}

TEST(XYFamily, InstanceShape) {
  const auto inst = xy_family(16, 16, 1);
  EXPECT_EQ(inst.x.size(), 8);
  EXPECT_EQ(inst.y.size(), 8);
  EXPECT_EQ(independence_number(inst.graph).size, 8);
  const auto odd = xy_family(17, 20, 2);
  EXPECT_EQ(odd.x.size(), 9);
  EXPECT_EQ(odd.y.size(), 11);
  for (Vertex x : odd.x.to_vector()) {
    EXPECT_EQ(odd.graph.in_degree(x), 11);
    EXPECT_EQ(odd.graph.out_degree(x), 0);
  }
  EXPECT_THROW(xy_family(15, 20, 0), Error);
  EXPECT_THROW(xy_family(16, 15, 0), Error);
}

TEST(XYFamily, PathForEveryIntersectionSize) {
  for (int k : {16, 17}) {
    const auto inst = xy_family(k, k + 10, 5);
    const auto xs = inst.x.to_vector();
    const auto ys = inst.y.to_vector();
    for (int t = 0; t <= inst.x.size(); ++t) {
      if (k - t > static_cast<int>(ys.size())) continue;
      VertexSet kset;
      for (int i = 0; i < t; ++i) kset = kset.with(xs[static_cast<std::size_t>(i)]);
      for (int i = 0; i < k - t; ++i) kset = kset.with(ys[static_cast<std::size_t>(i)]);
      const auto r = xy_anti_path(inst, kset);
      EXPECT_EQ(r.t, t);
      EXPECT_FALSE(r.fallback);
      EXPECT_TRUE(validate_anti_walk(inst.graph, r.walk)) << format_anti_walk(r.walk);
      EXPECT_TRUE(spans(r.walk, kset));
    }
  }
  const auto inst = xy_family(16, 20, 1);
  EXPECT_THROW(xy_anti_path(inst, VertexSet{0, 1, 2}), Error);
}

TEST(FSearch, SmallKTwo) {
  const auto rep = f_search(2, 2, 8);
  std::vector<int> orders;
  for (const auto& row : rep.orders)
    if (!row.counterexamples.empty()) orders.push_back(row.order);
  EXPECT_EQ(orders, (std::vector<int>{3, 5, 7}));
  EXPECT_EQ(rep.empirical_f, 8);
  EXPECT_TRUE(rep.complete);
}

TEST(FSearch, KThreeHasNoCounterexamples) {
  const auto rep = f_search(3, 3, 7);
  for (const auto& row : rep.orders) {
    EXPECT_TRUE(row.counterexamples.empty());
    EXPECT_EQ(row.kat_count, std::vector<std::uint64_t>({3, 5, 8, 13, 21})[static_cast<std::size_t>(row.order - 3)]);
  }
  EXPECT_EQ(rep.empirical_f, 3);
}

TEST(FSearch, PruningIsSoundUpToSix) {
  // Every k-AT graph has at most k-2 non-neighbours per vertex.
  for (int n = 4; n <= 6; ++n)
    for (const auto& g : enumerate_oriented_graphs(n))
      for (int k = 2; k <= std::min(n, 4); ++k) {
        if (!is_k_at(g, k).holds) continue;
        EnumFilter f;
        f.complement_max_degree = k - 2;
        EXPECT_TRUE(passes_filter(g, f));
      }
}

TEST(FSearch, CountsMatchUnprunedSweepUpToSix) {
  for (int k = 2; k <= 4; ++k) {
    const auto rep = f_search(k, k, 6);
    for (const auto& row : rep.orders) {
      std::uint64_t kat = 0;
      std::vector<std::string> cex;
      for (const auto& g : enumerate_oriented_graphs(row.order))
        if (is_k_at(g, k).holds) {
          ++kat;
          if (!is_anti_traceable(g)) cex.push_back(encode_digraph6(canonical_form(g)));
        }
      EXPECT_EQ(row.kat_count, kat) << k << " " << row.order;
      std::sort(cex.begin(), cex.end());
      auto got = row.counterexamples;
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, cex);
    }
  }
}

TEST(FSearch, BudgetMarksPartial) {
  FSearchOptions o;
  o.budget = 5;
  const auto rep = f_search(2, 2, 8, o);
  EXPECT_FALSE(rep.complete);
  EXPECT_LT(rep.orders.back().order, 8);
}

TEST(FourVertexObservations, HoldOnEveryAntiTraceableQuadruple) {
  // The statements only involve the four vertices, so 4-AT reduces to the
  // quadruple itself being anti-traceable.
  for (std::uint64_t c = 0; c < oracle::pow3(6); ++c) {
    const auto g = oracle::labeled_oriented(4, c);
    if (!oracle::brute_anti_traceable(g)) continue;
    std::array<Vertex, 4> q{0, 1, 2, 3};
    do EXPECT_EQ(four_vertex_violation(g, q), 0) << encode_digraph6(g);
    while (std::next_permutation(q.begin(), q.end()));
  }
}

TEST(Audit, PaleySeven) {
  const auto rep = audit_longest_path_laws(paley(7), 4);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.longest % 2, 0);
  EXPECT_LT(rep.longest, 7);
  for (const char* name : {"endpoint_adjacency", "even_longest_order", "endpoint_extension_exclusion",
                           "four_vertex_observations", "even_subset_inheritance"}) {
    ASSERT_NE(rep.law(name), nullptr) << name;
    EXPECT_EQ(rep.law(name)->status, LawStatus::Pass) << name;
  }
}

TEST(Audit, VacuousOnAntiTraceable) {
  const auto g = transitive(6);
  const auto rep = audit_longest_path_laws(g, 4);
  EXPECT_EQ(rep.longest, 6);
  EXPECT_TRUE(rep.passed());
  EXPECT_THROW(audit_longest_path_laws(paley(7), 7), Error);
}
