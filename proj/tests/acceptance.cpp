// Acceptance suite: one PASS/FAIL line per criterion, details indented above it.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "antitrace/antitrace.hpp"
#include "oracles.hpp"

using namespace antitrace;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note(const std::string& s) { std::printf("    %s\n", s.c_str()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string d6_canonical(const OrientedGraph& g) { return encode_digraph6(canonical_form(g)); }

int threads() { return default_thread_count(); }

// 1. Tournaments of orders 3..8: oracle class counts up to 6, exactly three
// non-anti-traceable classes (PT_3, RT_5, PT_7).
bool criterion1() {
  bool ok = true;
  std::set<CanonicalCode> bad;
  for (int n = 3; n <= 8; ++n) {
    const auto codes = enumerate_codes(n, EnumFilter{std::nullopt, 0, true}, threads());
    std::string line = fmt("order %d: %zu classes", n, codes.size());
    if (n <= 6) {
      const auto oracle_count = oracle::brute_classes(n, true).size();
      line += fmt(" (oracle %zu)", oracle_count);
      ok = ok && oracle_count == codes.size();
    }
    std::vector<char> traceable(codes.size());
    parallel_for(codes.size(), threads(), [&](std::size_t i) {
      traceable[i] = is_anti_traceable(decode_canonical_code(codes[i]));
    });
    int missing = 0;
    for (std::size_t i = 0; i < codes.size(); ++i)
      if (!traceable[i]) {
        bad.insert(codes[i]);
        ++missing;
      }
    note(line + fmt(", %d without anti-Hamiltonian path", missing));
  }
  const std::set<CanonicalCode> expected{canonical_code(paley(3)), canonical_code(rotational(5)),
                                         canonical_code(paley(7))};
  note(fmt("exceptional classes: %zu, equal to {PT_3, RT_5, PT_7}: %s", bad.size(), bad == expected ? "yes" : "no"));
  return ok && bad == expected;
}

// 2. Every tournament of order 9 has an anti-Hamiltonian path from every vertex.
bool criterion2() {
  const auto codes = enumerate_codes(9, EnumFilter{std::nullopt, 0, true}, threads());
  std::atomic<std::uint64_t> failures{0}, calls{0};
  parallel_for(codes.size(), threads(), [&](std::size_t i) {
    const auto g = decode_canonical_code(codes[i]);
    for (Vertex v = 0; v < 9; ++v) {
      const auto w = anti_hamiltonian_path_from(g, v);
      ++calls;
      if (!w || w->vertices.front() != v || w->order() != 9 || !validate_anti_walk(g, *w)) ++failures;
    }
  });
  note(fmt("%zu classes, %llu rooted searches, %llu failures", codes.size(),
           static_cast<unsigned long long>(calls.load()), static_cast<unsigned long long>(failures.load())));
  return codes.size() == 191536 && failures == 0;
}

bool recheck_counterexample(const std::string& d6, int k) {
  const auto g = decode_digraph6(d6);
  return oracle::brute_k_at(g, k) == is_k_at(g, k).holds && is_k_at(g, k).holds && !is_anti_traceable(g) &&
         (g.order() > 7 || !oracle::brute_anti_traceable(g));
}

// 3. f(2) = 8: counterexamples exactly at 3, 5, 7.
bool criterion3() {
  FSearchOptions o;
  o.threads = threads();
  const auto rep = f_search(2, 2, 9, o);
  std::vector<int> at;
  std::set<std::string> found;
  bool recheck = true;
  for (const auto& row : rep.orders) {
    note(fmt("order %d: kat=%llu counterexamples=%zu", row.order, static_cast<unsigned long long>(row.kat_count),
             row.counterexamples.size()));
    if (!row.counterexamples.empty()) at.push_back(row.order);
    for (const auto& s : row.counterexamples) {
      found.insert(s);
      recheck = recheck && recheck_counterexample(s, 2);
    }
  }
  const std::set<std::string> expected{d6_canonical(paley(3)), d6_canonical(rotational(5)), d6_canonical(paley(7))};
  note(fmt("empirical_f=%d, counterexamples are PT_3/RT_5/PT_7: %s, re-validated: %s", rep.empirical_f,
           found == expected ? "yes" : "no", recheck ? "yes" : "no"));
  return rep.complete && at == std::vector<int>{3, 5, 7} && rep.empirical_f == 8 && found == expected && recheck;
}

// 4. f(3) = 3: recognizer vs brute force, search, and anti-cycle construction.
bool criterion4() {
  std::uint64_t disagreements = 0, checked = 0;
  for (int n = 3; n <= 6; ++n) {
    const auto graphs = enumerate_oriented_graphs(n, {}, threads());
    std::vector<char> bad(graphs.size());
    parallel_for(graphs.size(), threads(), [&](std::size_t i) {
      const auto d = recognize_3at(graphs[i]);
      bool ok = d.has_value() == oracle::brute_k_at(graphs[i], 3);
      if (d) ok = ok && canonical_code(extended_transitive({d->sizes()}).graph) == canonical_code(graphs[i]);
      bad[i] = !ok;
    });
    for (char b : bad) disagreements += b ? 1 : 0;
    checked += graphs.size();
    note(fmt("order %d: %zu classes", n, graphs.size()));
  }
  note(fmt("(a) %llu classes, %llu disagreements", static_cast<unsigned long long>(checked),
           static_cast<unsigned long long>(disagreements)));

  FSearchOptions o;
  o.threads = threads();
  const auto rep = f_search(3, 3, 7, o);
  std::size_t cex = 0;
  for (const auto& row : rep.orders) cex += row.counterexamples.size();
  note(fmt("(b) f_search(3, 3..7): %zu counterexamples, empirical_f=%d", cex, rep.empirical_f));

  int graphs = 0, failures = 0;
  for (int n = 4; n <= 10; ++n) {
    // Block sequences of 1s and 2s summing to n.
    std::vector<std::vector<int>> seqs{{}};
    std::vector<std::vector<int>> done;
    while (!seqs.empty()) {
      auto s = seqs.back();
      seqs.pop_back();
      int sum = 0;
      for (int x : s) sum += x;
      if (sum == n) {
        done.push_back(s);
        continue;
      }
      for (int b : {1, 2})
        if (sum + b <= n) {
          auto t = s;
          t.push_back(b);
          seqs.push_back(t);
        }
    }
    for (const auto& sizes : done) {
      ++graphs;
      const auto g = extended_transitive({sizes}).graph;
      const auto w = build_3at_anti_cycle(g);
      bool ok = validate_anti_walk(g, w.path) && w.path.order() == n && !w.path.is_cycle;
      const bool is_t4 = canonical_code(g) == canonical_code(t4());
      if (n % 2 == 0) {
        if (is_t4) ok = ok && !w.cycle && w.status == ErrorCode::NoCycle && !oracle::brute_anti_cycle(g);
        else ok = ok && w.cycle && w.cycle->is_cycle && w.cycle->order() == n && validate_anti_walk(g, *w.cycle);
      } else {
        ok = ok && w.cycle && w.cycle->order() == n - 1 && validate_anti_walk(g, *w.cycle);
      }
      failures += ok ? 0 : 1;
    }
  }
  note(fmt("(c) %d extended transitive tournaments of order 4..10, %d construction failures", graphs, failures));
  return disagreements == 0 && checked == 1 + 2 + 7 + 42 + 582 + 21480 - 3 && rep.complete && cex == 0 &&
         failures == 0;
}

// Order-8 4-AT classes, shared by criteria 5 and 6.
std::vector<CanonicalCode> four_at_order_eight() {
  return enumerate_codes(8, EnumFilter{std::nullopt, 2, false}, threads(), kat_prune_hook(4));
}

FSearchReport four_search;

// 5. f(4) = 8: PT_7 is 4-AT but not anti-traceable; no order-8 counterexample.
bool criterion5() {
  const auto pt7 = paley(7);
  const auto v = is_k_at(pt7, 4);
  note(fmt("PT_7: 4-AT=%s over %llu subsets, anti-traceable=%s", v.holds ? "yes" : "no",
           static_cast<unsigned long long>(v.subsets_checked), is_anti_traceable(pt7) ? "yes" : "no"));
  FSearchOptions o;
  o.threads = threads();
  four_search = f_search(4, 7, 8, o);
  bool pt7_listed = false;
  std::size_t order8 = 0;
  bool recheck = true;
  for (const auto& row : four_search.orders) {
    note(fmt("order %d: classes_scanned=%llu kat=%llu counterexamples=%zu", row.order,
             static_cast<unsigned long long>(row.classes_scanned), static_cast<unsigned long long>(row.kat_count),
             row.counterexamples.size()));
    for (const auto& s : row.counterexamples) {
      recheck = recheck && recheck_counterexample(s, 4);
      if (s == d6_canonical(pt7)) pt7_listed = true;
    }
    if (row.order == 8) order8 = row.counterexamples.size();
  }
  note(fmt("PT_7 among order-7 counterexamples: %s; empirical_f=%d", pt7_listed ? "yes" : "no",
           four_search.empirical_f));
  return v.holds && v.subsets_checked == 35 && !is_anti_traceable(pt7) && four_search.complete && pt7_listed &&
         order8 == 0 && four_search.empirical_f == 8 && recheck;
}

// 6. Longest-path laws on PT_7 and every order-7 counterexample; every order-8
// 4-AT class is 6-AT and 8-AT.
bool criterion6() {
  std::vector<OrientedGraph> targets{paley(7)};
  for (const auto& row : four_search.orders)
    if (row.order == 7)
      for (const auto& s : row.counterexamples) targets.push_back(decode_digraph6(s));
  bool ok = true;
  for (const auto& g : targets) {
    const auto rep = audit_longest_path_laws(g, 4);
    std::string line = rep.graph + fmt(" longest=%d:", rep.longest);
    for (const auto& l : rep.laws) line += " " + l.name + "=" + std::string(to_string(l.status));
    note(line);
    ok = ok && rep.passed() && rep.longest < g.order();
  }
  const auto codes = four_at_order_eight();
  std::atomic<std::uint64_t> bad{0};
  parallel_for(codes.size(), threads(), [&](std::size_t i) {
    const auto g = decode_canonical_code(codes[i]);
    if (!is_k_at(g, 6).holds || !is_k_at(g, 8).holds) ++bad;
  });
  std::uint64_t expected = 0;
  for (const auto& row : four_search.orders)
    if (row.order == 8) expected = row.kat_count;
  note(fmt("order-8 4-AT classes: %zu (search reported %llu), not 6-AT and 8-AT: %llu", codes.size(),
           static_cast<unsigned long long>(expected), static_cast<unsigned long long>(bad.load())));
  return ok && targets.size() >= 2 && bad == 0 && codes.size() == expected && !codes.empty();
}

// 7. X/Y family: independence number and spanning anti-paths for sampled K.
bool criterion7() {
  int successes = 0, failures = 0, fallbacks = 0;
  bool alpha_ok = true;
  for (int k : {16, 17, 18})
    for (int n : {k, k + 5, k + 10}) {
      // 200 subsets per (k, n), spread round-robin over the three seeded instances.
      std::vector<XYInstance> insts;
      for (std::uint64_t seed : {1, 2, 3}) {
        insts.push_back(xy_family(k, n, seed));
        alpha_ok = alpha_ok && independence_number(insts.back().graph).size == (k + 1) / 2;
      }
      Rng rng(static_cast<std::uint64_t>(k * 100 + n));
      for (int s = 0; s < 200; ++s) {
        const auto& inst = insts[static_cast<std::size_t>(s % 3)];
        const auto kset = VertexSet::from(rng.sample(n, k));
        bool ok = false;
        try {
          const auto r = xy_anti_path(inst, kset);
          ok = validate_anti_walk(inst.graph, r.walk) && r.walk.order() == k && VertexSet::from(r.walk.vertices) == kset;
          fallbacks += r.fallback ? 1 : 0;
        } catch (const Error&) {
          ok = false;
        }
        (ok ? successes : failures) += 1;
      }
    }
  note(fmt("alpha = ceil(k/2) on all 27 instances: %s", alpha_ok ? "yes" : "no"));
  note(fmt("%d successes, %d failures, fallback rate %d/%d", successes, failures, fallbacks, successes + failures));
  return alpha_ok && successes == 1800 && failures == 0;
}

// 8. Long anti-paths inside random one-way bipartite pairs.
bool criterion8() {
  const int n = 500;
  const double eps = 0.05, d = 0.45;
  const int bound = static_cast<int>(std::ceil((1 - eps / (d - eps) - 3 * eps) * 2 * n - 1e-9));
  VertexList xs, ys;
  for (int v = 0; v < n; ++v) xs.push_back(v), ys.push_back(n + v);
  int good = 0, min_order = 2 * n;
  double slowest = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = random_large_digraph(2 * n, {RandomModel::BipartiteOneWay, 0.5}, seed);
    const auto t0 = Clock::now();
    bool ok = false;
    try {
      Vertex x = 0, y = n;
      while (x < n && g.out_degree(x) < (d - eps) * n) ++x;
      while (y < 2 * n && g.in_degree(y) < (d - eps) * n) ++y;
      const auto p = pair_anti_path(g, xs, ys, {}, {}, x, y, d, eps);
      min_order = std::min(min_order, p.walk.order());
      ok = validate_anti_walk(g, p.walk) && p.walk.order() >= bound;
    } catch (const Error& e) {
      note(fmt("seed %llu: %s", static_cast<unsigned long long>(seed), e.what()));
    }
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    good += ok && dt < 1.0 ? 1 : 0;
  }
  note(fmt("bound %d; %d/20 runs valid and >= bound in < 1 s; smallest order %d; slowest %.3f s", bound, good,
           min_order, slowest));
  return good >= 19;
}

// 9. Almost spanning anti-path in random tournaments through the pipeline.
bool criterion9() {
  const int n = 2000;
  const double eps = 0.03;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string line;
    try {
      const auto g = random_large_digraph(n, {RandomModel::Tournament, 0.5}, seed);
      const auto tr = almost_spanning(g, random_partition(n, 20, seed + 100), eps, threads());
      ok = validate_anti_walk(g, tr.walk) && tr.walk.order() >= static_cast<int>(0.70 * n);
      int two_hop = 0;
      for (const auto& c : tr.connections) two_hop += c.kind == ConnectionKind::TwoHop ? 1 : 0;
      line = fmt("order %d (ratio %.4f), %zu matched pairs, %d two-hop connectors", tr.walk.order(), tr.ratio(),
                 tr.matching.size(), two_hop);
    } catch (const Error& e) {
      line = e.what();
    }
    const double dt = seconds_since(t0);
    note(fmt("seed %llu: ", static_cast<unsigned long long>(seed)) + line + fmt(", %.2f s", dt));
    good += ok && dt < 60.0 ? 1 : 0;
  }
  note(fmt("%d/5 runs reach 0.70 n", good));
  return good >= 4;
}

// 10. Oracle and property suite.
bool criterion10() {
  std::uint64_t graphs = 0, mismatches = 0;
  const auto check = [&](const OrientedGraph& g) {
    bool ok = is_anti_traceable(g) == oracle::brute_anti_traceable(g);
    ok = ok && anti_hamiltonian_cycle(g).has_value() == oracle::brute_anti_cycle(g);
    ok = ok && longest_anti_path(g).order() == oracle::brute_longest_anti_path(g);
    const std::uint64_t starts = anti_hamiltonian_start_vertices(g);
    for (Vertex v = 0; v < g.order(); ++v)
      ok = ok && (((starts >> v) & 1U) != 0) == oracle::brute_anti_path_from(g, v);
    return ok;
  };
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t c = 0; c < oracle::pow3(oracle::pair_count(n)); ++c, ++graphs)
      mismatches += check(oracle::labeled_oriented(n, c)) ? 0 : 1;
  {
    const auto six = enumerate_oriented_graphs(6, {}, threads());
    std::vector<char> bad(six.size());
    parallel_for(six.size(), threads(), [&](std::size_t i) { bad[i] = !check(six[i]); });
    for (char b : bad) mismatches += b ? 1 : 0;
    graphs += six.size();
    // Every labeled order-6 graph against the brute-force verdicts of its class.
    std::map<CanonicalCode, std::array<int, 3>> truth;
    for (const auto& g : six)
      truth[canonical_code(g)] = {oracle::brute_anti_traceable(g), oracle::brute_anti_cycle(g),
                                  oracle::brute_longest_anti_path(g)};
    const std::uint64_t total = oracle::pow3(oracle::pair_count(6));
    std::atomic<std::uint64_t> labeled_bad{0};
    parallel_for(total, threads(), [&](std::size_t c) {
      const auto g = oracle::labeled_oriented(6, c);
      const auto& t = truth.at(canonical_code(g));
      if (t[0] != static_cast<int>(is_anti_traceable(g)) || t[1] != static_cast<int>(anti_hamiltonian_cycle(g).has_value()) ||
          t[2] != longest_anti_path(g).order())
        ++labeled_bad;
    });
    mismatches += labeled_bad;
    graphs += total;
  }
  note(fmt("solver vs brute force: %llu graphs (all labeled up to 6), %llu mismatches",
           static_cast<unsigned long long>(graphs), static_cast<unsigned long long>(mismatches)));

  std::uint64_t invariance_bad = 0;
  Rng rng(10);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto g = random_digraph(8, {RandomModel::Bernoulli, rng.unit()}, rng.next());
    std::vector<Vertex> perm{0, 1, 2, 3, 4, 5, 6, 7};
    rng.shuffle(perm);
    const auto h = relabeled(g, perm);
    const auto r = reversed(g);
    std::uint64_t mapped = 0;
    for_each_bit(anti_hamiltonian_start_vertices(g), [&](int v) { mapped |= bit(perm[static_cast<std::size_t>(v)]); });
    bool ok = mapped == anti_hamiltonian_start_vertices(h);
    ok = ok && anti_hamiltonian_start_vertices(r) == anti_hamiltonian_start_vertices(g);
    ok = ok && anti_hamiltonian_cycle(g).has_value() == anti_hamiltonian_cycle(h).has_value();
    ok = ok && anti_hamiltonian_cycle(g).has_value() == anti_hamiltonian_cycle(r).has_value();
    ok = ok && longest_anti_path(g).order() == longest_anti_path(h).order();
    ok = ok && longest_anti_path(g).order() == longest_anti_path(r).order();
    ok = ok && canonical_code(g) == canonical_code(h);
    invariance_bad += ok ? 0 : 1;
  }
  note(fmt("reversal/relabeling invariance on 10000 random order-8 graphs: %llu violations",
           static_cast<unsigned long long>(invariance_bad)));

  std::uint64_t roundtrip = 0, roundtrip_bad = 0;
  for (int n = 0; n <= 5; ++n)
    for (const auto& g : enumerate_oriented_graphs(n)) {
      ++roundtrip;
      roundtrip_bad += decode_digraph6(encode_digraph6(g)) == g ? 0 : 1;
    }
  note(fmt("digraph6 round trip: %llu classes, %llu failures", static_cast<unsigned long long>(roundtrip),
           static_cast<unsigned long long>(roundtrip_bad)));

  // Canonical codes and brute-force class keys must induce the same partition.
  std::uint64_t canon_bad = 0, labeled = 0;
  for (int n = 1; n <= 5; ++n) {
    const auto perms = oracle::all_permutations(n);
    std::map<std::uint64_t, CanonicalCode> by_key;
    std::map<CanonicalCode, std::uint64_t> by_code;
    for (std::uint64_t c = 0; c < oracle::pow3(oracle::pair_count(n)); ++c, ++labeled) {
      const auto g = oracle::labeled_oriented(n, c);
      const auto key = oracle::brute_class_key(g, perms);
      const auto code = canonical_code(g);
      const auto [ki, kn] = by_key.emplace(key, code);
      const auto [ci, cn] = by_code.emplace(code, key);
      if (ki->second != code || ci->second != key) ++canon_bad;
    }
  }
  note(fmt("canonical code vs brute-force isomorphism: %llu labeled graphs, %llu conflicts",
           static_cast<unsigned long long>(labeled), static_cast<unsigned long long>(canon_bad)));
  return mismatches == 0 && invariance_bad == 0 && roundtrip_bad == 0 && canon_bad == 0;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<bool()>>> criteria{
      {"tournament sweep, orders 3-8", criterion1},
      {"rooted anti-paths in all order-9 tournaments", criterion2},
      {"f(2) = 8", criterion3},
      {"f(3) = 3", criterion4},
      {"f(4) = 8", criterion5},
      {"longest anti-path laws", criterion6},
      {"X/Y family", criterion7},
      {"long anti-paths in regular pairs", criterion8},
      {"almost spanning pipeline", criterion9},
      {"oracle and property suite", criterion10},
  };
  std::printf("threads: %d\n", threads());
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s (%.1f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                seconds_since(t0));
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
