#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "antitrace/antitrace.hpp"
#include "antitrace/report_json.hpp"

using namespace antitrace;

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Common {
  std::string output = "text";
  int threads = 0;
  std::optional<std::uint64_t> seed;
  std::string input;

  bool json() const { return output == "json"; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c, bool reads_input) {
  app->add_option("--output", c.output, "Report format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--threads", c.threads, "Worker count (default: ANTITRACE_THREADS or all cores)");
  app->add_option("--seed", c.seed, "Seed for randomized operations");
  if (reads_input) app->add_option("--input", c.input, "digraph6 file (default: standard input)");
}

std::vector<OrientedGraph> read_input(const Common& c) {
  if (c.input.empty() || c.input == "-") return read_digraph6_lines(std::cin);
  std::ifstream in(c.input);
  if (!in) throw UsageError("cannot open " + c.input);
  return read_digraph6_lines(in);
}

// Randomized operations must name their seed when the report is JSON.
std::uint64_t require_seed(const Common& c, const std::string& what) {
  if (!c.seed && c.json()) throw UsageError(what + " is randomized: pass --seed in JSON mode");
  return c.seed.value_or(0);
}

Json envelope(const std::string& command, const Common& c) {
  Json j{{"command", command}};
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["threads"] = resolve_threads(c.threads);
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s;
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  int q = 0, n = 0, k = 0;
  std::vector<int> sizes;
  std::string model = "tournament";
  double p = 0.5;
};

int run_gen(const std::string& family, const GenArgs& a, const Common& c) {
  OrientedGraph g;
  Json params = Json::object();
  std::optional<XYInstance> xy;
  if (family == "paley") {
    g = paley(a.q);
    params["q"] = a.q;
  } else if (family == "rotational") {
    g = rotational(a.n);
    params["n"] = a.n;
  } else if (family == "transitive") {
    g = transitive(a.n);
    params["n"] = a.n;
  } else if (family == "t4") {
    g = t4();
  } else if (family == "ext") {
    g = extended_transitive({a.sizes}).graph;
    params["sizes"] = a.sizes;
  } else if (family == "xy") {
    xy = xy_family(a.k, a.n, require_seed(c, "gen xy"));
    g = xy->graph;
    params["k"] = a.k;
    params["n"] = a.n;
  } else {
    RandomSpec spec{RandomModel::Tournament, a.p};
    if (a.model == "bernoulli") spec.model = RandomModel::Bernoulli;
    if (a.model == "bipartite") spec.model = RandomModel::BipartiteOneWay;
    g = random_digraph(a.n, spec, require_seed(c, "gen random"));
    params["n"] = a.n;
    params["model"] = a.model;
    if (spec.model != RandomModel::Tournament) params["p"] = a.p;
  }
  if (!c.json()) {
    std::cout << encode_digraph6(g) << '\n';
    return kExitPositive;
  }
  Json j = envelope("gen", c);
  j["family"] = family;
  j["params"] = params;
  j["graph"] = encode_digraph6(g);
  j["order"] = g.order();
  j["arcs"] = g.arc_count();
  if (xy) {
    j["x"] = to_json(xy->x);
    j["y"] = to_json(xy->y);
  }
  emit(j);
  return kExitPositive;
}

// solve --------------------------------------------------------------------

struct SolveArgs {
  bool path = false, cycle = false, longest = false;
  std::optional<int> from;
};

int run_solve(const SolveArgs& a, const Common& c) {
  const int modes = int(a.path) + int(a.cycle) + int(a.longest) + int(a.from.has_value());
  if (modes > 1) throw UsageError("choose one of --anti-ham-path, --anti-ham-cycle, --longest, --from");
  const std::string mode = a.cycle ? "anti_ham_cycle" : a.longest ? "longest" : a.from ? "from" : "anti_ham_path";
  Json results = Json::array();
  bool all_found = true;
  for (const auto& g : read_input(c)) {
    std::optional<AntiWalk> w;
    if (a.cycle) w = anti_hamiltonian_cycle(g);
    else if (a.longest) w = longest_anti_path(g);
    else if (a.from) w = anti_hamiltonian_path_from(g, *a.from);
    else w = anti_hamiltonian_path(g);
    all_found = all_found && w.has_value();
    if (c.json()) {
      Json r{{"graph", encode_digraph6(g)}, {"found", w.has_value()}};
      r["walk"] = w ? to_json(*w) : Json(nullptr);
      results.push_back(r);
    } else if (!w) {
      std::cout << "NONE\n";
    } else if (a.longest) {
      std::cout << w->order() << ' ' << format_anti_walk(*w) << '\n';
    } else {
      std::cout << format_anti_walk(*w) << '\n';
    }
  }
  if (c.json()) {
    Json j = envelope("solve", c);
    j["mode"] = mode;
    if (a.from) j["from"] = *a.from;
    j["results"] = results;
    emit(j);
  }
  return all_found ? kExitPositive : kExitNegative;
}

// check-kat ----------------------------------------------------------------

int run_check_kat(int k, std::optional<std::uint64_t> sample, const Common& c) {
  KatOptions opts;
  if (sample) {
    opts.samples = *sample;
    opts.seed = require_seed(c, "check-kat --sample");
  }
  Json results = Json::array();
  bool all = true;
  for (const auto& g : read_input(c)) {
    const auto v = is_k_at(g, k, opts);
    all = all && v.holds;
    if (c.json()) {
      Json r = to_json(g, v);
      r = Json{{"graph", encode_digraph6(g)}, {"verdict", r}};
      results.push_back(r);
    } else if (v.holds) {
      std::cout << "holds k=" << k << " subsets=" << v.subsets_checked << (v.sampled ? " (sampled)" : "") << '\n';
    } else {
      std::cout << "fails k=" << k << " witness=" << join(v.witness->to_vector()) << '\n';
    }
  }
  if (c.json()) {
    Json j = envelope("check-kat", c);
    j["k"] = k;
    j["results"] = results;
    emit(j);
  }
  return all ? kExitPositive : kExitNegative;
}

// recognize-3at ------------------------------------------------------------

int run_recognize(const Common& c) {
  Json results = Json::array();
  bool all = true;
  for (const auto& g : read_input(c)) {
    const auto d = recognize_3at(g);
    all = all && d.has_value();
    std::optional<ThreeAtWitness> w;
    if (d && g.order() >= 4) w = build_3at_anti_cycle(g);
    if (c.json()) {
      Json r{{"graph", encode_digraph6(g)}, {"is_3at", d.has_value()}};
      r["decomposition"] = d ? to_json(*d) : Json(nullptr);
      if (w) {
        r["cycle"] = w->cycle ? to_json(*w->cycle) : Json(nullptr);
        r["path"] = to_json(w->path);
        r["status"] = w->status ? Json(std::string(to_string(*w->status))) : Json(nullptr);
      }
      results.push_back(r);
      continue;
    }
    if (!d) {
      std::cout << "NOT 3-AT\n";
      continue;
    }
    std::cout << "3-AT blocks=";
    for (const auto& b : d->blocks) std::cout << '{' << join(b.to_vector()) << '}';
    if (w) {
      std::cout << " cycle=" << (w->cycle ? format_anti_walk(*w->cycle) : "none");
      std::cout << " path=" << format_anti_walk(w->path);
    }
    std::cout << '\n';
  }
  if (c.json()) {
    Json j = envelope("recognize-3at", c);
    j["results"] = results;
    emit(j);
  }
  return all ? kExitPositive : kExitNegative;
}

// enumerate ----------------------------------------------------------------

struct EnumArgs {
  int n = 0;
  bool tournaments = false;
  std::optional<int> min_degree, complement_max_degree;
  bool count_only = false;
};

int run_enumerate(const EnumArgs& a, const Common& c) {
  EnumFilter f;
  f.min_degree = a.min_degree;
  f.complement_max_degree = a.complement_max_degree;
  f.tournaments_only = a.tournaments;
  const auto codes = enumerate_codes(a.n, f, c.threads);
  if (!c.json()) {
    if (a.count_only) std::cout << codes.size() << '\n';
    else
      for (const auto& code : codes) std::cout << encode_digraph6(decode_canonical_code(code)) << '\n';
    return kExitPositive;
  }
  Json j = envelope("enumerate", c);
  Json filter{{"tournaments_only", a.tournaments}};
  filter["min_degree"] = a.min_degree ? Json(*a.min_degree) : Json(nullptr);
  filter["complement_max_degree"] = a.complement_max_degree ? Json(*a.complement_max_degree) : Json(nullptr);
  j["n"] = a.n;
  j["filter"] = filter;
  j["count"] = codes.size();
  if (!a.count_only) {
    Json graphs = Json::array();
    for (const auto& code : codes) graphs.push_back(encode_digraph6(decode_canonical_code(code)));
    j["graphs"] = graphs;
  }
  emit(j);
  return kExitPositive;
}

// fsearch ------------------------------------------------------------------

int run_fsearch(int k, std::optional<int> min_n, int max_n, std::optional<std::uint64_t> budget, const Common& c) {
  FSearchOptions opts;
  opts.budget = budget;
  opts.threads = c.threads;
  const auto rep = f_search(k, min_n.value_or(k), max_n, opts);
  bool any = false;
  for (const auto& o : rep.orders) any = any || !o.counterexamples.empty();
  if (c.json()) {
    Json j = envelope("fsearch", c);
    j["report"] = to_json(rep);
    emit(j);
  } else {
    for (const auto& o : rep.orders) {
      std::cout << "order " << o.order << ": classes_scanned=" << o.classes_scanned << " kat=" << o.kat_count
                << " counterexamples=" << o.counterexamples.size() << '\n';
      for (const auto& s : o.counterexamples) std::cout << "  " << s << '\n';
    }
    std::cout << "empirical_f=" << rep.empirical_f << " cap=" << rep.max_order
              << (rep.complete ? "" : " (partial: budget exhausted)") << '\n';
  }
  return any ? kExitNegative : kExitPositive;
}

// audit --------------------------------------------------------------------

int run_audit(int k, const Common& c) {
  Json results = Json::array();
  bool all = true;
  for (const auto& g : read_input(c)) {
    const auto rep = audit_longest_path_laws(g, k);
    all = all && rep.passed();
    if (c.json()) {
      results.push_back(to_json(rep));
      continue;
    }
    std::cout << rep.graph << " order=" << rep.order << " longest=" << rep.longest << '\n';
    for (const auto& l : rep.laws) {
      std::cout << "  " << to_string(l.status) << ' ' << l.name;
      if (!l.detail.empty()) std::cout << ": " << l.detail;
      std::cout << '\n';
    }
  }
  if (c.json()) {
    Json j = envelope("audit", c);
    j["k"] = k;
    j["results"] = results;
    emit(j);
  }
  return all ? kExitPositive : kExitNegative;
}

// regdemo ------------------------------------------------------------------

struct RegArgs {
  int n = 2000;
  int parts = 20;
  double eps = 0.03;
  std::string model = "tournament";
  double p = 0.5;
};

int run_regdemo(const RegArgs& a, const Common& c) {
  const std::uint64_t seed = require_seed(c, "regdemo");
  LargeOrientedGraph g;
  std::optional<int> k;
  if (a.model == "near") {
    k = demo_k(a.n);
    g = near_tournament(a.n, *k, seed);
  } else {
    const RandomSpec spec{a.model == "bernoulli" ? RandomModel::Bernoulli : RandomModel::Tournament, a.p};
    g = random_large_digraph(a.n, spec, seed);
  }
  const auto tr = almost_spanning(g, random_partition(a.n, a.parts, seed + 1), a.eps, c.threads);
  std::ostringstream summary;
  summary << "order/n ratio: " << tr.walk.order() << "/" << a.n << " = " << tr.ratio()
          << " (bound " << (1 - 9 * a.eps) * (1 - a.eps) << ")";
  if (c.json()) {
    Json j = envelope("regdemo", c);
    j["model"] = a.model;
    if (a.model == "bernoulli") j["p"] = a.p;
    j["parts"] = a.parts;
    j["k"] = k ? Json(*k) : Json(nullptr);
    j["min_degree"] = g.min_degree();
    j["trace"] = to_json(tr);
    j["summary"] = summary.str();
    emit(j);
  } else {
    std::cout << summary.str() << '\n';
  }
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-directed path toolkit for oriented graphs"};
  app.require_subcommand(1);
  int code = kExitError;
  Common common;

  auto* gen = app.add_subcommand("gen", "Generate a named graph as digraph6");
  gen->require_subcommand(1);
  GenArgs ga;
  std::string family;
  const auto gen_family = [&](const std::string& name, const std::string& help) {
    auto* s = gen->add_subcommand(name, help);
    add_common(s, common, false);
    s->callback([&, name] { family = name; });
    return s;
  };
  gen_family("paley", "Paley tournament on GF(q)")->add_option("q", ga.q)->required();
  gen_family("rotational", "Rotational tournament")->add_option("n", ga.n)->required();
  gen_family("transitive", "Transitive tournament")->add_option("n", ga.n)->required();
  gen_family("t4", "The 4-vertex graph T4");
  gen_family("ext", "Extended transitive tournament with the given block sizes")
      ->add_option("sizes", ga.sizes)
      ->required();
  {
    auto* s = gen_family("xy", "Independent set X dominated by a random tournament Y");
    s->add_option("k", ga.k)->required();
    s->add_option("n", ga.n)->required();
  }
  {
    auto* s = gen_family("random", "Seeded random oriented graph");
    s->add_option("n", ga.n)->required();
    s->add_option("--model", ga.model)->check(CLI::IsMember({"tournament", "bernoulli", "bipartite"}));
    s->add_option("--p", ga.p, "Arc probability");
  }

  auto* solve = app.add_subcommand("solve", "Anti-directed Hamiltonian path / cycle search");
  add_common(solve, common, true);
  SolveArgs sa;
  solve->add_flag("--anti-ham-path", sa.path, "Spanning anti-directed path (default)");
  solve->add_flag("--anti-ham-cycle", sa.cycle, "Spanning anti-directed cycle");
  solve->add_flag("--longest", sa.longest, "Longest anti-directed path");
  solve->add_option("--from", sa.from, "Spanning anti-directed path starting at V");

  auto* kat = app.add_subcommand("check-kat", "Check k-anti-traceability");
  add_common(kat, common, true);
  int kat_k = 0;
  std::optional<std::uint64_t> kat_sample;
  kat->add_option("-k", kat_k, "Subset size")->required();
  kat->add_option("--sample", kat_sample, "Check this many random subsets instead of all");

  auto* rec = app.add_subcommand("recognize-3at", "Recognize 3-AT graphs and build anti-cycles");
  add_common(rec, common, true);

  auto* en = app.add_subcommand("enumerate", "Oriented graphs up to isomorphism");
  add_common(en, common, false);
  EnumArgs ea;
  en->add_option("-n", ea.n, "Order")->required();
  en->add_flag("--tournaments", ea.tournaments, "Tournaments only");
  en->add_option("--min-degree", ea.min_degree, "Minimum underlying degree");
  en->add_option("--complement-max-degree", ea.complement_max_degree, "Maximum non-neighbours per vertex");
  en->add_flag("--count-only", ea.count_only, "Print only the class count");

  auto* fs = app.add_subcommand("fsearch", "Search for k-AT graphs without a spanning anti-path");
  add_common(fs, common, false);
  int fs_k = 0, fs_max = 0;
  std::optional<int> fs_min;
  std::optional<std::uint64_t> fs_budget;
  fs->add_option("-k", fs_k, "Subset size")->required();
  fs->add_option("--max-n", fs_max, "Largest order searched")->required();
  fs->add_option("--min-n", fs_min, "Smallest order reported (default k)");
  fs->add_option("--budget", fs_budget, "Stop after this many classes");

  auto* au = app.add_subcommand("audit", "Audit longest anti-path laws on k-AT graphs");
  add_common(au, common, true);
  int au_k = 4;
  au->add_option("-k", au_k, "k of the k-AT hypothesis")->required();

  auto* rd = app.add_subcommand("regdemo", "Almost spanning anti-path through a random partition");
  add_common(rd, common, false);
  RegArgs ra;
  rd->add_option("--n", ra.n, "Order");
  rd->add_option("--parts", ra.parts, "Number of equal parts");
  rd->add_option("--eps", ra.eps, "Regularity parameter");
  rd->add_option("--model", ra.model)->check(CLI::IsMember({"tournament", "near", "bernoulli"}));
  rd->add_option("--p", ra.p, "Arc probability for the bernoulli model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (gen->parsed()) code = run_gen(family, ga, common);
    else if (solve->parsed()) code = run_solve(sa, common);
    else if (kat->parsed()) code = run_check_kat(kat_k, kat_sample, common);
    else if (rec->parsed()) code = run_recognize(common);
    else if (en->parsed()) code = run_enumerate(ea, common);
    else if (fs->parsed()) code = run_fsearch(fs_k, fs_min, fs_max, fs_budget, common);
    else if (au->parsed()) code = run_audit(au_k, common);
    else if (rd->parsed()) code = run_regdemo(ra, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  std::cout.flush();
  return code;
}
