#pragma once

#include <string>

#include "json.hpp"

#include "antitrace/anti_walk.hpp"
#include "antitrace/digraph6.hpp"
#include "antitrace/fsearch.hpp"
#include "antitrace/kat.hpp"
#include "antitrace/regularity.hpp"

namespace antitrace {

// Insertion-ordered so reports read in declaration order and stay byte-stable.
using Json = nlohmann::ordered_json;

inline Json to_json(const AntiWalk& w) {
  return Json{{"order", w.order()},
              {"is_cycle", w.is_cycle},
              {"vertices", w.vertices},
              {"text", format_anti_walk(w)}};
}

inline Json to_json(VertexSet s) { return Json(s.to_vector()); }

inline Json to_json(const OrientedGraph& g, const KatVerdict& v) {
  Json j{{"k", v.k}, {"mode", v.sampled ? "sampled" : "exhaustive"}};
  if (v.sampled) {
    j["sample_count"] = v.sample_count;
    j["seed"] = v.seed;
  }
  j["holds"] = v.holds;
  j["subsets_checked"] = v.subsets_checked;
  if (v.witness) {
    j["witness"] = to_json(*v.witness);
    j["witness_digraph6"] = encode_digraph6(induced(g, *v.witness).graph);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline Json to_json(const BlockDecomposition& d) {
  Json blocks = Json::array();
  for (const auto& b : d.blocks) blocks.push_back(to_json(b));
  return Json{{"blocks", blocks}, {"sizes", d.sizes()}};
}

inline Json to_json(const FSearchReport& r) {
  Json orders = Json::array();
  for (const auto& o : r.orders)
    orders.push_back(Json{{"order", o.order},
                          {"classes_scanned", o.classes_scanned},
                          {"kat_count", o.kat_count},
                          {"counterexamples", o.counterexamples}});
  Json j{{"k", r.k},
         {"min_order", r.min_order},
         {"cap", r.max_order},
         {"complement_max_degree", r.complement_max_degree},
         {"orders", orders},
         {"empirical_f", r.empirical_f},
         {"complete", r.complete}};
  j["budget"] = r.budget ? Json(*r.budget) : Json(nullptr);
  return j;
}

inline Json to_json(const AuditReport& r) {
  Json laws = Json::array();
  for (const auto& l : r.laws) {
    Json lj{{"name", l.name}, {"status", to_string(l.status)}, {"detail", l.detail}};
    lj["path_witness"] = l.path_witness ? to_json(*l.path_witness) : Json(nullptr);
    lj["vertex_witness"] = l.vertex_witness;
    laws.push_back(lj);
  }
  return Json{{"k", r.k},           {"graph", r.graph},       {"order", r.order},
              {"longest", r.longest}, {"passed", r.passed()}, {"laws", laws}};
}

inline Json to_json(const PipelineTrace& t) {
  const auto edge = [](const ReducedEdge& e) { return Json{{"from", e.from}, {"to", e.to}, {"density", e.density}}; };
  Json reduced = Json::array(), matching = Json::array(), endpoints = Json::array(), connections = Json::array();
  for (const auto& e : t.reduced) reduced.push_back(edge(e));
  for (const auto& e : t.matching) matching.push_back(edge(e));
  for (const auto& [a, b] : t.endpoints) endpoints.push_back(Json{{"a", a}, {"b", b}});
  for (const auto& c : t.connections)
    connections.push_back(Json{{"kind", to_string(c.kind)}, {"vertices", c.vertices}});
  return Json{{"n", t.n},
              {"eps", t.eps},
              {"d", t.d},
              {"reduced_edges", reduced},
              {"matching_required", t.matching_required},
              {"matching", matching},
              {"endpoints", endpoints},
              {"pair_orders", t.pair_orders},
              {"connections", connections},
              {"walk", to_json(t.walk)},
              {"ratio", t.ratio()}};
}

}  // namespace antitrace
