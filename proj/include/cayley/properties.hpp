#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/coloring.hpp"
#include "cayley/core.hpp"
#include "cayley/graph.hpp"

namespace cayley {

/// Degrees of the unlabeled relation ->_G (distinct neighbours) next to
/// the raw edge counts. Regularity flags are decided on the relation,
/// exactly as the definitions state them.
struct DegreeStats {
  std::map<VertexId, std::size_t, LlexLess> out_relation, in_relation;
  std::map<VertexId, std::size_t, LlexLess> out_edges, in_edges;
  std::size_t max_out = 0;   // Delta+ of ->_G
  std::size_t max_in = 0;    // Delta- of ->_G
  std::size_t max_both = 0;  // Delta of ->_G
};

struct PropertyReport {
  bool simple = false;
  bool deterministic = false;
  bool co_deterministic = false;
  bool source_complete = false;
  bool target_complete = false;
  bool complete = false;
  bool loop_complete = false;
  bool rooted = false;
  bool strongly_connected = false;
  bool connected = false;
  bool out_regular = false;
  bool co_out_regular = false;
  bool regular = false;
  bool co_regular = false;
  std::vector<VertexId> roots;
  std::vector<VertexId> one_roots;
  DegreeStats degrees;
  std::size_t label_count = 0;

  // First violating edge pair, when a flag is false.
  std::optional<std::pair<Edge, Edge>> simplicity_witness;
  std::optional<std::pair<Edge, Edge>> determinism_witness;
  std::optional<std::pair<Edge, Edge>> co_determinism_witness;
};

inline PropertyReport property_report(const Graph& g) {
  PropertyReport rep;
  const std::vector<VertexId>& vs = g.vertices();
  const std::vector<Label>& as = g.labels();
  rep.label_count = as.size();

  for (const VertexId& v : vs) {
    rep.degrees.out_relation[v] = g.successors(v).size();
    rep.degrees.in_relation[v] = g.predecessors(v).size();
    rep.degrees.out_edges[v] = g.out_edges(v).size();
    rep.degrees.in_edges[v] = g.in_edges(v).size();
    rep.degrees.max_out = std::max(rep.degrees.max_out, g.successors(v).size());
    rep.degrees.max_in =
        std::max(rep.degrees.max_in, g.predecessors(v).size());
  }
  rep.degrees.max_both = std::max(rep.degrees.max_out, rep.degrees.max_in);

  rep.simple = true;
  rep.deterministic = true;
  rep.co_deterministic = true;
  for (const VertexId& v : vs) {
    const std::vector<Edge>& out = g.out_edges(v);
    for (std::size_t i = 0; rep.simple && i + 1 < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[i].target == out[j].target && out[i].label != out[j].label) {
          rep.simple = false;
          rep.simplicity_witness = {out[i], out[j]};
          break;
        }
    if (rep.deterministic)
      for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].label == out[i + 1].label) {  // out is (label,target) sorted
          rep.deterministic = false;
          rep.determinism_witness = {out[i], out[i + 1]};
          break;
        }
  }
  for (const VertexId& v : vs) {
    if (!rep.co_deterministic) break;
    const std::vector<Edge>& in = g.in_edges(v);
    for (std::size_t i = 0; i < in.size() && rep.co_deterministic; ++i)
      for (std::size_t j = i + 1; j < in.size(); ++j)
        if (in[i].label == in[j].label) {
          rep.co_deterministic = false;
          rep.co_determinism_witness = {in[i], in[j]};
          break;
        }
  }

  rep.source_complete = true;
  rep.target_complete = true;
  for (const VertexId& v : vs) {
    for (const Label& a : as) {
      if (g.targets(v, a).empty()) rep.source_complete = false;
      if (g.sources(v, a).empty()) rep.target_complete = false;
    }
    if (!rep.source_complete && !rep.target_complete) break;
  }

  for (const VertexId& v : vs)
    if (g.successors(v).size() == vs.size()) rep.one_roots.push_back(v);
  rep.complete = rep.one_roots.size() == vs.size();

  rep.loop_complete = true;
  std::set<Label, LlexLess> loop_labels;
  for (const Edge& e : g.edges())
    if (e.source == e.target) loop_labels.insert(e.label);
  for (const Label& a : loop_labels) {
    for (const VertexId& v : vs)
      if (!g.contains({v, a, v})) {
        rep.loop_complete = false;
        break;
      }
    if (!rep.loop_complete) break;
  }

  rep.roots = roots_of(g);
  rep.rooted = !rep.roots.empty();
  rep.strongly_connected = rep.roots.size() == vs.size();
  rep.connected = components(g).components.size() == 1;

  rep.out_regular = true;
  rep.regular = true;
  for (const VertexId& v : vs) {
    if (rep.degrees.out_relation[v] != rep.degrees.max_out)
      rep.out_regular = false;
    if (rep.degrees.out_relation[v] != rep.degrees.max_both ||
        rep.degrees.in_relation[v] != rep.degrees.max_both)
      rep.regular = false;
  }
  // Complement degrees by counting: |V| - deg. Decided without
  // materializing the complement.
  rep.co_out_regular = true;
  rep.co_regular = true;
  const std::size_t n = vs.size();
  std::size_t co_out0 = n - rep.degrees.out_relation[vs.front()];
  std::size_t co_delta = 0;
  for (const VertexId& v : vs) {
    co_delta = std::max(co_delta, n - rep.degrees.out_relation[v]);
    co_delta = std::max(co_delta, n - rep.degrees.in_relation[v]);
  }
  for (const VertexId& v : vs) {
    if (n - rep.degrees.out_relation[v] != co_out0) rep.co_out_regular = false;
    if (n - rep.degrees.out_relation[v] != co_delta ||
        n - rep.degrees.in_relation[v] != co_delta)
      rep.co_regular = false;
  }
  return rep;
}

/// The unlabeled complement relation: pairs (s, t) of vertices with no
/// edge from s to t. Materialized only below the pair cap.
inline Relation complement_relation(const Graph& g,
                                    std::size_t pair_cap = kDefaultPairCap) {
  const std::vector<VertexId>& vs = g.vertices();
  if (vs.size() * vs.size() > pair_cap)
    throw Error("complement relation: |V|^2 exceeds the materialization cap");
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const VertexId& s : vs)
    for (const VertexId& t : vs)
      if (!g.has_edge_between(s, t)) pairs.push_back({s, t});
  return Relation(vs, std::move(pairs));
}

}  // namespace cayley
