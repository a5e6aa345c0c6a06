#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/algebra.hpp"
#include "cayley/core.hpp"
#include "cayley/graph.hpp"
#include "cayley/isomorphism.hpp"
#include "cayley/properties.hpp"
#include "cayley/coloring.hpp"

namespace cayley {

inline constexpr const char* kLoopLabel = "__loop";
inline constexpr const char* kColorPrefix = "__c";
inline constexpr const char* kFreshRootName = "__root";

enum class OperationKind { Path, Chain, ExtendedChain, Edge };

inline std::string_view operation_kind_name(OperationKind k) {
  switch (k) {
    case OperationKind::Path: return "path";
    case OperationKind::Chain: return "chain";
    case OperationKind::ExtendedChain: return "extended-chain";
    case OperationKind::Edge: return "edge";
  }
  return "?";
}

/// A binary operation reconstructed from a graph, together with the
/// witness it was built from, the generator set ->_G(r), the labeling
/// [s] = a for r -a-> s, and the brute-force verdict on its table.
struct SynthesizedOperation {
  MagmaTable table;  // carrier = V_G, llex sorted
  OperationKind kind;
  std::optional<VertexId> root;                 // path / chain / edge witness
  std::optional<MagmaTable> representative_group;  // extended-chain witness
  std::vector<VertexId> generators;
  Labeling labeling;
  AlgebraReport verified_class;
};

namespace detail {

/// Labeling [s] = a for r -a-> s, restricted to r's out-edges in g. For a
/// simple deterministic g this is injective; otherwise the llex-least
/// label per target is taken (regeneration is then not claimed anyway).
inline Labeling root_labeling(const Graph& g, const VertexId& r) {
  std::map<std::string, Label, LlexLess> map;
  for (const Edge& e : g.out_edges(r))
    map.try_emplace(e.target, e.label);  // out_edges llex: least label first
  std::vector<std::string> domain;
  for (const auto& [t, a] : map) domain.push_back(t);
  return Labeling(std::move(domain), std::move(map));
}

/// Path table on an already validated graph: r a root, deterministic,
/// source-complete along every replay. For each target t a canonical
/// word r ->u t is replayed from every s.
inline MagmaTable build_path_table(const Graph& g, const VertexId& r) {
  const std::vector<VertexId>& vs = g.vertices();
  std::vector<std::vector<std::string>> rows(vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    std::optional<Word> word = find_path_label(g, r, vs[j], false);
    if (!word)
      throw Error("path operation: '" + vs[j] + "' is not reachable from '" +
                  r + "'");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::optional<VertexId> x = trace_word(g, vs[i], *word);
      if (!x)
        throw Error("path operation: replay dead-end from '" + vs[i] +
                    "' (precondition violated)");
      rows[i].push_back(*x);
    }
  }
  return MagmaTable(vs, std::move(rows));
}

}  // namespace detail

/// Path-operation s *_r t at a root r of a deterministic, arc-symmetric
/// graph: replay any word r ->u t from s. Yields a left-cancellative
/// monoid of identity r; cancellative when g is also co-deterministic;
/// regenerates g over ->_G(r) when g is simple.
inline SynthesizedOperation path_operation(
    const Graph& g, const VertexId& r, std::size_t budget = kDefaultIsoBudget) {
  if (!g.has_vertex(r)) throw Error("path operation: unknown vertex '" + r + "'");
  std::vector<VertexId> roots = roots_of(g);
  if (!std::binary_search(roots.begin(), roots.end(), r, LlexLess{}))
    throw Error("path operation: '" + r + "' is not a root");
  PropertyReport rep = property_report(g);
  if (!rep.deterministic)
    throw Error("path operation: graph is not deterministic");
  if (!is_arc_symmetric(g, budget))
    throw Error("path operation: graph is not arc-symmetric");

  SynthesizedOperation op{detail::build_path_table(g, r),
                          OperationKind::Path,
                          r,
                          std::nullopt,
                          g.successors(r),
                          detail::root_labeling(g, r),
                          AlgebraReport{}};
  op.verified_class = axiom_check(op.table);
  return op;
}

/// Chain-operation on a connected, symmetric, deterministic and
/// co-deterministic graph: the path-operation of the barred extension.
/// Yields a group of identity r.
inline SynthesizedOperation chain_operation(
    const Graph& g, const VertexId& r, std::size_t budget = kDefaultIsoBudget) {
  if (!g.has_vertex(r)) throw Error("chain operation: unknown vertex '" + r + "'");
  PropertyReport rep = property_report(g);
  if (!rep.connected) throw Error("chain operation: graph is not connected");
  if (!rep.deterministic)
    throw Error("chain operation: graph is not deterministic");
  if (!rep.co_deterministic)
    throw Error("chain operation: graph is not co-deterministic");
  if (!is_symmetric(g, budget))
    throw Error("chain operation: graph is not symmetric");

  // The barred extension is deterministic, strongly connected and
  // arc-symmetric by the checks above; no re-check needed.
  Graph barred = chain_graph(g);
  SynthesizedOperation op{detail::build_path_table(barred, r),
                          OperationKind::Chain,
                          r,
                          std::nullopt,
                          g.successors(r),
                          detail::root_labeling(g, r),
                          AlgebraReport{}};
  op.verified_class = axiom_check(op.table);
  return op;
}

/// The rank-cyclic group on a representative set: the i-th element by
/// llex order behaves as i modulo |P|.
inline MagmaTable cyclic_rank_group(std::vector<VertexId> reps) {
  sort_unique_llex(reps);
  const std::size_t n = reps.size();
  std::vector<std::vector<std::string>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rows[i].push_back(reps[(i + j) % n]);
  return MagmaTable(std::move(reps), std::move(rows));
}

/// Extended chain-operation for a symmetric, deterministic and
/// co-deterministic graph that need not be connected. The group on the
/// representative set defaults to the rank-cyclic one; any verified
/// group on exactly that carrier may be supplied instead.
inline SynthesizedOperation extended_chain_operation(
    const Graph& g, std::optional<MagmaTable> group_on_reps = std::nullopt,
    std::size_t budget = kDefaultIsoBudget) {
  PropertyReport rep = property_report(g);
  if (!rep.deterministic)
    throw Error("extended chain operation: graph is not deterministic");
  if (!rep.co_deterministic)
    throw Error("extended chain operation: graph is not co-deterministic");
  if (!is_symmetric(g, budget))
    throw Error("extended chain operation: graph is not symmetric");

  ComponentPartition part = components(g);
  MagmaTable p_group = group_on_reps.has_value()
                           ? std::move(*group_on_reps)
                           : cyclic_rank_group(part.representatives);
  {
    if (p_group.size() != part.representatives.size())
      throw Error("extended chain operation: group carrier does not match "
                  "the representative set");
    for (const VertexId& r : part.representatives)
      if (!p_group.has_element(r))
        throw Error("extended chain operation: representative '" + r +
                    "' missing from the group carrier");
  }
  AlgebraReport p_report = axiom_check(p_group);
  if (!p_report.group())
    throw Error("extended chain operation: supplied table is not a group");
  const VertexId identity = *p_report.identity;

  Graph barred = chain_graph(g);
  // Canonical chain word from each vertex's representative to it.
  std::map<VertexId, Word, LlexLess> word_from_rep;
  for (const VertexId& v : g.vertices()) {
    std::optional<Word> w =
        find_path_label(barred, part.canonical(v), v, false);
    if (!w)
      throw Error("extended chain operation: vertex '" + v +
                  "' unreachable from its representative");
    word_from_rep[v] = std::move(*w);
  }
  const std::vector<VertexId>& vs = g.vertices();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(vs.size());
  for (const VertexId& s : vs) {
    std::vector<std::string> row;
    row.reserve(vs.size());
    for (const VertexId& t : vs) {
      Word uv = word_from_rep[s];
      const Word& v_word = word_from_rep[t];
      uv.insert(uv.end(), v_word.begin(), v_word.end());
      const VertexId& base =
          p_group.product(part.canonical(s), part.canonical(t));
      std::optional<VertexId> x = detail::trace_word(barred, base, uv);
      if (!x)
        throw Error(
            "extended chain operation: replay dead-end (precondition "
            "violated)");
      row.push_back(*x);
    }
    rows.push_back(std::move(row));
  }
  SynthesizedOperation op{MagmaTable(vs, std::move(rows)),
                          OperationKind::ExtendedChain,
                          identity,
                          std::move(p_group),
                          g.successors(identity),
                          detail::root_labeling(g, identity),
                          AlgebraReport{}};
  op.verified_class = axiom_check(op.table);
  return op;
}

/// Edge-operation s x_r t at an 1-root of a deterministic,
/// source-complete, simple graph: a is the label of r -a-> t and s x t
/// the a-successor of s. Left-cancellative with left identity r;
/// quasigroup variants under the completeness conditions.
inline SynthesizedOperation edge_operation(const Graph& g, const VertexId& r) {
  if (!g.has_vertex(r)) throw Error("edge operation: unknown vertex '" + r + "'");
  PropertyReport rep = property_report(g);
  if (!rep.deterministic)
    throw Error("edge operation: graph is not deterministic");
  if (!rep.source_complete)
    throw Error("edge operation: graph is not source-complete");
  if (!rep.simple) throw Error("edge operation: graph is not simple");
  if (g.successors(r).size() != g.vertex_count())
    throw Error("edge operation: '" + r + "' is not a 1-root");

  const std::vector<VertexId>& vs = g.vertices();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(vs.size());
  for (const VertexId& s : vs) {
    std::vector<std::string> row;
    row.reserve(vs.size());
    for (const VertexId& t : vs) {
      const Label& a = g.labels_between(r, t).front();  // unique: simple
      const std::vector<VertexId>& x = g.targets(s, a);
      if (x.size() != 1)
        throw Error("edge operation: replay failure (precondition violated)");
      row.push_back(x.front());
    }
    rows.push_back(std::move(row));
  }
  SynthesizedOperation op{MagmaTable(vs, std::move(rows)),
                          OperationKind::Edge,
                          r,
                          std::nullopt,
                          g.successors(r),
                          detail::root_labeling(g, r),
                          AlgebraReport{}};
  op.verified_class = axiom_check(op.table);
  return op;
}

namespace detail {

/// Fresh-loop preprocessing shared by the two completions: a loopless
/// graph gets one reserved-label loop per vertex, which keeps it
/// loop-complete; a graph that already has loops is used as-is.
inline Graph with_fresh_loops_if_loopless(const Graph& g) {
  for (const Edge& e : g.edges())
    if (e.source == e.target) return g;
  if (g.has_label(kLoopLabel))
    throw Error("completion: label '" + std::string(kLoopLabel) +
                "' collides with the reserved loop label");
  std::vector<Edge> edges = g.edges();
  for (const VertexId& v : g.vertices())
    edges.push_back({v, kLoopLabel, v});
  return Graph(std::move(edges));
}

}  // namespace detail

/// Completion of a simple, deterministic, source-complete graph into a
/// complete graph on the same vertices whose labels are the vertex names
/// and in which r -s-> s for every s. Feeding the result to
/// edge_operation(., r) produces a left-quasigroup that regenerates g
/// over ->_G(r).
inline Graph left_quasigroup_completion(const Graph& g_in, const VertexId& r) {
  if (!g_in.has_vertex(r))
    throw Error("left-quasigroup completion: unknown vertex '" + r + "'");
  {
    PropertyReport rep = property_report(g_in);
    if (!rep.simple)
      throw Error("left-quasigroup completion: graph is not simple");
    if (!rep.deterministic)
      throw Error("left-quasigroup completion: graph is not deterministic");
    if (!rep.source_complete)
      throw Error("left-quasigroup completion: graph is not source-complete");
  }
  Graph g = detail::with_fresh_loops_if_loopless(g_in);
  const std::vector<Label>& alphabet = g.labels();
  std::vector<Edge> edges;

  // r's a-successor for every label a; total by source-completeness.
  std::map<Label, VertexId, LlexLess> r_succ;
  for (const Edge& e : g.out_edges(r)) r_succ[e.label] = e.target;

  for (const VertexId& s : g.vertices()) {
    // l_s matches labels through common targets of r and s; it is an
    // injective partial function on the alphabet.
    std::map<Label, Label, LlexLess> ell;
    std::set<Label, LlexLess> image;
    for (const auto& [a, t] : r_succ) {
      const std::vector<Label>& bs = g.labels_between(s, t);
      if (!bs.empty()) {
        ell[a] = bs.front();  // unique label: g is simple
        image.insert(bs.front());
      }
    }
    // Permutation extension: unmatched labels to unmatched labels in
    // llex order.
    std::vector<Label> free_dom, free_img;
    for (const Label& a : alphabet) {
      if (!ell.count(a)) free_dom.push_back(a);
      if (!image.count(a)) free_img.push_back(a);
    }
    std::map<Label, Label, LlexLess> ell_bar = ell;
    for (std::size_t i = 0; i < free_dom.size(); ++i)
      ell_bar[free_dom[i]] = free_img[i];

    std::set<VertexId, LlexLess> covered;  // targets of r or s
    for (const auto& [a, p] : r_succ) {
      // s -p-> t for r -a-> p and s -a-> t.
      const std::vector<VertexId>& ts = g.targets(s, a);
      edges.push_back({s, p, ts.front()});
      covered.insert(p);
    }
    for (const Label& a : free_dom) {
      // s -p-> t for r -a-> t and s -(ell_bar a)-> p.
      const VertexId& t = r_succ.at(a);
      const std::vector<VertexId>& ps = g.targets(s, ell_bar.at(a));
      edges.push_back({s, ps.front(), t});
      covered.insert(ps.front());
    }
    for (const Edge& e : g.out_edges(s)) covered.insert(e.target);
    for (const VertexId& t : g.vertices())
      if (!covered.count(t)) edges.push_back({s, t, t});
  }
  return Graph(std::move(edges));
}

/// Completion of a simple, deterministic, co-deterministic, source- and
/// target-complete graph into a complete one: fresh loops when loopless,
/// then a complete edge-coloring of the complement relation under fresh
/// color labels. The original labels are untouched, so the label
/// restriction of the result to A_G is g itself.
inline Graph quasigroup_completion(const Graph& g_in) {
  {
    PropertyReport rep = property_report(g_in);
    if (!rep.simple)
      throw Error("quasigroup completion: graph is not simple");
    if (!rep.deterministic)
      throw Error("quasigroup completion: graph is not deterministic");
    if (!rep.co_deterministic)
      throw Error("quasigroup completion: graph is not co-deterministic");
    if (!rep.source_complete)
      throw Error("quasigroup completion: graph is not source-complete");
    if (!rep.target_complete)
      throw Error("quasigroup completion: graph is not target-complete");
  }
  Graph g = detail::with_fresh_loops_if_loopless(g_in);
  Relation complement = complement_relation(g);
  if (complement.pairs.empty()) return g;
  if (!complement.regular())
    throw Error("quasigroup completion: complement relation is not regular");
  EdgeColoring coloring = complete_edge_color(complement).renamed(kColorPrefix);
  for (const std::string& c : coloring.palette)
    if (g.has_label(c))
      throw Error("quasigroup completion: label '" + c +
                  "' collides with a reserved color label");
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : coloring.colored_edges()) edges.push_back(e);
  return Graph(std::move(edges));
}

/// Searches for a root-completion: the graph itself when it is already
/// rooted and simple, deterministic, co-deterministic, arc-symmetric;
/// otherwise a fresh root with at most one target per label, avoiding
/// co-determinism collisions, such that the completed graph satisfies
/// all four predicates. Budget counts search nodes and exhausting it is
/// an error distinct from "no completion exists".
inline std::optional<Graph> root_completion_search(
    const Graph& g, std::size_t budget = kDefaultSearchBudget,
    std::size_t iso_budget = kDefaultIsoBudget) {
  PropertyReport rep = property_report(g);
  if (rep.rooted) {
    if (rep.simple && rep.deterministic && rep.co_deterministic &&
        is_arc_symmetric(g, iso_budget))
      return g;
    // A rooted graph is only rootable into itself.
    return std::nullopt;
  }
  // New edges cannot repair violations among the existing ones.
  if (!rep.simple || !rep.deterministic || !rep.co_deterministic)
    return std::nullopt;

  std::string root = kFreshRootName;
  while (g.has_vertex(root)) root += '\'';
  const std::vector<Label>& labels = g.labels();
  const std::vector<VertexId>& vs = g.vertices();

  // Per label: the fresh root may target any vertex with no incoming
  // edge of that label, or nothing. "Nothing" is enumerated last so
  // richer completions are tried first in llex target order.
  std::vector<std::vector<std::optional<VertexId>>> choices(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (const VertexId& t : vs)
      if (g.sources(t, labels[i]).empty()) choices[i].push_back(t);
    choices[i].push_back(std::nullopt);
  }

  std::size_t nodes = 0;
  std::vector<std::optional<VertexId>> pick(labels.size());
  auto enumerate = [&](auto&& self, std::size_t depth) -> std::optional<Graph> {
    if (depth == labels.size()) {
      std::set<VertexId, LlexLess> used;
      std::vector<Edge> edges = g.edges();
      bool any = false;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!pick[i]) continue;
        if (!used.insert(*pick[i]).second) return std::nullopt;  // simplicity
        edges.push_back({root, labels[i], *pick[i]});
        any = true;
      }
      if (!any) return std::nullopt;
      Graph candidate(std::move(edges));
      std::vector<VertexId> roots = roots_of(candidate);
      if (!std::binary_search(roots.begin(), roots.end(), root, LlexLess{}))
        return std::nullopt;
      if (!is_arc_symmetric(candidate, iso_budget)) return std::nullopt;
      return candidate;
    }
    for (const std::optional<VertexId>& choice : choices[depth]) {
      if (++nodes > budget)
        throw BudgetExceeded("root completion search: budget exhausted");
      pick[depth] = choice;
      if (auto found = self(self, depth + 1)) return found;
    }
    return std::nullopt;
  };
  return enumerate(enumerate, 0);
}

}  // namespace cayley
