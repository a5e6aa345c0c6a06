#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"
#include "cayley/graph.hpp"

namespace cayley {

/// A label-preserving edge bijection between two graphs, stored with its
/// inverse.
struct VertexBijection {
  std::map<VertexId, VertexId, LlexLess> forward;
  std::map<VertexId, VertexId, LlexLess> inverse;
};

namespace detail {

/// One side of an isomorphism instance, indexed for the search.
struct IsoSide {
  std::vector<VertexId> verts;                       // llex sorted
  std::map<VertexId, int, LlexLess> index;
  std::vector<std::vector<std::tuple<int, int, int>>> adj;  // (dir,label,nbr)
  std::vector<char> marked;

  IsoSide(const std::vector<Edge>& edges, const std::vector<VertexId>& vs,
          const std::vector<VertexId>& marks,
          std::map<Label, int, LlexLess>& label_ids) {
    verts = vs;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
      index[verts[i]] = i;
    adj.resize(verts.size());
    marked.assign(verts.size(), 0);
    for (const VertexId& m : marks) marked[index.at(m)] = 1;
    for (const Edge& e : edges) {
      auto [it, inserted] =
          label_ids.try_emplace(e.label, static_cast<int>(label_ids.size()));
      int lab = it->second;
      int s = index.at(e.source), t = index.at(e.target);
      adj[s].push_back({0, lab, t});
      adj[t].push_back({1, lab, s});
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
  }
};

/// Iterated signature refinement shared across both sides. Classes can
/// only merge isomorphic vertices, so mismatched class sizes rule the
/// pair out and matching classes prune the backtracking.
inline bool refine_colors(IsoSide& a, IsoSide& b, std::vector<int>& color_a,
                          std::vector<int>& color_b) {
  color_a.assign(a.verts.size(), 0);
  color_b.assign(b.verts.size(), 0);
  for (std::size_t i = 0; i < a.verts.size(); ++i) color_a[i] = a.marked[i];
  for (std::size_t i = 0; i < b.verts.size(); ++i) color_b[i] = b.marked[i];
  for (std::size_t round = 0; round < a.verts.size() + 1; ++round) {
    std::map<std::string, int> sig_ids;
    auto signature = [&](const IsoSide& side, const std::vector<int>& color,
                         std::size_t v) {
      std::string sig = std::to_string(color[v]);
      std::vector<std::tuple<int, int, int>> nbrs;
      for (const auto& [dir, lab, w] : side.adj[v])
        nbrs.push_back({dir, lab, color[w]});
      std::sort(nbrs.begin(), nbrs.end());
      for (const auto& [dir, lab, c] : nbrs)
        sig += "|" + std::to_string(dir) + "," + std::to_string(lab) + "," +
               std::to_string(c);
      return sig;
    };
    std::vector<int> next_a(a.verts.size()), next_b(b.verts.size());
    for (std::size_t v = 0; v < a.verts.size(); ++v) {
      auto [it, ins] = sig_ids.try_emplace(signature(a, color_a, v),
                                           static_cast<int>(sig_ids.size()));
      next_a[v] = it->second;
    }
    for (std::size_t v = 0; v < b.verts.size(); ++v) {
      auto [it, ins] = sig_ids.try_emplace(signature(b, color_b, v),
                                           static_cast<int>(sig_ids.size()));
      next_b[v] = it->second;
    }
    // Class sizes must agree between the two sides.
    std::map<int, int> cnt;
    for (int c : next_a) ++cnt[c];
    for (int c : next_b) --cnt[c];
    for (const auto& [c, n] : cnt)
      if (n != 0) return false;
    bool stable = next_a == color_a && next_b == color_b;
    color_a = std::move(next_a);
    color_b = std::move(next_b);
    if (stable) break;
  }
  return true;
}

inline std::optional<VertexBijection> find_isomorphism(
    const std::vector<Edge>& edges_a, const std::vector<VertexId>& verts_a,
    const std::vector<VertexId>& marks_a, const std::vector<Edge>& edges_b,
    const std::vector<VertexId>& verts_b, const std::vector<VertexId>& marks_b,
    std::size_t budget) {
  if (edges_a.size() != edges_b.size() || verts_a.size() != verts_b.size() ||
      marks_a.size() != marks_b.size())
    return std::nullopt;
  // Both empty: any mark pairing works; take the llex one.
  if (edges_a.empty()) {
    VertexBijection bij;
    for (std::size_t i = 0; i < marks_a.size(); ++i) {
      bij.forward[marks_a[i]] = marks_b[i];
      bij.inverse[marks_b[i]] = marks_a[i];
    }
    return bij;
  }
  std::map<Label, int, LlexLess> label_ids;
  IsoSide a(edges_a, verts_a, marks_a, label_ids);
  IsoSide b(edges_b, verts_b, marks_b, label_ids);
  // Per-label edge counts must agree.
  {
    std::map<int, long> cnt;
    for (const Edge& e : edges_a) ++cnt[label_ids.at(e.label)];
    for (const Edge& e : edges_b) --cnt[label_ids.at(e.label)];
    for (const auto& [lab, n] : cnt)
      if (n != 0) return std::nullopt;
  }
  std::vector<int> color_a, color_b;
  if (!refine_colors(a, b, color_a, color_b)) return std::nullopt;

  const std::size_t n = a.verts.size();
  std::map<int, std::vector<int>> class_b;
  for (std::size_t v = 0; v < n; ++v) class_b[color_b[v]].push_back(v);
  // Map rare classes first.
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    auto sx = class_b[color_a[x]].size(), sy = class_b[color_a[y]].size();
    if (sx != sy) return sx < sy;
    return x < y;
  });

  std::vector<int> map_ab(n, -1), map_ba(n, -1);
  std::size_t nodes = 0;

  auto consistent = [&](int v, int w) {
    // All edges between v and already-mapped vertices (v itself counts as
    // mapped to w, so loops participate) must correspond, with equal
    // counts so nothing extra hides on either side.
    std::size_t mapped_deg_a = 0, mapped_deg_b = 0;
    for (const auto& [dir, lab, u] : a.adj[v]) {
      int mu = u == v ? w : map_ab[u];
      if (mu == -1) continue;
      ++mapped_deg_a;
      std::tuple<int, int, int> want{dir, lab, mu};
      if (!std::binary_search(b.adj[w].begin(), b.adj[w].end(), want))
        return false;
    }
    for (const auto& [dir, lab, u] : b.adj[w]) {
      int mu = u == w ? v : map_ba[u];
      if (mu != -1) ++mapped_deg_b;
    }
    return mapped_deg_a == mapped_deg_b;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    int v = order[depth];
    for (int w : class_b[color_a[v]]) {
      if (map_ba[w] != -1) continue;
      if (++nodes > budget)
        throw BudgetExceeded("isomorphism search: node budget exhausted");
      if (!consistent(v, w)) continue;
      map_ab[v] = w;
      map_ba[w] = v;
      if (self(self, depth + 1)) return true;
      map_ab[v] = -1;
      map_ba[w] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  VertexBijection bij;
  for (std::size_t v = 0; v < n; ++v) {
    bij.forward[a.verts[v]] = b.verts[map_ab[v]];
    bij.inverse[b.verts[map_ab[v]]] = a.verts[v];
  }
  // Full re-check of the found bijection: edges and marks correspond.
  for (const Edge& e : edges_a) {
    Edge mapped{bij.forward.at(e.source), e.label, bij.forward.at(e.target)};
    if (!std::binary_search(edges_b.begin(), edges_b.end(), mapped,
                            EdgeLess{}))
      throw Error("isomorphism search: produced a non-morphism");
  }
  for (const VertexId& m : marks_a) {
    const VertexId& im = bij.forward.at(m);
    if (!std::binary_search(marks_b.begin(), marks_b.end(), im, LlexLess{}))
      throw Error("isomorphism search: marks not preserved");
  }
  return bij;
}

}  // namespace detail

/// Mark-respecting isomorphism between two marked subgraphs: a bijection
/// carrying edges to edges (labels kept) and marks onto marks. Two
/// empty-edge-set subgraphs with equally many marks are isomorphic.
inline std::optional<VertexBijection> marked_isomorphic(
    const MarkedSubgraph& a, const MarkedSubgraph& b,
    std::size_t budget = kDefaultIsoBudget) {
  return detail::find_isomorphism(a.edges(), a.vertices(), a.marks(),
                                  b.edges(), b.vertices(), b.marks(), budget);
}

/// Plain graph isomorphism (no marks).
inline std::optional<VertexBijection> graph_isomorphic(
    const Graph& a, const Graph& b, std::size_t budget = kDefaultIsoBudget) {
  return detail::find_isomorphism(a.edges(), a.vertices(), {}, b.edges(),
                                  b.vertices(), {}, budget);
}

/// s ~ t: some automorphism of g maps s to t.
inline bool vertex_isomorphic(const Graph& g, const VertexId& s,
                              const VertexId& t,
                              std::size_t budget = kDefaultIsoBudget) {
  if (!g.has_vertex(s)) throw Error("vertex isomorphism: unknown vertex '" + s + "'");
  if (!g.has_vertex(t)) throw Error("vertex isomorphism: unknown vertex '" + t + "'");
  if (s == t) return true;
  return detail::find_isomorphism(g.edges(), g.vertices(), {s}, g.edges(),
                                  g.vertices(), {t}, budget)
      .has_value();
}

/// s v t: the cones g|s and g|t are isomorphic by a map sending s to t.
/// Two sinks qualify (both cones empty); a sink is never related to a
/// non-sink.
inline bool accessible_isomorphic(const Graph& g, const VertexId& s,
                                  const VertexId& t,
                                  std::size_t budget = kDefaultIsoBudget) {
  if (!g.has_vertex(s)) throw Error("accessible isomorphism: unknown vertex '" + s + "'");
  if (!g.has_vertex(t)) throw Error("accessible isomorphism: unknown vertex '" + t + "'");
  if (s == t) return true;
  return marked_isomorphic(accessible_subgraph(g, s),
                           accessible_subgraph(g, t), budget)
      .has_value();
}

/// All vertices pairwise accessible-isomorphic. With a root r only the
/// direct successors of r need checking; otherwise one fixed vertex is
/// compared against all others (the relation is an equivalence), with
/// cheap cone invariants filtered first.
inline bool is_arc_symmetric(const Graph& g,
                             std::size_t budget = kDefaultIsoBudget) {
  if (g.vertex_count() == 1) return true;
  std::vector<VertexId> roots = roots_of(g);
  if (!roots.empty()) {
    const VertexId& r = roots.front();
    for (const VertexId& s : g.successors(r))
      if (!accessible_isomorphic(g, r, s, budget)) return false;
    return true;
  }
  const VertexId& v0 = g.vertices().front();
  MarkedSubgraph cone0 = accessible_subgraph(g, v0);
  std::multiset<Label, LlexLess> labels0;
  for (const Edge& e : cone0.edges()) labels0.insert(e.label);
  for (const VertexId& v : g.vertices()) {
    if (v == v0) continue;
    MarkedSubgraph cone = accessible_subgraph(g, v);
    if (cone.edges().size() != cone0.edges().size() ||
        cone.vertices().size() != cone0.vertices().size())
      return false;
    std::multiset<Label, LlexLess> labels;
    for (const Edge& e : cone.edges()) labels.insert(e.label);
    if (labels != labels0) return false;
    if (!marked_isomorphic(cone0, cone, budget)) return false;
  }
  return true;
}

/// All vertices pairwise isomorphic (vertex-transitivity). Decided by
/// component decomposition: all components must be pairwise isomorphic
/// and a component must map its representative to each of its neighbours
/// in C or C^-1.
inline bool is_symmetric(const Graph& g,
                         std::size_t budget = kDefaultIsoBudget) {
  ComponentPartition part = components(g);
  const Graph& c0 = part.components.front();
  for (std::size_t i = 1; i < part.components.size(); ++i)
    if (!graph_isomorphic(c0, part.components[i], budget)) return false;
  const VertexId& r = part.representatives.front();
  std::set<VertexId, LlexLess> nbrs;
  for (const VertexId& t : c0.successors(r)) nbrs.insert(t);
  for (const VertexId& t : c0.predecessors(r)) nbrs.insert(t);
  for (const VertexId& s : nbrs)
    if (!vertex_isomorphic(c0, r, s, budget)) return false;
  return true;
}

}  // namespace cayley
