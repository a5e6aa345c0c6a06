#pragma once

#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"

namespace cayley {

struct Edge {
  VertexId source;
  Label label;
  VertexId target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge order used everywhere a stable order is needed: componentwise
/// length-lexicographic on (source, label, target).
inline bool edge_less(const Edge& a, const Edge& b) {
  if (a.source != b.source) return llex_less(a.source, b.source);
  if (a.label != b.label) return llex_less(a.label, b.label);
  return llex_less(a.target, b.target);
}

struct EdgeLess {
  bool operator()(const Edge& a, const Edge& b) const {
    return edge_less(a, b);
  }
};

/// Immutable finite labeled digraph: a non-empty set of (source, label,
/// target) triples. Vertex and label sets are derived; there are no
/// isolated vertices by construction.
class Graph {
 public:
  explicit Graph(std::vector<Edge> edges) {
    if (edges.empty()) throw Error("graph: edge set must be non-empty");
    for (const Edge& e : edges) {
      if (!token_chars_valid(e.source) || !token_chars_valid(e.label) ||
          !token_chars_valid(e.target))
        throw Error("graph: invalid token in edge");
    }
    std::sort(edges.begin(), edges.end(), EdgeLess{});
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
      vertices_.push_back(e.source);
      vertices_.push_back(e.target);
      labels_.push_back(e.label);
    }
    sort_unique_llex(vertices_);
    sort_unique_llex(labels_);
    for (const Edge& e : edges_) {
      by_source_label_[{e.source, e.label}].push_back(e.target);
      by_target_label_[{e.target, e.label}].push_back(e.source);
      by_source_target_[{e.source, e.target}].push_back(e.label);
      out_[e.source].push_back(e);
      in_[e.target].push_back(e);
      succ_[e.source].push_back(e.target);
      pred_[e.target].push_back(e.source);
    }
    for (auto& [v, ts] : succ_) sort_unique_llex(ts);
    for (auto& [v, ss] : pred_) sort_unique_llex(ss);
  }

  /// Parses the TSV edge format: one "source TAB label TAB target" per
  /// line, '#' starts a comment line, duplicate lines collapse.
  static Graph parse(std::string_view text) {
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line[0] == '#') continue;
      std::size_t t1 = line.find('\t');
      std::size_t t2 = t1 == std::string_view::npos
                           ? std::string_view::npos
                           : line.find('\t', t1 + 1);
      if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
          line.find('\t', t2 + 1) != std::string_view::npos)
        throw Error("graph parse: line " + std::to_string(lineno) +
                    ": expected 3 tab-separated fields");
      std::string src(line.substr(0, t1));
      std::string lab(line.substr(t1 + 1, t2 - t1 - 1));
      std::string tgt(line.substr(t2 + 1));
      if (!user_vertex_valid(src) || !user_vertex_valid(tgt))
        throw Error("graph parse: line " + std::to_string(lineno) +
                    ": invalid vertex token");
      if (!user_label_valid(lab))
        throw Error("graph parse: line " + std::to_string(lineno) +
                    ": invalid label token");
      edges.push_back({std::move(src), std::move(lab), std::move(tgt)});
    }
    if (edges.empty()) throw Error("graph parse: empty graph");
    return Graph(std::move(edges));
  }

  /// Emits edges sorted by (source, label, target) in llex order, one per
  /// line. Byte-stable for a given edge set.
  std::string serialize() const {
    std::string out;
    for (const Edge& e : edges_) {
      out += e.source;
      out += '\t';
      out += e.label;
      out += '\t';
      out += e.target;
      out += '\n';
    }
    return out;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Label>& labels() const { return labels_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }

  bool has_vertex(const VertexId& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v,
                              LlexLess{});
  }
  bool has_label(const Label& a) const {
    return std::binary_search(labels_.begin(), labels_.end(), a, LlexLess{});
  }
  bool contains(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e, EdgeLess{});
  }

  const std::vector<VertexId>& targets(const VertexId& s,
                                       const Label& a) const {
    auto it = by_source_label_.find({s, a});
    return it == by_source_label_.end() ? empty_vertices_ : it->second;
  }
  const std::vector<VertexId>& sources(const VertexId& t,
                                       const Label& a) const {
    auto it = by_target_label_.find({t, a});
    return it == by_target_label_.end() ? empty_vertices_ : it->second;
  }
  const std::vector<Label>& labels_between(const VertexId& s,
                                           const VertexId& t) const {
    auto it = by_source_target_.find({s, t});
    return it == by_source_target_.end() ? empty_vertices_ : it->second;
  }
  bool has_edge_between(const VertexId& s, const VertexId& t) const {
    return by_source_target_.count({s, t}) > 0;
  }

  const std::vector<Edge>& out_edges(const VertexId& v) const {
    auto it = out_.find(v);
    return it == out_.end() ? empty_edges_ : it->second;
  }
  const std::vector<Edge>& in_edges(const VertexId& v) const {
    auto it = in_.find(v);
    return it == in_.end() ? empty_edges_ : it->second;
  }
  /// Distinct successors of v under the unlabeled relation, llex sorted.
  const std::vector<VertexId>& successors(const VertexId& v) const {
    auto it = succ_.find(v);
    return it == succ_.end() ? empty_vertices_ : it->second;
  }
  const std::vector<VertexId>& predecessors(const VertexId& v) const {
    auto it = pred_.find(v);
    return it == pred_.end() ? empty_vertices_ : it->second;
  }

  Graph inverse() const {
    std::vector<Edge> rev;
    rev.reserve(edges_.size());
    for (const Edge& e : edges_) rev.push_back({e.target, e.label, e.source});
    return Graph(std::move(rev));
  }

  /// Induced subgraph on the vertices of P; error when no edge survives.
  Graph vertex_restriction(const std::vector<VertexId>& p) const {
    std::set<VertexId, LlexLess> keep(p.begin(), p.end());
    std::vector<Edge> sub;
    for (const Edge& e : edges_)
      if (keep.count(e.source) && keep.count(e.target)) sub.push_back(e);
    if (sub.empty()) throw Error("vertex restriction: result is empty");
    return Graph(std::move(sub));
  }

  /// Subgraph of the edges labeled in P; error when no edge survives.
  Graph label_restriction(const std::vector<Label>& p) const {
    std::set<Label, LlexLess> keep(p.begin(), p.end());
    std::vector<Edge> sub;
    for (const Edge& e : edges_)
      if (keep.count(e.label)) sub.push_back(e);
    if (sub.empty()) throw Error("label restriction: result is empty");
    return Graph(std::move(sub));
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<VertexId> vertices_;
  std::vector<Label> labels_;
  std::map<std::pair<VertexId, Label>, std::vector<VertexId>, PairLlexLess>
      by_source_label_;
  std::map<std::pair<VertexId, Label>, std::vector<VertexId>, PairLlexLess>
      by_target_label_;
  std::map<std::pair<VertexId, VertexId>, std::vector<Label>, PairLlexLess>
      by_source_target_;
  std::map<VertexId, std::vector<Edge>, LlexLess> out_, in_;
  std::map<VertexId, std::vector<VertexId>, LlexLess> succ_, pred_;
  inline static const std::vector<std::string> empty_vertices_{};
  inline static const std::vector<Edge> empty_edges_{};
};

/// A possibly-empty edge set with a non-empty set of marked vertices.
/// Accessible cones of sink vertices live here: the public Graph type
/// stays non-empty, but a cone may have no edges at all.
class MarkedSubgraph {
 public:
  MarkedSubgraph(std::vector<Edge> edges, std::vector<VertexId> marks) {
    if (marks.empty()) throw Error("marked subgraph: marks must be non-empty");
    std::sort(edges.begin(), edges.end(), EdgeLess{});
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    sort_unique_llex(marks);
    marks_ = std::move(marks);
    for (const Edge& e : edges_) {
      vertices_.push_back(e.source);
      vertices_.push_back(e.target);
    }
    if (edges_.empty()) {
      vertices_ = marks_;
    } else {
      sort_unique_llex(vertices_);
      for (const VertexId& m : marks_)
        if (!std::binary_search(vertices_.begin(), vertices_.end(), m,
                                LlexLess{}))
          throw Error("marked subgraph: mark does not occur in the edge set");
    }
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& marks() const { return marks_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool empty() const { return edges_.empty(); }

  Graph graph() const { return Graph(edges_); }

  friend bool operator==(const MarkedSubgraph&, const MarkedSubgraph&) =
      default;

 private:
  std::vector<Edge> edges_;
  std::vector<VertexId> marks_;
  std::vector<VertexId> vertices_;
};

namespace detail {

/// Forward reachability set of r, llex sorted.
inline std::vector<VertexId> reachable_from(const Graph& g, const VertexId& r) {
  std::set<VertexId, LlexLess> seen{r};
  std::deque<VertexId> queue{r};
  while (!queue.empty()) {
    VertexId v = std::move(queue.front());
    queue.pop_front();
    for (const VertexId& t : g.successors(v))
      if (seen.insert(t).second) queue.push_back(t);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// Greatest subgraph of g accessible from r, marked with {r}. The edge
/// set is empty exactly when r is a sink.
inline MarkedSubgraph accessible_subgraph(const Graph& g, const VertexId& r) {
  if (!g.has_vertex(r))
    throw Error("accessible subgraph: unknown vertex '" + r + "'");
  std::vector<VertexId> reach = detail::reachable_from(g, r);
  std::vector<Edge> sub;
  for (const VertexId& v : reach)
    for (const Edge& e : g.out_edges(v)) sub.push_back(e);
  return MarkedSubgraph(std::move(sub), {r});
}

/// All roots of g: the vertices from which every vertex is reachable.
/// Empty when g is unrooted.
inline std::vector<VertexId> roots_of(const Graph& g) {
  // All roots lie in the unique source component of the condensation, if
  // any; one reachability check from there decides everything.
  const std::vector<VertexId>& vs = g.vertices();
  std::map<VertexId, std::size_t, LlexLess> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  const std::size_t n = vs.size();

  // Kosaraju: order by finish time, then collect components on the inverse.
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& succ = g.successors(vs[v]);
      if (i < succ.size()) {
        std::size_t w = index[succ[i++]];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::size_t> comp(n, n);
  std::size_t ncomp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != n) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = ncomp;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (const VertexId& p : g.predecessors(vs[v])) {
        std::size_t w = index[p];
        if (comp[w] == n) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  // Source components: no edge enters them from another component.
  std::vector<char> has_in(ncomp, 0);
  for (const Edge& e : g.edges()) {
    std::size_t cs = comp[index[e.source]], ct = comp[index[e.target]];
    if (cs != ct) has_in[ct] = 1;
  }
  std::vector<std::size_t> sources;
  for (std::size_t c = 0; c < ncomp; ++c)
    if (!has_in[c]) sources.push_back(c);
  if (sources.size() != 1) return {};
  // Every vertex of the single source component is a root iff one of them
  // reaches everything.
  VertexId probe;
  for (std::size_t v = 0; v < n; ++v)
    if (comp[v] == sources[0]) {
      probe = vs[v];
      break;
    }
  if (detail::reachable_from(g, probe).size() != n) return {};
  std::vector<VertexId> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (comp[v] == sources[0]) roots.push_back(vs[v]);
  return roots;
}

/// Connected components with one llex-least representative each and the
/// canonical map sending every vertex to its representative.
struct ComponentPartition {
  std::vector<Graph> components;          // ordered by representative
  std::vector<VertexId> representatives;  // llex sorted
  std::map<VertexId, VertexId, LlexLess> canonical_map;

  const VertexId& canonical(const VertexId& v) const {
    auto it = canonical_map.find(v);
    if (it == canonical_map.end())
      throw Error("component partition: unknown vertex '" + v + "'");
    return it->second;
  }
};

inline ComponentPartition components(const Graph& g) {
  const std::vector<VertexId>& vs = g.vertices();
  std::map<VertexId, std::size_t, LlexLess> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  std::vector<std::size_t> parent(vs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    std::size_t a = find(index[e.source]), b = find(index[e.target]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // find(v) is the least index in v's component, so the class root is the
  // llex-least vertex: the representative.
  std::map<std::size_t, std::vector<Edge>> edges_by_root;
  for (const Edge& e : g.edges())
    edges_by_root[find(index[e.source])].push_back(e);
  ComponentPartition part;
  for (auto& [root, edges] : edges_by_root) {
    part.components.emplace_back(std::move(edges));
    part.representatives.push_back(vs[root]);
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    part.canonical_map[vs[i]] = vs[find(i)];
  return part;
}

/// Barred copy of a label, used for chain traversal over reversed edges.
inline Label bar(const Label& a) { return "~" + a; }
inline bool is_barred(const Label& a) { return !a.empty() && a[0] == '~'; }
inline Label unbar(const Label& a) {
  return is_barred(a) ? a.substr(1) : a;
}

/// g together with a barred reversed copy of every edge. The bar mapping
/// a -> ~a must stay injective into fresh labels, so no label of g may
/// already carry the prefix.
inline Graph chain_graph(const Graph& g) {
  for (const Label& a : g.labels())
    if (is_barred(a))
      throw Error("chain graph: label '" + a + "' collides with barred labels");
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : g.edges())
    edges.push_back({e.target, bar(e.label), e.source});
  return Graph(std::move(edges));
}

/// Shortest label word of a path from s to t (BFS, ties broken by llex
/// label order). With chains set the traversal also walks reversed edges
/// under barred labels. Empty word when s == t; nullopt when unreachable.
inline std::optional<Word> find_path_label(const Graph& g, const VertexId& s,
                                           const VertexId& t, bool chains) {
  if (!g.has_vertex(s))
    throw Error("path search: unknown vertex '" + s + "'");
  if (!g.has_vertex(t))
    throw Error("path search: unknown vertex '" + t + "'");
  if (s == t) return Word{};
  struct Step {
    VertexId parent;
    Label label;
  };
  std::map<VertexId, Step, LlexLess> from;
  from.emplace(s, Step{});
  std::deque<VertexId> queue{s};
  auto relax = [&](const VertexId& v, const Label& a, const VertexId& w) {
    if (from.count(w)) return false;
    from.emplace(w, Step{v, a});
    queue.push_back(w);
    return w == t;
  };
  while (!queue.empty()) {
    VertexId v = std::move(queue.front());
    queue.pop_front();
    // out_edges are sorted by (label, target), so the first discovery of a
    // vertex fixes the canonical word.
    for (const Edge& e : g.out_edges(v))
      if (relax(v, e.label, e.target)) goto found;
    if (chains)
      for (const Edge& e : g.in_edges(v))
        if (relax(v, bar(e.label), e.source)) goto found;
  }
  return std::nullopt;
found:
  Word word;
  for (VertexId v = t; v != s;) {
    const Step& st = from.at(v);
    word.push_back(st.label);
    v = st.parent;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

/// Chain distance d(s, t): length of the shortest chain, or nullopt when
/// s and t live in different components.
inline std::optional<std::size_t> chain_distance(const Graph& g,
                                                 const VertexId& s,
                                                 const VertexId& t) {
  auto w = find_path_label(g, s, t, /*chains=*/true);
  if (!w) return std::nullopt;
  return w->size();
}

namespace detail {

/// Deterministic replay: follow the unique a-successor for each letter.
/// Barred letters walk edges backwards. nullopt on a dead end, internal
/// error when the graph is not deterministic along the walk.
inline std::optional<VertexId> trace_word(const Graph& g, const VertexId& from,
                                          const Word& word) {
  VertexId cur = from;
  for (const Label& a : word) {
    const std::vector<VertexId>& next =
        is_barred(a) ? g.sources(cur, unbar(a)) : g.targets(cur, a);
    if (next.empty()) return std::nullopt;
    if (next.size() > 1)
      throw Error("trace: graph is not deterministic at '" + cur + "' / '" +
                  a + "'");
    cur = next.front();
  }
  return cur;
}

}  // namespace detail

}  // namespace cayley
