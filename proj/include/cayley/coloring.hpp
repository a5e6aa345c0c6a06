#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"
#include "cayley/graph.hpp"

namespace cayley {

/// A finite binary relation over an explicit carrier. The carrier may be
/// strictly larger than the support of the pairs.
struct Relation {
  std::vector<VertexId> carrier;                        // llex sorted
  std::vector<std::pair<VertexId, VertexId>> pairs;     // llex sorted

  Relation(std::vector<VertexId> carrier_in,
           std::vector<std::pair<VertexId, VertexId>> pairs_in)
      : carrier(std::move(carrier_in)), pairs(std::move(pairs_in)) {
    sort_unique_llex(carrier);
    std::sort(pairs.begin(), pairs.end(), PairLlexLess{});
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::set<VertexId, LlexLess> in_carrier(carrier.begin(), carrier.end());
    for (const auto& [s, t] : pairs)
      if (!in_carrier.count(s) || !in_carrier.count(t))
        throw Error("relation: pair (" + s + "," + t +
                    ") outside the carrier");
  }

  std::size_t out_degree(const VertexId& v) const {
    std::size_t n = 0;
    for (const auto& [s, t] : pairs) n += (s == v);
    return n;
  }
  std::size_t in_degree(const VertexId& v) const {
    std::size_t n = 0;
    for (const auto& [s, t] : pairs) n += (t == v);
    return n;
  }

  /// In-out-degree: the largest out- or in-degree over the carrier.
  std::size_t delta() const {
    std::map<VertexId, std::size_t, LlexLess> outs, ins;
    for (const auto& [s, t] : pairs) {
      ++outs[s];
      ++ins[t];
    }
    std::size_t d = 0;
    for (const auto& [v, n] : outs) d = std::max(d, n);
    for (const auto& [v, n] : ins) d = std::max(d, n);
    return d;
  }

  /// Every carrier element has out- and in-degree exactly delta().
  bool regular() const {
    std::size_t d = delta();
    for (const VertexId& v : carrier)
      if (out_degree(v) != d || in_degree(v) != d) return false;
    return true;
  }
};

/// An edge-coloring of a relation: the colored relation, read as a graph,
/// is deterministic and co-deterministic.
struct EdgeColoring {
  std::map<std::pair<VertexId, VertexId>, std::string, PairLlexLess> color_of;
  std::vector<std::string> palette;  // "1".."k" unless renamed
  std::size_t recolorings = 0;       // alternating-chain swaps performed

  /// Colored relation R^c as labeled edges (may be empty).
  std::vector<Edge> colored_edges() const {
    std::vector<Edge> edges;
    edges.reserve(color_of.size());
    for (const auto& [pair, c] : color_of)
      edges.push_back({pair.first, c, pair.second});
    std::sort(edges.begin(), edges.end(), EdgeLess{});
    return edges;
  }

  std::set<std::string, LlexLess> used_colors() const {
    std::set<std::string, LlexLess> used;
    for (const auto& [pair, c] : color_of) used.insert(c);
    return used;
  }

  /// Renames color "i" to prefix+"i", keeping the coloring structure.
  EdgeColoring renamed(const std::string& prefix) const {
    EdgeColoring out;
    for (const auto& [pair, c] : color_of) out.color_of[pair] = prefix + c;
    for (const std::string& c : palette) out.palette.push_back(prefix + c);
    out.recolorings = recolorings;
    return out;
  }
};

/// Colors a finite relation with exactly delta() colors so that the
/// colored relation is deterministic and co-deterministic. Incremental
/// insertion in (source, target) llex order; when no color is free for a
/// new pair (s, t), a maximal alternating a/b chain from s is recolored
/// first. The chain cannot revisit a vertex; this is asserted while it is
/// walked.
inline EdgeColoring edge_color(const Relation& r) {
  const std::size_t k = r.delta();
  EdgeColoring result;
  for (std::size_t c = 1; c <= k; ++c)
    result.palette.push_back(std::to_string(c));

  // Colors as 1..k; 0 never used.
  std::map<std::pair<VertexId, VertexId>, std::size_t, PairLlexLess> color;
  std::map<VertexId, std::set<std::size_t>, LlexLess> out_colors, in_colors;
  // (vertex, color) -> opposite endpoint of the uniquely colored pair.
  std::map<std::pair<VertexId, std::size_t>, VertexId> fwd, bwd;

  auto set_color = [&](const VertexId& s, const VertexId& t, std::size_t c) {
    color[{s, t}] = c;
    out_colors[s].insert(c);
    in_colors[t].insert(c);
    fwd[{s, c}] = t;
    bwd[{t, c}] = s;
  };
  auto clear_color = [&](const VertexId& s, const VertexId& t,
                         std::size_t c) {
    out_colors[s].erase(c);
    in_colors[t].erase(c);
    fwd.erase({s, c});
    bwd.erase({t, c});
  };

  for (const auto& [s, t] : r.pairs) {
    const std::set<std::size_t>& os = out_colors[s];
    const std::set<std::size_t>& it = in_colors[t];
    std::size_t free = 0;
    for (std::size_t c = 1; c <= k; ++c)
      if (!os.count(c) && !it.count(c)) {
        free = c;
        break;
      }
    if (free != 0) {
      set_color(s, t, free);
      continue;
    }
    // O_s and I_t jointly exhaust the palette but each is strictly smaller,
    // so both differences below are non-empty. Take the least members.
    std::size_t a = 0, b = 0;
    for (std::size_t c = 1; c <= k; ++c)
      if (os.count(c) && !it.count(c)) {
        a = c;
        break;
      }
    for (std::size_t c = 1; c <= k; ++c)
      if (it.count(c) && !os.count(c)) {
        b = c;
        break;
      }
    if (a == 0 || b == 0)
      throw Error("edge coloring: internal palette accounting failure");

    // Maximal chain s -a-> t1 <-b- s2 -a-> t2 <-b- ...
    std::vector<std::pair<VertexId, VertexId>> a_edges, b_edges;
    std::set<VertexId, LlexLess> seen_sources{s}, seen_targets;
    VertexId cur = s;
    while (true) {
      auto af = fwd.find({cur, a});
      if (af == fwd.end()) break;
      VertexId tgt = af->second;
      if (!seen_targets.insert(tgt).second)
        throw Error("edge coloring: alternating chain revisited a vertex");
      a_edges.push_back({cur, tgt});
      auto bf = bwd.find({tgt, b});
      if (bf == bwd.end()) break;
      VertexId src = bf->second;
      if (!seen_sources.insert(src).second)
        throw Error("edge coloring: alternating chain revisited a vertex");
      b_edges.push_back({src, tgt});
      cur = src;
    }
    for (const auto& [p, q] : a_edges) clear_color(p, q, a);
    for (const auto& [p, q] : b_edges) clear_color(p, q, b);
    for (const auto& [p, q] : a_edges) set_color(p, q, b);
    for (const auto& [p, q] : b_edges) set_color(p, q, a);
    set_color(s, t, a);
    ++result.recolorings;
  }

  for (const auto& [pair, c] : color)
    result.color_of[pair] = std::to_string(c);
  return result;
}

/// Complete edge-coloring of a regular relation: in addition to the
/// edge_color guarantees, every carrier element sees every color both out
/// and in. Automatic for finite regular relations, but verified anyway.
inline EdgeColoring complete_edge_color(const Relation& r) {
  if (!r.regular())
    throw Error("complete edge coloring: relation is not regular");
  EdgeColoring coloring = edge_color(r);
  std::set<std::string, LlexLess> palette(coloring.palette.begin(),
                                          coloring.palette.end());
  std::map<VertexId, std::set<std::string, LlexLess>, LlexLess> outs, ins;
  for (const auto& [pair, c] : coloring.color_of) {
    outs[pair.first].insert(c);
    ins[pair.second].insert(c);
  }
  for (const VertexId& v : r.carrier)
    if (outs[v] != palette || ins[v] != palette)
      throw Error(
          "complete edge coloring: output is not source- and "
          "target-complete");
  return coloring;
}

}  // namespace cayley
