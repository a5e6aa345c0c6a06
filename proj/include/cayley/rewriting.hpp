#pragma once

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"
#include "cayley/graph.hpp"

namespace cayley {

/// A labeled word rewriting rule lhs -[label]-> rhs over single-character
/// symbols. Its suffix graph rewrites under arbitrary common prefixes.
struct Rule {
  std::string lhs;
  Label label;
  std::string rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class RewritingSystem {
 public:
  explicit RewritingSystem(std::vector<Rule> rules)
      : rules_(std::move(rules)) {
    if (rules_.empty()) throw Error("rewriting system: no rules");
    std::set<char> alphabet;
    for (const Rule& r : rules_) {
      if (!user_label_valid(r.label))
        throw Error("rewriting system: invalid rule label");
      for (char c : r.lhs + r.rhs) {
        if (c == '_' || c == '\t' || c == '\n' || c == '\r' || c == '#')
          throw Error("rewriting system: invalid symbol in rule word");
        alphabet.insert(c);
      }
    }
    alphabet_.assign(alphabet.begin(), alphabet.end());
  }

  /// Line format: lhs TAB label TAB rhs, '_' alone denotes the empty
  /// word, '#' starts a comment line.
  static RewritingSystem parse(std::string_view text) {
    std::vector<Rule> rules;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::size_t t1 = line.find('\t');
      std::size_t t2 = t1 == std::string::npos ? std::string::npos
                                               : line.find('\t', t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos ||
          line.find('\t', t2 + 1) != std::string::npos)
        throw Error("rewriting system parse: line " + std::to_string(lineno) +
                    ": expected 3 tab-separated fields");
      auto word = [&](std::string w) {
        return w == "_" ? std::string() : w;
      };
      rules.push_back({word(line.substr(0, t1)),
                       line.substr(t1 + 1, t2 - t1 - 1),
                       word(line.substr(t2 + 1))});
    }
    if (rules.empty()) throw Error("rewriting system parse: empty document");
    return RewritingSystem(std::move(rules));
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const std::string& alphabet() const { return alphabet_; }

 private:
  std::vector<Rule> rules_;
  std::string alphabet_;
};

namespace detail {

inline bool ends_with(const std::string& w, const std::string& suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

/// The ball of the suffix graph around a start word: all vertices within
/// chain distance radius, every suffix-graph edge between them, and the
/// frontier (vertices at exactly the radius) as marks. When the ball
/// exhausts its component before the radius, the start itself is marked.
inline MarkedSubgraph suffix_ball(const RewritingSystem& rws,
                                  const std::string& start,
                                  std::size_t radius,
                                  std::size_t vertex_cap = kDefaultBallCap) {
  std::map<std::string, std::size_t> dist;
  dist[start] = 0;
  std::deque<std::string> queue{start};
  auto forward = [&](const std::string& w, auto&& visit) {
    for (const Rule& r : rws.rules())
      if (detail::ends_with(w, r.lhs))
        visit(w.substr(0, w.size() - r.lhs.size()) + r.rhs);
  };
  auto backward = [&](const std::string& w, auto&& visit) {
    for (const Rule& r : rws.rules())
      if (detail::ends_with(w, r.rhs))
        visit(w.substr(0, w.size() - r.rhs.size()) + r.lhs);
  };
  while (!queue.empty()) {
    std::string w = std::move(queue.front());
    queue.pop_front();
    std::size_t d = dist[w];
    if (d == radius) continue;
    auto visit = [&](const std::string& next) {
      if (dist.count(next)) return;
      dist[next] = d + 1;
      if (dist.size() > vertex_cap)
        throw Error("suffix ball: vertex cap exceeded");
      queue.push_back(next);
    };
    forward(w, visit);
    backward(w, visit);
  }

  std::vector<Edge> edges;
  for (const auto& [w, d] : dist) {
    for (const Rule& r : rws.rules())
      if (detail::ends_with(w, r.lhs)) {
        std::string v = w.substr(0, w.size() - r.lhs.size()) + r.rhs;
        if (dist.count(v)) edges.push_back({w, r.label, v});
      }
  }
  std::vector<VertexId> boundary;
  for (const auto& [w, d] : dist)
    if (d == radius) boundary.push_back(w);
  if (boundary.empty()) boundary.push_back(start);
  return MarkedSubgraph(std::move(edges), std::move(boundary));
}

}  // namespace cayley
