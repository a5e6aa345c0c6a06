#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cayley/core.hpp"
#include "cayley/graph.hpp"

namespace cayley {

/// A finite magma given extensionally: an ordered carrier and the full
/// product table (row p, column q holds p*q).
class MagmaTable {
 public:
  MagmaTable(std::vector<std::string> carrier,
             std::vector<std::vector<std::string>> rows)
      : carrier_(std::move(carrier)) {
    if (carrier_.empty()) throw Error("magma table: empty carrier");
    for (std::size_t i = 0; i < carrier_.size(); ++i) {
      if (!token_chars_valid(carrier_[i]))
        throw Error("magma table: invalid element token");
      if (!index_.emplace(carrier_[i], i).second)
        throw Error("magma table: duplicate carrier element '" + carrier_[i] +
                    "'");
    }
    if (rows.size() != carrier_.size())
      throw Error("magma table: expected " + std::to_string(carrier_.size()) +
                  " rows");
    table_.resize(carrier_.size() * carrier_.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != carrier_.size())
        throw Error("magma table: row '" + carrier_[i] + "' has " +
                    std::to_string(rows[i].size()) + " cells, expected " +
                    std::to_string(carrier_.size()));
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        auto it = index_.find(rows[i][j]);
        if (it == index_.end())
          throw Error("magma table: unknown element '" + rows[i][j] +
                      "' in row '" + carrier_[i] + "'");
        table_[i * carrier_.size() + j] = it->second;
      }
    }
  }

  /// Text format: line 1 lists the carrier, line k+1 the products of
  /// element k against the carrier in order. '#' starts a comment.
  static MagmaTable parse(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      if (!toks.empty()) lines.push_back(std::move(toks));
    }
    if (lines.empty()) throw Error("magma table parse: empty document");
    std::vector<std::string> carrier = lines.front();
    for (const std::string& e : carrier)
      if (!user_vertex_valid(e) || e[0] == '~' || e[0] == '_')
        throw Error("magma table parse: invalid element token '" + e + "'");
    if (lines.size() != carrier.size() + 1)
      throw Error("magma table parse: expected " +
                  std::to_string(carrier.size()) + " rows after the carrier");
    return MagmaTable(std::move(carrier),
                      {lines.begin() + 1, lines.end()});
  }

  std::string serialize() const {
    std::string out;
    for (std::size_t j = 0; j < carrier_.size(); ++j) {
      if (j) out += ' ';
      out += carrier_[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < carrier_.size(); ++i) {
      for (std::size_t j = 0; j < carrier_.size(); ++j) {
        if (j) out += ' ';
        out += carrier_[product_index(i, j)];
      }
      out += '\n';
    }
    return out;
  }

  std::size_t size() const { return carrier_.size(); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  bool has_element(const std::string& e) const { return index_.count(e) > 0; }

  std::size_t index(const std::string& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
      throw Error("magma table: unknown element '" + e + "'");
    return it->second;
  }
  std::size_t product_index(std::size_t i, std::size_t j) const {
    return table_[i * carrier_.size() + j];
  }
  const std::string& product(const std::string& p, const std::string& q) const {
    return carrier_[product_index(index(p), index(q))];
  }

  friend bool operator==(const MagmaTable& a, const MagmaTable& b) {
    return a.carrier_ == b.carrier_ && a.table_ == b.table_;
  }

  /// Same operation regardless of carrier order and naming layout:
  /// equal carriers as sets and cell-for-cell equal products by token.
  bool same_operation(const MagmaTable& other) const {
    if (size() != other.size()) return false;
    for (const std::string& e : carrier_)
      if (!other.has_element(e)) return false;
    for (const std::string& p : carrier_)
      for (const std::string& q : carrier_)
        if (product(p, q) != other.product(p, q)) return false;
    return true;
  }

 private:
  std::vector<std::string> carrier_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> table_;
};

/// An injective labeling of a carrier subset Q.
struct Labeling {
  std::vector<std::string> domain;                 // llex sorted
  std::map<std::string, Label, LlexLess> map;

  Labeling(std::vector<std::string> domain_in,
           std::map<std::string, Label, LlexLess> map_in)
      : domain(std::move(domain_in)), map(std::move(map_in)) {
    sort_unique_llex(domain);
    if (domain.empty()) throw Error("labeling: empty domain");
    std::set<Label, LlexLess> seen;
    for (const std::string& q : domain) {
      auto it = map.find(q);
      if (it == map.end())
        throw Error("labeling: no label for '" + q + "'");
      if (!token_chars_valid(it->second))
        throw Error("labeling: invalid label token");
      if (!seen.insert(it->second).second)
        throw Error("labeling: not injective at '" + it->second + "'");
    }
  }

  static Labeling identity(std::vector<std::string> domain) {
    std::map<std::string, Label, LlexLess> map;
    for (const std::string& q : domain) map[q] = q;
    return Labeling(std::move(domain), std::move(map));
  }

  const Label& operator()(const std::string& q) const {
    auto it = map.find(q);
    if (it == map.end()) throw Error("labeling: '" + q + "' not in domain");
    return it->second;
  }
};

struct AlgebraReport {
  bool associative = false;
  bool left_cancellative = false;
  bool right_cancellative = false;
  bool cancellative = false;
  bool left_quasigroup = false;   // every row a permutation
  bool quasigroup = false;        // Latin square
  std::vector<std::string> left_identities, right_identities;
  std::optional<std::string> identity;
  std::optional<std::map<std::string, std::string, LlexLess>> inverses;

  bool semigroup() const { return associative; }
  bool monoid() const { return associative && identity.has_value(); }
  bool group() const { return monoid() && inverses.has_value(); }
};

inline AlgebraReport axiom_check(const MagmaTable& m) {
  const std::size_t n = m.size();
  AlgebraReport rep;

  rep.associative = true;
  for (std::size_t i = 0; i < n && rep.associative; ++i)
    for (std::size_t j = 0; j < n && rep.associative; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m.product_index(m.product_index(i, j), k) !=
            m.product_index(i, m.product_index(j, k))) {
          rep.associative = false;
          break;
        }

  rep.left_cancellative = true;   // rows injective
  rep.left_quasigroup = true;     // rows surjective too (same thing, finite)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> hit(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t p = m.product_index(i, j);
      if (hit[p]) {
        rep.left_cancellative = false;
        rep.left_quasigroup = false;
        break;
      }
      hit[p] = 1;
    }
  }
  rep.right_cancellative = true;  // columns injective
  bool columns_perm = true;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<char> hit(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t p = m.product_index(i, j);
      if (hit[p]) {
        rep.right_cancellative = false;
        columns_perm = false;
        break;
      }
      hit[p] = 1;
    }
  }
  rep.cancellative = rep.left_cancellative && rep.right_cancellative;
  rep.quasigroup = rep.left_quasigroup && columns_perm;

  for (std::size_t e = 0; e < n; ++e) {
    bool left = true, right = true;
    for (std::size_t p = 0; p < n; ++p) {
      if (m.product_index(e, p) != p) left = false;
      if (m.product_index(p, e) != p) right = false;
    }
    if (left) rep.left_identities.push_back(m.carrier()[e]);
    if (right) rep.right_identities.push_back(m.carrier()[e]);
  }
  for (const std::string& e : rep.left_identities)
    for (const std::string& f : rep.right_identities)
      if (e == f) rep.identity = e;

  if (rep.identity) {
    std::size_t one = m.index(*rep.identity);
    std::map<std::string, std::string, LlexLess> inv;
    bool all = true;
    for (std::size_t p = 0; p < n && all; ++p) {
      bool found = false;
      for (std::size_t q = 0; q < n; ++q)
        if (m.product_index(p, q) == one && m.product_index(q, p) == one) {
          inv[m.carrier()[p]] = m.carrier()[q];
          found = true;
          break;
        }
      all = found;
    }
    if (all) rep.inverses = std::move(inv);
  }
  return rep;
}

enum class ClosureMode { Monoid, Semigroup, Group };

/// Least subset containing q closed per mode: products only (semigroup),
/// with the identity adjoined (monoid), or with inverses too (group).
inline std::vector<std::string> closure(const MagmaTable& m,
                                        const std::vector<std::string>& q,
                                        ClosureMode mode) {
  AlgebraReport rep = axiom_check(m);
  for (const std::string& e : q) m.index(e);  // validates membership
  std::set<std::size_t> current;
  for (const std::string& e : q) current.insert(m.index(e));
  if (mode == ClosureMode::Monoid || mode == ClosureMode::Group) {
    if (!rep.identity)
      throw Error("closure: monoid closure requires an identity");
    current.insert(m.index(*rep.identity));
  }
  if (mode == ClosureMode::Group) {
    if (!rep.group()) throw Error("closure: group closure requires a group");
    std::set<std::size_t> with_inverses = current;
    for (std::size_t p : current)
      with_inverses.insert(m.index(rep.inverses->at(m.carrier()[p])));
    current = std::move(with_inverses);
  }
  for (bool grew = true; grew;) {
    grew = false;
    std::set<std::size_t> next = current;
    for (std::size_t p : current)
      for (std::size_t r : current)
        if (next.insert(m.product_index(p, r)).second) grew = true;
    current = std::move(next);
  }
  std::vector<std::string> out;
  for (std::size_t p : current) out.push_back(m.carrier()[p]);
  sort_unique_llex(out);
  return out;
}

/// The generalized Cayley graph: one edge p -[q]-> p*q for every carrier
/// element p and every labeled generator q.
inline Graph cayley_graph(const MagmaTable& m, const Labeling& lab) {
  for (const std::string& q : lab.domain)
    if (!m.has_element(q))
      throw Error("cayley graph: labeled element '" + q +
                  "' is not in the carrier");
  std::vector<Edge> edges;
  edges.reserve(m.size() * lab.domain.size());
  for (const std::string& p : m.carrier())
    for (const std::string& q : lab.domain)
      edges.push_back({p, lab(q), m.product(p, q)});
  return Graph(std::move(edges));
}

/// C(M): the full Cayley graph under the identity labeling.
inline Graph cayley_graph(const MagmaTable& m) {
  return cayley_graph(m, Labeling::identity(m.carrier()));
}

/// The table unchanged if an identity exists, otherwise extended by a
/// fresh two-sided identity ("1", apostrophes appended until fresh).
/// Cancellative inputs are re-verified cancellative afterwards; the
/// left-cancellative property alone is not preserved in general.
inline MagmaTable monoid_completion(const MagmaTable& m) {
  AlgebraReport rep = axiom_check(m);
  if (!rep.associative)
    throw Error("monoid completion: table is not associative");
  if (rep.identity) return m;
  std::string one = "1";
  while (m.has_element(one)) one += '\'';
  std::vector<std::string> carrier = m.carrier();
  carrier.push_back(one);
  std::vector<std::vector<std::string>> rows;
  for (const std::string& p : m.carrier()) {
    std::vector<std::string> row;
    for (const std::string& q : m.carrier()) row.push_back(m.product(p, q));
    row.push_back(p);
    rows.push_back(std::move(row));
  }
  rows.push_back(m.carrier());
  rows.back().push_back(one);
  MagmaTable completed(std::move(carrier), std::move(rows));
  if (rep.cancellative && !axiom_check(completed).cancellative)
    throw Error("monoid completion: cancellativity was not preserved");
  return completed;
}

}  // namespace cayley
