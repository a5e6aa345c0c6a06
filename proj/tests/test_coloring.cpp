#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "testutil.hpp"

using namespace cayley;

namespace {

using Pair = std::pair<VertexId, VertexId>;

bool coloring_valid(const EdgeColoring& c) {
  // Deterministic and co-deterministic as a labeled graph.
  std::set<std::pair<VertexId, std::string>> out, in;
  for (const auto& [pair, color] : c.color_of) {
    if (!out.insert({pair.first, color}).second) return false;
    if (!in.insert({pair.second, color}).second) return false;
  }
  return true;
}

void check_exact(const Relation& r) {
  EdgeColoring c = edge_color(r);
  REQUIRE(c.color_of.size() == r.pairs.size());
  REQUIRE(coloring_valid(c));
  REQUIRE(c.used_colors().size() == r.delta());
  REQUIRE(c.palette.size() == r.delta());
}

/// Exhaustive search oracle: is there any valid coloring with k colors?
bool colorable_oracle(const Relation& r, std::size_t k) {
  std::vector<std::size_t> assign(r.pairs.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == r.pairs.size()) return true;
    for (std::size_t c = 1; c <= k; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (assign[j] != c) continue;
        if (r.pairs[j].first == r.pairs[i].first ||
            r.pairs[j].second == r.pairs[i].second)
          ok = false;
      }
      if (!ok) continue;
      assign[i] = c;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace

TEST_CASE("two opposite pairs need one color") {
  Relation r({"1", "2"}, {{"1", "2"}, {"2", "1"}});
  REQUIRE(r.delta() == 1);
  EdgeColoring c = edge_color(r);
  REQUIRE(c.color_of.at({"1", "2"}) == "1");
  REQUIRE(c.color_of.at({"2", "1"}) == "1");
}

TEST_CASE("complete bipartite pairs get a 2-coloring") {
  // Exhaustive oracle first: a 2-coloring exists, a 1-coloring does not.
  Relation r({"1", "2", "3", "4"},
             {{"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}});
  REQUIRE(r.delta() == 2);
  REQUIRE(colorable_oracle(r, 2));
  REQUIRE_FALSE(colorable_oracle(r, 1));
  EdgeColoring c = edge_color(r);
  REQUIRE(coloring_valid(c));
  // Each source and each target sees both colors.
  for (const VertexId& s : {"1", "2"}) {
    std::set<std::string> seen;
    for (const VertexId& t : {"3", "4"}) seen.insert(c.color_of.at({s, t}));
    REQUIRE(seen.size() == 2);
  }
  for (const VertexId& t : {"3", "4"}) {
    std::set<std::string> seen;
    for (const VertexId& s : {"1", "2"}) seen.insert(c.color_of.at({s, t}));
    REQUIRE(seen.size() == 2);
  }
}

TEST_CASE("insertion-order replay on the three-pair relation") {
  // Hand replay in (source, target) order: (1,1) takes 1; (1,2) sees
  // O_1 = {1} and takes 2; (2,1) sees I_1 = {1} and takes 2.
  Relation r({"1", "2"}, {{"1", "1"}, {"1", "2"}, {"2", "1"}});
  REQUIRE(r.delta() == 2);
  EdgeColoring c = edge_color(r);
  REQUIRE(c.color_of.at({"1", "1"}) == "1");
  REQUIRE(c.color_of.at({"1", "2"}) == "2");
  REQUIRE(c.color_of.at({"2", "1"}) == "2");
  REQUIRE(coloring_valid(c));
}

TEST_CASE("alternating-chain recoloring, hand-replayed") {
  // Insertion order (x,y) (x,z) (y,x) (y,z) with delta 2: the first three
  // pairs take 1, 2, 1; then (y,z) sees O_y = {1} and I_z = {2}, which
  // exhaust the palette, so the chain y -1-> x is swapped to 2 and (y,z)
  // takes 1.
  Relation r({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}, {"y", "x"}, {"y", "z"}});
  EdgeColoring c = edge_color(r);
  REQUIRE(c.recolorings == 1);
  REQUIRE(c.color_of.at({"x", "y"}) == "1");
  REQUIRE(c.color_of.at({"x", "z"}) == "2");
  REQUIRE(c.color_of.at({"y", "x"}) == "2");
  REQUIRE(c.color_of.at({"y", "z"}) == "1");
  REQUIRE(coloring_valid(c));
}

TEST_CASE("exhaustive relations on up to three elements") {
  // Carrier {x}, {x,y} and {x,y,z}: every subset of the square.
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<VertexId> carrier;
    for (std::size_t i = 0; i < n; ++i)
      carrier.push_back(std::string(1, static_cast<char>('x' + i)));
    std::vector<Pair> all;
    for (const VertexId& s : carrier)
      for (const VertexId& t : carrier) all.push_back({s, t});
    for (std::size_t mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<Pair> pairs;
      for (std::size_t b = 0; b < all.size(); ++b)
        if (mask & (1u << b)) pairs.push_back(all[b]);
      Relation r(carrier, pairs);
      check_exact(r);
      swaps += edge_color(r).recolorings;
      if (r.regular() && !r.pairs.empty()) {
        EdgeColoring c = complete_edge_color(r);
        REQUIRE(coloring_valid(c));
      }
    }
  }
  // The sweep must exercise the recoloring path, not just Case 1.
  REQUIRE(swaps > 0);
}

TEST_CASE("random relations on up to eight elements") {
  std::mt19937 rng(41);
  for (int i = 0; i < 1000; ++i) {
    std::uniform_int_distribution<std::size_t> nd(1, 8);
    std::size_t n = nd(rng);
    std::vector<VertexId> carrier;
    for (std::size_t v = 0; v < n; ++v)
      carrier.push_back("e" + std::to_string(v));
    std::uniform_int_distribution<std::size_t> vd(0, n - 1);
    std::uniform_int_distribution<std::size_t> md(0, 2 * n);
    std::vector<Pair> pairs;
    std::size_t m = md(rng);
    for (std::size_t e = 0; e < m; ++e)
      pairs.push_back({carrier[vd(rng)], carrier[vd(rng)]});
    check_exact(Relation(carrier, pairs));
  }
}

TEST_CASE("complete coloring of the quasigroup complement") {
  // The 6-pair complement of the single-label order-3 quasigroup graph.
  Graph g({{"a", "a", "a"}, {"b", "a", "c"}, {"c", "a", "b"}});
  Relation s = complement_relation(g);
  // Existence double-checked by the exhaustive oracle.
  REQUIRE(colorable_oracle(s, 2));
  EdgeColoring c = complete_edge_color(s);
  REQUIRE(c.used_colors().size() == 2);
  std::map<VertexId, std::set<std::string>> outs, ins;
  for (const auto& [pair, color] : c.color_of) {
    outs[pair.first].insert(color);
    ins[pair.second].insert(color);
  }
  for (const VertexId& v : {"a", "b", "c"}) {
    REQUIRE(outs[v].size() == 2);
    REQUIRE(ins[v].size() == 2);
  }
}

TEST_CASE("identity relation colors with one color") {
  Relation r({"u", "v", "w"}, {{"u", "u"}, {"v", "v"}, {"w", "w"}});
  REQUIRE(r.regular());
  EdgeColoring c = complete_edge_color(r);
  REQUIRE(c.used_colors().size() == 1);
}

TEST_CASE("complete coloring requires regularity") {
  Relation r({"1", "2"}, {{"1", "2"}});
  REQUIRE_THROWS_AS(complete_edge_color(r), Error);
}

TEST_CASE("relation validates its carrier") {
  REQUIRE_THROWS_AS(Relation({"1"}, {{"1", "9"}}), Error);
}

TEST_CASE("regular relations stay complete after coloring") {
  std::mt19937 rng(43);
  int found = 0;
  for (int i = 0; i < 4000 && found < 200; ++i) {
    std::uniform_int_distribution<std::size_t> nd(1, 6);
    std::size_t n = nd(rng);
    std::vector<VertexId> carrier;
    for (std::size_t v = 0; v < n; ++v)
      carrier.push_back("e" + std::to_string(v));
    // Random union of permutation relations is regular by construction.
    std::uniform_int_distribution<std::size_t> kd(1, n);
    std::size_t k = kd(rng);
    std::set<Pair> pairs;
    for (std::size_t p = 0; p < k; ++p) {
      std::vector<VertexId> perm = carrier;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t v = 0; v < n; ++v) pairs.insert({carrier[v], perm[v]});
    }
    Relation r(carrier, {pairs.begin(), pairs.end()});
    if (!r.regular()) continue;
    ++found;
    EdgeColoring c = complete_edge_color(r);
    REQUIRE(coloring_valid(c));
    REQUIRE(c.used_colors().size() == r.delta());
  }
  REQUIRE(found >= 100);
}
