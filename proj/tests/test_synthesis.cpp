#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "testutil.hpp"

using namespace cayley;
using testutil::even_graph;
using testutil::make_graph;

namespace {

/// Regeneration equality: the Cayley graph of the table over the
/// generator set, labeled by the stored labeling, is exactly the source
/// graph.
bool regenerates(const Graph& g, const SynthesizedOperation& op) {
  return cayley_graph(op.table, op.labeling) == g;
}

/// Replay oracle independent of build_path_table: one BFS word, then a
/// step-by-step walk.
VertexId replay_oracle(const Graph& g, const VertexId& r, const VertexId& s,
                       const VertexId& t) {
  Word word = *find_path_label(g, r, t, false);
  VertexId cur = s;
  for (const Label& a : word) cur = g.targets(cur, a).front();
  return cur;
}

}  // namespace

TEST_CASE("path operation on the 3-cycle is addition mod 3") {
  Graph g = testutil::cycle_graph(3);
  SynthesizedOperation op = path_operation(g, "0");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::string s = std::to_string(i), t = std::to_string(j);
      REQUIRE(op.table.product(s, t) == std::to_string((i + j) % 3));
      REQUIRE(op.table.product(s, t) == replay_oracle(g, "0", s, t));
    }
  REQUIRE(op.table.product("1", "2") == "0");
  REQUIRE(op.verified_class.monoid());
  REQUIRE(op.verified_class.left_cancellative);
  REQUIRE(op.verified_class.cancellative);  // co-deterministic input
  REQUIRE(op.verified_class.identity == "0");
  REQUIRE(regenerates(g, op));
}

TEST_CASE("path operation identity laws") {
  for (const Graph& g : {even_graph(), testutil::cycle_graph(5)}) {
    const VertexId r = g.vertices().front();
    SynthesizedOperation op = path_operation(g, r);
    for (const VertexId& s : g.vertices()) {
      REQUIRE(op.table.product(r, s) == s);
      REQUIRE(op.table.product(s, r) == s);
    }
  }
}

TEST_CASE("path operation on Even from p") {
  SynthesizedOperation op = path_operation(even_graph(), "p");
  // Word p -a-> q replayed from q lands on p.
  REQUIRE(op.table.product("q", "q") == "p");
  REQUIRE(op.verified_class.group());
  REQUIRE(regenerates(even_graph(), op));
}

TEST_CASE("path operation preconditions are named") {
  REQUIRE_THROWS_WITH(path_operation(testutil::cycle_graph(3), "7"),
                      Catch::Matchers::ContainsSubstring("unknown vertex"));
  REQUIRE_THROWS_WITH(
      path_operation(make_graph({{"s", "a", "s"}, {"t", "a", "t"}}), "s"),
      Catch::Matchers::ContainsSubstring("not a root"));
  REQUIRE_THROWS_WITH(
      path_operation(make_graph({{"r", "a", "s"}, {"r", "a", "t"},
                                 {"s", "a", "s"}, {"t", "a", "t"}}),
                     "r"),
      Catch::Matchers::ContainsSubstring("not deterministic"));
  REQUIRE_THROWS_WITH(path_operation(testutil::path3_graph(), "v0"),
                      Catch::Matchers::ContainsSubstring("not arc-symmetric"));
}

TEST_CASE("chain operation on the 4-cycle is addition mod 4") {
  Graph g = testutil::cycle_graph(4);
  SynthesizedOperation op = chain_operation(g, "0");
  Graph barred = chain_graph(g);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::string s = std::to_string(i), t = std::to_string(j);
      REQUIRE(op.table.product(s, t) == std::to_string((i + j) % 4));
      // Oracle: replay the barred word.
      Word w = *find_path_label(barred, "0", t, false);
      REQUIRE(op.table.product(s, t) == *detail::trace_word(barred, s, w));
    }
  REQUIRE(op.table.product("1", "3") == "0");
  REQUIRE(op.verified_class.group());
  REQUIRE(regenerates(g, op));
}

TEST_CASE("chain operation on Even agrees with the path operation") {
  SynthesizedOperation chain = chain_operation(even_graph(), "p");
  SynthesizedOperation path = path_operation(even_graph(), "p");
  REQUIRE(chain.table.same_operation(path.table));
  REQUIRE(chain.table.product("q", "q") == "p");
}

TEST_CASE("chain operation requires symmetry") {
  REQUIRE_THROWS_WITH(chain_operation(make_graph({{"v0", "a", "v1"}}), "v0"),
                      Catch::Matchers::ContainsSubstring("not symmetric"));
}

TEST_CASE("extended chain on a connected graph equals the chain operation") {
  Graph g = testutil::cycle_graph(5);
  SynthesizedOperation ext = extended_chain_operation(g);
  SynthesizedOperation chain = chain_operation(g, "0");
  REQUIRE(ext.table.same_operation(chain.table));
  REQUIRE(ext.root == "0");
}

TEST_CASE("extended chain on two loops uses the rank-cyclic group") {
  Graph g = make_graph({{"s", "a", "s"}, {"t", "a", "t"}});
  SynthesizedOperation op = extended_chain_operation(g);
  REQUIRE(op.table.product("t", "t") == "s");
  REQUIRE(op.table.product("s", "t") == "t");
  REQUIRE(op.verified_class.group());
  REQUIRE(op.verified_class.identity == "s");
}

TEST_CASE("extended chain on two disjoint 2-cycles is an order-4 group") {
  Graph g = make_graph({{"0", "a", "1"},
                        {"1", "a", "0"},
                        {"2", "a", "3"},
                        {"3", "a", "2"}});
  SynthesizedOperation op = extended_chain_operation(g);
  // Brute-force group verification of the produced table.
  REQUIRE(op.verified_class.group());
  REQUIRE(op.table.size() == 4);
  REQUIRE(regenerates(g, op));
}

TEST_CASE("extended chain witness validation") {
  Graph g = make_graph({{"s", "a", "s"}, {"t", "a", "t"}});
  // Carrier mismatch.
  REQUIRE_THROWS_WITH(
      extended_chain_operation(g, testutil::cyclic_group(2)),
      Catch::Matchers::ContainsSubstring("missing from the group carrier"));
  // Not a group.
  MagmaTable bad({"s", "t"}, {{"s", "s"}, {"t", "t"}});
  REQUIRE_THROWS_WITH(extended_chain_operation(g, bad),
                      Catch::Matchers::ContainsSubstring("not a group"));
  // A supplied group is honored, including its identity.
  MagmaTable z2({"s", "t"}, {{"t", "s"}, {"s", "t"}});
  REQUIRE(axiom_check(z2).identity == "t");
  SynthesizedOperation op = extended_chain_operation(g, z2);
  REQUIRE(op.verified_class.group());
  REQUIRE(op.verified_class.identity == "t");
  REQUIRE(op.root == "t");
}

TEST_CASE("edge operation on the left-quasigroup graph recovers its table") {
  MagmaTable m = testutil::lq5_table();
  Graph g = cayley_graph(m);
  SynthesizedOperation op = edge_operation(g, "a");
  // a is a left identity, so edge labels out of a name their targets and
  // the replay reproduces all nine products.
  REQUIRE(op.table.same_operation(m));
  REQUIRE(op.verified_class.left_quasigroup);
  REQUIRE(regenerates(g, op));
}

TEST_CASE("edge operation on Z/3 subtraction is addition") {
  // p*q = p-q mod 3.
  std::vector<std::vector<std::string>> rows(3);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      rows[p].push_back(std::to_string(((p - q) % 3 + 3) % 3));
  MagmaTable sub({"0", "1", "2"}, std::move(rows));
  Graph g = cayley_graph(sub);
  SynthesizedOperation op = edge_operation(g, "0");
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      REQUIRE(op.table.product(std::to_string(s), std::to_string(t)) ==
              std::to_string((s + t) % 3));
  REQUIRE(op.verified_class.quasigroup);
}

TEST_CASE("edge operation left identity law") {
  Graph g = cayley_graph(testutil::qg6_table());
  SynthesizedOperation op = edge_operation(g, "b");
  for (const VertexId& t : g.vertices())
    REQUIRE(op.table.product("b", t) == t);
}

TEST_CASE("edge operation requires a 1-root") {
  Graph g = testutil::cycle_graph(3);
  REQUIRE_THROWS_WITH(edge_operation(g, "0"),
                      Catch::Matchers::ContainsSubstring("1-root"));
}

TEST_CASE("left-quasigroup completion of the 2-cycle") {
  Graph g = make_graph({{"0", "a", "1"}, {"1", "a", "0"}});
  Graph infsup = left_quasigroup_completion(g, "0");
  REQUIRE(infsup == make_graph({{"0", "1", "1"},
                                {"1", "1", "0"},
                                {"0", "0", "0"},
                                {"1", "0", "1"}}));
  SynthesizedOperation op = edge_operation(infsup, "0");
  REQUIRE(op.verified_class.group());
  REQUIRE(op.table.same_operation(testutil::cyclic_group(2)));
}

TEST_CASE("left-quasigroup completion of a single loop") {
  Graph g = make_graph({{"s", "a", "s"}});
  REQUIRE(left_quasigroup_completion(g, "s") ==
          make_graph({{"s", "s", "s"}}));
}

TEST_CASE("left-quasigroup completion preconditions") {
  REQUIRE_THROWS_WITH(
      left_quasigroup_completion(testutil::path3_graph(), "v0"),
      Catch::Matchers::ContainsSubstring("not source-complete"));
  Graph loopless = make_graph({{"0", "a", "1"}, {"1", "a", "0"}});
  // A loopless graph already using the reserved loop label cannot take
  // the fresh loops.
  Graph with_reserved({{"0", "__loop", "1"}, {"1", "__loop", "0"}});
  REQUIRE_THROWS_WITH(left_quasigroup_completion(with_reserved, "0"),
                      Catch::Matchers::ContainsSubstring("reserved loop"));
  REQUIRE_NOTHROW(left_quasigroup_completion(loopless, "0"));
}

TEST_CASE("completion output contract") {
  std::mt19937 rng(73);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<std::size_t> nd(1, 5);
    MagmaTable m = testutil::random_left_quasigroup(rng, nd(rng));
    std::uniform_int_distribution<std::size_t> qd(1, m.size());
    std::vector<std::string> q(m.carrier().begin(),
                               m.carrier().begin() + qd(rng));
    Graph g = cayley_graph(m, Labeling::identity(q));
    const VertexId r = g.vertices().front();
    Graph infsup = left_quasigroup_completion(g, r);
    PropertyReport rep = property_report(infsup);
    REQUIRE(rep.complete);
    REQUIRE(rep.simple);
    REQUIRE(rep.deterministic);
    REQUIRE(rep.source_complete);
    // Vertex set and label set both equal V_G; r -s-> s for every s.
    REQUIRE(infsup.vertices() == g.vertices());
    REQUIRE(infsup.labels() == g.vertices());
    for (const VertexId& s : g.vertices())
      REQUIRE(infsup.contains({r, s, s}));
    // Loop-complete inputs stay loop-complete.
    if (property_report(g).loop_complete)
      REQUIRE(rep.loop_complete);
    // The edge operation regenerates g over ->_G(r).
    SynthesizedOperation op = edge_operation(infsup, r);
    REQUIRE(op.verified_class.left_quasigroup);
    SynthesizedOperation restricted = op;
    restricted.generators = g.successors(r);
    restricted.labeling = detail::root_labeling(g, r);
    REQUIRE(regenerates(g, restricted));
  }
}

TEST_CASE("quasigroup completion of the single-label restriction") {
  Graph g = make_graph({{"a", "a", "a"}, {"b", "a", "c"}, {"c", "a", "b"}});
  Graph h = quasigroup_completion(g);
  PropertyReport rep = property_report(h);
  REQUIRE(rep.complete);
  REQUIRE(rep.simple);
  REQUIRE(rep.deterministic);
  REQUIRE(rep.co_deterministic);
  REQUIRE(rep.source_complete);
  REQUIRE(rep.target_complete);
  REQUIRE(h.vertex_count() == 3);
  REQUIRE(h.labels().size() == 3);
  REQUIRE(h.label_restriction({"a"}) == g);
  // The induced edge operation is a Latin square.
  REQUIRE(edge_operation(h, "a").verified_class.quasigroup);
}

TEST_CASE("quasigroup completion of a complete graph is the identity") {
  Graph g = cayley_graph(testutil::qg6_table());
  REQUIRE(quasigroup_completion(g) == g);
}

TEST_CASE("quasigroup completion of the loopless 2-cycle") {
  Graph g = make_graph({{"0", "a", "1"}, {"1", "a", "0"}});
  Graph h = quasigroup_completion(g);
  // Fresh loops make it complete; the complement is then empty.
  REQUIRE(h == make_graph({{"0", "a", "1"},
                           {"1", "a", "0"},
                           {"0", "__loop", "0"},
                           {"1", "__loop", "1"}}));
  SynthesizedOperation op = edge_operation(h, "0");
  REQUIRE(op.verified_class.quasigroup);
  REQUIRE(op.verified_class.identity == "0");
  REQUIRE(op.table.same_operation(testutil::cyclic_group(2)));
}

TEST_CASE("quasigroup completion preconditions") {
  REQUIRE_THROWS_WITH(quasigroup_completion(testutil::xy_semigroup_graph()),
                      Catch::Matchers::ContainsSubstring("co-deterministic"));
}

TEST_CASE("quasigroup completion rejects reserved color labels") {
  // Same shape as the single-label restriction but already labeled with
  // the first reserved color token.
  Graph g = make_graph(
      {{"a", "__c1", "a"}, {"b", "__c1", "c"}, {"c", "__c1", "b"}});
  REQUIRE_THROWS_WITH(quasigroup_completion(g),
                      Catch::Matchers::ContainsSubstring("reserved color"));
}

TEST_CASE("quasigroup completion regenerates by label restriction") {
  std::mt19937 rng(79);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<std::size_t> nd(2, 5);
    MagmaTable m = testutil::random_latin_square(rng, nd(rng));
    std::uniform_int_distribution<std::size_t> qd(1, m.size() - 1);
    std::vector<std::string> q(m.carrier().begin(),
                               m.carrier().begin() + qd(rng));
    Graph g = cayley_graph(m, Labeling::identity(q));
    Graph h = quasigroup_completion(g);
    REQUIRE(h.label_restriction(g.labels()) == g);
    SynthesizedOperation op = edge_operation(h, g.vertices().front());
    REQUIRE(op.verified_class.quasigroup);
  }
}

TEST_CASE("root completion returns valid rooted inputs unchanged") {
  Graph g = testutil::cycle_graph(3);
  std::optional<Graph> done = root_completion_search(g);
  REQUIRE(done.has_value());
  REQUIRE(*done == g);
}

TEST_CASE("root completion on the path graph finds nothing") {
  // Rooted but not arc-symmetric: the only root-completion of a rooted
  // graph is the graph itself.
  REQUIRE_FALSE(root_completion_search(testutil::path3_graph()).has_value());
}

TEST_CASE("root completion on two loops finds nothing") {
  // Both vertices already carry an a-edge into them, so no fresh-root
  // assignment preserves co-determinism.
  Graph g = make_graph({{"s", "a", "s"}, {"t", "a", "t"}});
  REQUIRE_FALSE(root_completion_search(g).has_value());
}

TEST_CASE("root completion budget is a distinct outcome") {
  Graph g = make_graph({{"s", "a", "t"}, {"u", "b", "v"}});
  REQUIRE_THROWS_AS(root_completion_search(g, 1), BudgetExceeded);
}

TEST_CASE("path-choice independence on small fixtures") {
  // All label words of length <= |V| from r to t give the same product,
  // for every graph from the small group fixtures.
  for (const MagmaTable& m : testutil::groups_up_to_order8()) {
    if (m.size() > 6) continue;
    for (const auto& subset : testutil::subsets_up_to(m.size(), 2)) {
      std::vector<std::string> q;
      for (std::size_t ix : subset) q.push_back(m.carrier()[ix]);
      if (closure(m, q, ClosureMode::Monoid).size() != m.size()) continue;
      Graph g = cayley_graph(m, Labeling::identity(q));
      const VertexId r = *axiom_check(m).identity;
      SynthesizedOperation op = path_operation(g, r);
      const std::size_t n = g.vertex_count();
      // DFS over words up to length n, tracking every replay at once.
      std::vector<VertexId> state = g.vertices();
      std::map<VertexId, std::size_t, LlexLess> pos;
      for (std::size_t k = 0; k < state.size(); ++k) pos[state[k]] = k;
      VertexId from_r = r;
      auto dfs = [&](auto&& self, std::size_t depth) -> void {
        for (std::size_t k = 0; k < state.size(); ++k)
          REQUIRE(state[k] == op.table.product(g.vertices()[k], from_r));
        if (depth == n) return;
        for (const Label& a : g.labels()) {
          std::vector<VertexId> saved = state;
          VertexId saved_r = from_r;
          bool ok = true;
          for (VertexId& v : state) {
            const auto& ts = g.targets(v, a);
            if (ts.empty()) { ok = false; break; }
            v = ts.front();
          }
          if (ok) {
            from_r = g.targets(from_r, a).front();
            self(self, depth + 1);
          }
          state = std::move(saved);
          from_r = saved_r;
        }
      };
      dfs(dfs, 0);
    }
  }
}

TEST_CASE("synthesized tables verify their classes on random fixtures") {
  std::mt19937 rng(83);
  for (int i = 0; i < 40; ++i) {
    std::uniform_int_distribution<std::size_t> nd(1, 5);
    MagmaTable m = testutil::random_left_quasigroup(rng, nd(rng));
    Graph g = cayley_graph(m);
    PropertyReport rep = property_report(g);
    REQUIRE(rep.complete);
    SynthesizedOperation op = edge_operation(g, g.vertices().front());
    REQUIRE(op.verified_class.left_quasigroup);
    if (rep.co_deterministic && rep.target_complete)
      REQUIRE(op.verified_class.quasigroup);
  }
}
