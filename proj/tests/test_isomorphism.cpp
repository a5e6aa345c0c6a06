#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "testutil.hpp"

using namespace cayley;
using testutil::even_graph;
using testutil::make_graph;

TEST_CASE("Even marked p and marked q are isomorphic by the swap") {
  MarkedSubgraph mp(even_graph().edges(), {"p"});
  MarkedSubgraph mq(even_graph().edges(), {"q"});
  auto bij = marked_isomorphic(mp, mq);
  REQUIRE(bij.has_value());
  REQUIRE(bij->forward.at("p") == "q");
  REQUIRE(bij->forward.at("q") == "p");
}

TEST_CASE("identity isomorphism and edge-count pruning") {
  MarkedSubgraph ms(even_graph().edges(), {"p"});
  REQUIRE(marked_isomorphic(ms, ms).has_value());
  MarkedSubgraph other({{"s", "a", "t"}}, {"s"});
  REQUIRE_FALSE(marked_isomorphic(ms, other).has_value());
}

TEST_CASE("two empty cones with one mark each are isomorphic") {
  MarkedSubgraph a({}, {"x"});
  MarkedSubgraph b({}, {"y"});
  REQUIRE(marked_isomorphic(a, b).has_value());
}

TEST_CASE("vertex isomorphism basics") {
  REQUIRE(vertex_isomorphic(even_graph(), "p", "q"));
  Graph path = testutil::path3_graph();
  REQUIRE_FALSE(vertex_isomorphic(path, "v0", "v1"));
  REQUIRE(vertex_isomorphic(path, "v1", "v1"));
  REQUIRE_THROWS_AS(vertex_isomorphic(path, "zz", "v0"), Error);
}

TEST_CASE("accessible isomorphism on the x*y = y counterexample") {
  Graph g = testutil::xy_semigroup_graph();
  REQUIRE_FALSE(accessible_isomorphic(g, "a", "b"));
  REQUIRE(accessible_isomorphic(g, "a", "a"));
  REQUIRE_FALSE(is_arc_symmetric(g));
}

TEST_CASE("accessible isomorphism with empty cones") {
  Graph path = testutil::path3_graph();
  REQUIRE_FALSE(accessible_isomorphic(path, "v0", "v2"));  // sizes 2 vs 0
  Graph two_paths = make_graph({{"a", "x", "b"}, {"c", "x", "d"}});
  REQUIRE(accessible_isomorphic(two_paths, "b", "d"));  // two sinks
}

TEST_CASE("arc symmetry of fixtures") {
  REQUIRE(is_arc_symmetric(even_graph()));
  REQUIRE(is_arc_symmetric(make_graph({{"s", "a", "s"}})));
  REQUIRE_FALSE(is_arc_symmetric(testutil::path3_graph()));
}

TEST_CASE("symmetry of fixtures") {
  REQUIRE(is_symmetric(even_graph()));
  REQUIRE_FALSE(is_symmetric(testutil::path3_graph()));
  // Swap automorphism across two isomorphic components.
  REQUIRE(is_symmetric(make_graph({{"s", "a", "s"}, {"t", "a", "t"}})));
  // Non-isomorphic components break symmetry.
  REQUIRE_FALSE(is_symmetric(
      make_graph({{"s", "a", "s"}, {"t", "a", "u"}, {"u", "a", "t"}})));
}

TEST_CASE("node budget raises instead of answering") {
  std::vector<Edge> edges;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      edges.push_back({"v" + std::to_string(i), "a", "v" + std::to_string(j)});
  Graph clique(std::move(edges));
  REQUIRE_THROWS_AS(is_symmetric(clique, 5), BudgetExceeded);
  REQUIRE(is_symmetric(clique));
}

TEST_CASE("isomorphism relations are equivalences on random graphs") {
  std::mt19937 rng(47);
  for (int i = 0; i < 40; ++i) {
    Graph g = testutil::random_graph(rng, 6);
    const auto& vs = g.vertices();
    for (const VertexId& s : vs) {
      REQUIRE(vertex_isomorphic(g, s, s));
      REQUIRE(accessible_isomorphic(g, s, s));
    }
    for (const VertexId& s : vs)
      for (const VertexId& t : vs) {
        REQUIRE(vertex_isomorphic(g, s, t) == vertex_isomorphic(g, t, s));
        REQUIRE(accessible_isomorphic(g, s, t) ==
                accessible_isomorphic(g, t, s));
      }
    for (const VertexId& s : vs)
      for (const VertexId& t : vs)
        for (const VertexId& u : vs)
          if (vertex_isomorphic(g, s, t) && vertex_isomorphic(g, t, u))
            REQUIRE(vertex_isomorphic(g, s, u));
  }
}

TEST_CASE("symmetric implies arc-symmetric implies source-complete") {
  std::mt19937 rng(53);
  std::vector<Graph> corpus = {even_graph(), testutil::path3_graph(),
                               testutil::xy_semigroup_graph(),
                               testutil::cycle_graph(4)};
  for (int i = 0; i < 150; ++i) corpus.push_back(testutil::random_graph(rng));
  for (const Graph& g : corpus) {
    PropertyReport rep = property_report(g);
    if (is_symmetric(g)) REQUIRE(is_arc_symmetric(g));
    if (is_arc_symmetric(g)) REQUIRE(rep.source_complete);
  }
}

TEST_CASE("reductions agree with the all-pairs brute force") {
  std::mt19937 rng(59);
  for (int i = 0; i < 150; ++i) {
    Graph g = testutil::random_graph(rng, 8);
    REQUIRE(is_symmetric(g) == testutil::brute_symmetric(g));
    REQUIRE(is_arc_symmetric(g) == testutil::brute_arc_symmetric(g));
  }
}

TEST_CASE("root-successor reduction agrees on rooted graphs") {
  std::mt19937 rng(61);
  int rooted_seen = 0;
  for (int i = 0; i < 400 && rooted_seen < 120; ++i) {
    Graph g = testutil::random_graph(rng, 8);
    if (roots_of(g).empty()) continue;
    ++rooted_seen;
    REQUIRE(is_arc_symmetric(g) == testutil::brute_arc_symmetric(g));
  }
  REQUIRE(rooted_seen >= 120);
}
