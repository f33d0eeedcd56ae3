#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vmc/graph6.hpp"
#include "vmc/oracle.hpp"
#include "vmc/trace.hpp"

using namespace vmc;

namespace {

Graph path_graph(const std::vector<int>& vs) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) es.emplace_back(vs[i], vs[i + 1]);
  return Graph::from_edges(vs, es);
}

Graph cycle_graph(int n) {
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    vs[i] = i;
    es.emplace_back(i, (i + 1) % n);
  }
  return Graph::from_edges(vs, es);
}

Graph random_graph(std::mt19937_64& rng, int n) {
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) vs[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) es.emplace_back(i, j);
  return Graph::from_edges(vs, es);
}

}  // namespace

TEST_CASE("local complementation basics") {
  // star center: complementing its neighborhood completes the graph
  Graph star = Graph::from_edges({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}});
  Graph lc = local_complement(star, 0);
  CHECK(lc.m() == 6);

  // triangle: complementing at any vertex removes the opposite edge
  Graph tri = Graph::from_edges({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
  CHECK_FALSE(local_complement(tri, 0).adjacent(1, 2));

  // degree 0 and 1 are fixed points
  Graph p2 = Graph::from_edges({0, 1, 2}, {{0, 1}});
  CHECK(local_complement(p2, 0) == p2);
  CHECK(local_complement(p2, 2) == p2);
  CHECK_THROWS_AS(local_complement(p2, 5), Error);
}

TEST_CASE("local complementation is an involution") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Graph g = random_graph(rng, n);
    int v = static_cast<int>(rng() % n);
    CHECK(local_complement(local_complement(g, v), v) == g);
  }
}

TEST_CASE("pivot requires an edge") {
  Graph p3 = path_graph({0, 1, 2});
  CHECK_THROWS_WITH_AS(pivot(p3, 0, 2), "pivot: {0,2} is not an edge", Error);
  CHECK_THROWS_AS(pivot(p3, 0, 0), Error);
  CHECK_THROWS_AS(pivot(p3, 0, 9), Error);
}

TEST_CASE("pivot on a path end moves the middle") {
  // 0-1-2 pivoted on {0,1} becomes 1-0-2: the swap hands 1's other
  // neighbor to 0
  Graph p3 = path_graph({0, 1, 2});
  Graph piv = pivot(p3, 0, 1);
  CHECK(piv.adjacent(0, 1));
  CHECK(piv.adjacent(0, 2));
  CHECK_FALSE(piv.adjacent(1, 2));
}

TEST_CASE("pivot agrees with the triple complementation") {
  std::mt19937_64 rng(29);
  int checked = 0;
  while (checked < 60) {
    int n = 2 + static_cast<int>(rng() % 7);
    Graph g = random_graph(rng, n);
    auto edges = g.edge_list();
    if (edges.empty()) continue;
    auto [u, v] = edges[rng() % edges.size()];
    Graph direct = pivot(g, u, v);
    Graph uvu = local_complement(local_complement(local_complement(g, u), v), u);
    Graph vuv = local_complement(local_complement(local_complement(g, v), u), v);
    CHECK(direct == uvu);
    CHECK(direct == vuv);
    CHECK(pivot(g, v, u) == direct);
    CHECK(pivot(direct, u, v) == g);
    ++checked;
  }
}

TEST_CASE("pivot set decomposition") {
  // 4 sees only 0, 3 sees only 1, 2 sees both
  Graph g = Graph::from_edges({0, 1, 2, 3, 4},
                              {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {0, 4}});
  PivotSets s = pivot_sets(g, 0, 1);
  CHECK(s.only_u == std::vector<int>{4});
  CHECK(s.only_v == std::vector<int>{3});
  CHECK(s.both == std::vector<int>{2});
}

TEST_CASE("smoothing removes a subdivision vertex") {
  Graph p4 = path_graph({0, 1, 2, 3});
  Graph s = smooth(p4, 1);
  CHECK(s.vertices() == std::vector<int>{0, 2, 3});
  CHECK(s.adjacent(0, 2));
  CHECK(s.adjacent(2, 3));
  CHECK(s.m() == 2);

  CHECK_THROWS_WITH_AS(smooth(p4, 0), "smooth: vertex 0 has degree 1, need 2", Error);
  Graph tri = Graph::from_edges({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
  CHECK_THROWS_WITH_AS(smooth(tri, 0), "smooth: neighbors of 0 are adjacent", Error);
  CHECK_THROWS_AS(smooth(p4, 9), Error);
}

TEST_CASE("trace serialization is bit-stable") {
  Trace t;
  t.lc(3);
  t.pivot(1, 4);
  t.del(3);
  CHECK(t.to_jsonl() ==
        "{\"op\":\"lc\",\"v\":3}\n"
        "{\"op\":\"pivot\",\"u\":1,\"v\":4}\n"
        "{\"op\":\"del\",\"v\":3}\n");
  CHECK(Trace::from_jsonl(t.to_jsonl()) == t);
}

TEST_CASE("smoothing records as its expansion") {
  Trace t;
  t.smooth(7);
  REQUIRE(t.size() == 2);
  CHECK(t.steps[0] == TraceStep{StepKind::LC, -1, 7});
  CHECK(t.steps[1] == TraceStep{StepKind::Del, -1, 7});
  CHECK(t.to_jsonl() == "{\"op\":\"lc\",\"v\":7}\n{\"op\":\"del\",\"v\":7}\n");
}

TEST_CASE("trace parsing rejects garbage with line numbers") {
  CHECK_THROWS_AS(Trace::from_jsonl("{\"op\":\"lc\",\"v\":1}\nnot json\n"), Error);
  try {
    Trace::from_jsonl("{\"op\":\"lc\",\"v\":1}\n{\"op\":\"warp\",\"v\":2}\n");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("warp") != std::string::npos);
  }
  CHECK_THROWS_AS(Trace::from_jsonl("{\"op\":\"pivot\",\"u\":1}\n"), Error);
  CHECK(Trace::from_jsonl("").empty());
  CHECK(Trace::from_jsonl("\n  \n").empty());
}

TEST_CASE("trace replay and failure position") {
  Graph p5 = path_graph({0, 1, 2, 3, 4});
  Trace t;
  t.smooth(1);
  t.smooth(2);
  Graph g = apply_trace(p5, t);
  CHECK(g == path_graph({0, 3, 4}));

  Trace bad;
  bad.del(0);
  bad.lc(0);
  try {
    apply_trace(p5, bad);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("containment search finds short witnesses") {
  Graph c5 = cycle_graph(5);
  auto r = contains_vertex_minor(c5, path_graph({0, 1, 2, 3}));
  REQUIRE(r.contained);
  CHECK(r.trace.size() == 1);
  CHECK(are_isomorphic(apply_trace(c5, r.trace), path_graph({0, 1, 2, 3})));

  auto r2 = contains_vertex_minor(c5, cycle_graph(4));
  REQUIRE(r2.contained);
  CHECK(r2.trace.size() == 2);
  CHECK(are_isomorphic(apply_trace(c5, r2.trace), cycle_graph(4)));
}

TEST_CASE("containment corner cases") {
  Graph k4 = Graph::from_edges({0, 1, 2, 3},
                               {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto same = contains_vertex_minor(k4, k4);
  CHECK(same.contained);
  CHECK(same.trace.empty());

  CHECK_FALSE(contains_vertex_minor(path_graph({0, 1, 2}), cycle_graph(4)).contained);
  CHECK_FALSE(
      contains_vertex_minor(Graph::from_edges({0, 1, 2}, {}), path_graph({0, 1}))
          .contained);
  // a path turns into a triangle under one complementation
  CHECK(contains_vertex_minor(path_graph({0, 1, 2}), cycle_graph(3)).contained);
  // but its edges never all vanish
  CHECK_FALSE(
      contains_vertex_minor(path_graph({0, 1, 2}), Graph::from_edges({0, 1, 2}, {}))
          .contained);
  CHECK_THROWS_AS(contains_vertex_minor(cycle_graph(10), k4), Error);
}

TEST_CASE("pivot-minor containment") {
  Graph p3 = path_graph({0, 1, 2});
  auto r = contains_pivot_minor(p3, path_graph({0, 1}));
  CHECK(r.contained);
  // pivoting a 3-vertex path only renames it, so its edges never all vanish
  CHECK_FALSE(contains_pivot_minor(p3, Graph::from_edges({0, 1, 2}, {})).contained);
  // complementing at a path vertex makes a triangle; a pivot never does
  CHECK(contains_vertex_minor(p3, cycle_graph(3)).contained);
  CHECK_FALSE(contains_pivot_minor(p3, cycle_graph(3)).contained);
  auto c5 = cycle_graph(5);
  auto rp = contains_pivot_minor(c5, path_graph({0, 1, 2, 3}));
  REQUIRE(rp.contained);
  CHECK(are_isomorphic(apply_trace(c5, rp.trace), path_graph({0, 1, 2, 3})));
}

TEST_CASE("containment search is deterministic") {
  Graph host = cycle_graph(6);
  Graph pat = path_graph({0, 1, 2});
  auto a = contains_vertex_minor(host, pat);
  auto b = contains_vertex_minor(host, pat);
  REQUIRE(a.contained);
  CHECK(a.trace == b.trace);
  CHECK(a.trace.to_jsonl() == b.trace.to_jsonl());
}
