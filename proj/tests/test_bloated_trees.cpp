#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include <json.hpp>

#include "vmc/bloated.hpp"
#include "vmc/families.hpp"
#include "vmc/instancegen.hpp"
#include "vmc/solvers.hpp"

using namespace vmc;

namespace {

int ceil_sqrt(int x) {
  int r = 0;
  while (r * r < x) ++r;
  return r;
}

int ceil_4th(int x) {
  int r = 0;
  while (r * r * r * r < x) ++r;
  return r;
}

// center 0, then legs of `len` vertices each, labelled leg by leg outward
Graph spider(int legs, int len) {
  std::vector<int> vs{0};
  std::vector<std::pair<int, int>> es;
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      vs.push_back(next);
      es.push_back({prev, next});
      prev = next++;
    }
  }
  return Graph::from_edges(vs, es);
}

Graph complete_binary_tree(int depth) {
  int n = (1 << (depth + 1)) - 1;
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    vs[i] = i;
    if (i > 0) es.push_back({(i - 1) / 2, i});
  }
  return Graph::from_edges(vs, es);
}

std::vector<int> tree_leaves(const Graph& t) {
  std::vector<int> out;
  for (int v : t.vertices())
    if (t.degree(v) <= 1) out.push_back(v);
  return out;
}

bool no_adjacent_branching(const Graph& tree, const std::vector<int>& sel,
                           const std::vector<int>& forced = {}) {
  Graph sub = tree.induced(sel);
  auto branchy = [&](int v) {
    return sub.degree(v) >= 3 ||
           std::find(forced.begin(), forced.end(), v) != forced.end();
  };
  for (auto [a, b] : sub.edge_list())
    if (branchy(a) && branchy(b)) return false;
  return true;
}

int object_distance(const Graph& t, const std::vector<int>& a,
                    const std::vector<int>& b) {
  int best = -1;
  for (int x : a)
    for (int y : b) {
      int d = distance(t, x, y);
      if (d >= 0 && (best < 0 || d < best)) best = d;
    }
  return best;
}

// branching vertices and big cliques pairwise at BFS distance >= need inside
// the decomposition's own tree
bool spacing_ok(const BloatedTreeDecomp& d, int need) {
  std::vector<std::vector<int>> objs;
  for (int v : d.branching) objs.push_back({v});
  for (const auto& c : d.big_cliques) objs.push_back(c);
  Graph t = d.tree_graph();
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = i + 1; j < objs.size(); ++j) {
      int dist = object_distance(t, objs[i], objs[j]);
      if (dist >= 0 && dist < need) return false;
    }
  return true;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  for (int v : a)
    if (!sorted_contains(b, v)) return false;
  return true;
}

}  // namespace

TEST_CASE("analyze accepts the basic shapes") {
  BloatedAnalysis tri = analyze_bloated_tree(complete_graph(3), {0, 1, 2});
  REQUIRE(tri.decomp.has_value());
  CHECK(tri.decomp->big_cliques == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(tri.decomp->leaves.empty());
  CHECK(tri.decomp->branching.empty());
  CHECK(tri.decomp->attach.empty());

  BloatedAnalysis p5 = analyze_bloated_tree(path_n(5), {0, 1, 2, 3, 4});
  REQUIRE(p5.decomp.has_value());
  CHECK(p5.decomp->leaves == std::vector<int>{0, 4});
  CHECK(p5.decomp->branching.empty());
  CHECK(p5.decomp->big_cliques.empty());

  BloatedAnalysis k4 = analyze_bloated_tree(complete_graph(4), {0, 1, 2, 3});
  REQUIRE(k4.decomp.has_value());
  CHECK(k4.decomp->big_cliques == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(k4.decomp->branching.empty());

  // paw: triangle with a pendant; the degree-3 vertex sits in a triangle, so
  // it is not branching
  Graph paw =
      Graph::from_edges({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  BloatedAnalysis pa = analyze_bloated_tree(paw, {0, 1, 2, 3});
  REQUIRE(pa.decomp.has_value());
  CHECK(pa.decomp->leaves == std::vector<int>{3});
  CHECK(pa.decomp->branching.empty());
  CHECK(pa.decomp->big_cliques == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(pa.decomp->attach.empty());

  // same triangle viewed as t inside the paw: 0 keeps an outside neighbour
  BloatedAnalysis z = analyze_bloated_tree(paw, {0, 1, 2});
  REQUIRE(z.decomp.has_value());
  CHECK(z.decomp->attach == std::vector<int>{0});

  nlohmann::json j = nlohmann::json::parse(pa.decomp->to_json());
  CHECK(j["T"] == std::vector<int>({0, 1, 2, 3}));
  CHECK(j["L"] == std::vector<int>({3}));
  CHECK(j["B"].empty());
  CHECK(j["cliques"][0] == std::vector<int>({0, 1, 2}));
  CHECK(j["Z"].empty());
}

TEST_CASE("analyze names the violated clause") {
  CHECK(analyze_bloated_tree(cycle_n(4), {0, 1, 2, 3}).violated ==
        "contraction-not-a-tree");

  Graph bowtie = Graph::from_edges(
      {0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(analyze_bloated_tree(bowtie, bowtie.vertices()).violated ==
        "degree-exceeds-clique-size");

  Graph diamond = complete_graph(4).minus_edge(0, 1);
  CHECK(analyze_bloated_tree(diamond, diamond.vertices()).violated ==
        "edge-in-two-big-cliques");

  // two triangles joined by two separate edges: every clause about cliques
  // holds, but the contraction has a hidden doubled edge and is no tree
  Graph twin = Graph::from_edges({0, 1, 2, 3, 4, 5},
                                 {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5},
                                  {4, 5}, {0, 3}, {1, 4}});
  CHECK(analyze_bloated_tree(twin, twin.vertices()).violated ==
        "contraction-not-a-tree");

  CHECK_THROWS_AS(analyze_bloated_tree(path_n(3), {0, 9}), Error);
}

TEST_CASE("grow maximal bloated tree") {
  Graph t = random_tree(12, 7);
  CHECK(grow_maximal_bloated_tree(t, 0).t == t.vertices());

  CHECK(grow_maximal_bloated_tree(complete_graph(4), 2).t ==
        std::vector<int>{0, 1, 2, 3});

  // ascending greedy on C5 collects a P4 and must refuse to close the cycle
  CHECK(grow_maximal_bloated_tree(cycle_n(5), 0).t ==
        std::vector<int>{0, 1, 2, 3});

  Graph split = Graph::from_edges({0, 1, 2, 3}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(grow_maximal_bloated_tree(split, 0), Error);
  CHECK_THROWS_AS(grow_maximal_bloated_tree(path_n(3), 9), Error);

  for (int i = 0; i < 10; ++i) {
    Graph g = random_connected_graph(5 + i, i % 4, mix_seed(11, i));
    BloatedTreeDecomp d = grow_maximal_bloated_tree(g, i % g.n());
    for (int v : g.vertices()) {
      if (sorted_contains(d.t, v)) continue;
      CHECK_FALSE(analyze_bloated_tree(g, sorted_union(d.t, {v})).decomp);
    }
  }
}

TEST_CASE("adjacent degree-2 cut vertices of a maximal tree span a bridge") {
  int pairs_seen = 0;
  for (int i = 0; i < 30; ++i) {
    int n = 8 + (i * 37) % 33;  // up to 40
    Graph g = random_connected_graph(n, (i * 5) % 9, mix_seed(1905, i));
    BloatedTreeDecomp d = grow_maximal_bloated_tree(g, 0);
    Graph t = d.tree_graph();
    CutStructure cs = cut_structure(g);
    for (auto [u, v] : t.edge_list()) {
      if (t.degree(u) != 2 || t.degree(v) != 2) continue;
      if (!sorted_contains(cs.cut_vertices, u) ||
          !sorted_contains(cs.cut_vertices, v))
        continue;
      ++pairs_seen;
      CHECK(std::binary_search(cs.bridges.begin(), cs.bridges.end(),
                               std::pair<int, int>{u, v}));
    }
  }
  CHECK(pairs_seen > 0);
}

TEST_CASE("distinguished reduction") {
  Graph r = distinguished_reduction(path_n(5), {0, 4});
  CHECK(r == Graph::from_edges({0, 4}, {{0, 4}}));

  Graph c = distinguished_reduction(cycle_n(4), {0});
  CHECK(c.n() == 1);
  CHECK(c.has_vertex(0));

  Graph star = complete_bipartite(1, 5);
  CHECK(distinguished_reduction(star, {1, 2, 3, 4, 5}) == star);

  CHECK_THROWS_AS(distinguished_reduction(path_n(3), {}), Error);
  CHECK_THROWS_AS(distinguished_reduction(path_n(3), {7}), Error);
  Graph split = Graph::from_edges({0, 1, 2, 3}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(distinguished_reduction(split, {0}), Error);

  for (int i = 0; i < 8; ++i) {
    Graph g = random_connected_graph(6 + i, (i * 3) % 8, mix_seed(77, i));
    Graph once = distinguished_reduction(g, {0, 3});
    CHECK(distinguished_reduction(once, {0, 3}) == once);
  }
}

TEST_CASE("reduction order does not matter up to isomorphism") {
  // replay the two operations in random order by hand and compare with the
  // canonical ascending implementation
  SolverLimits wide;
  wide.iso = 20;
  for (int i = 0; i < 12; ++i) {
    int n = 7 + (i * 11) % 12;  // up to 18
    Graph g = random_connected_graph(n, (i * 3) % 6, mix_seed(3141, i));
    std::vector<int> s{0, n / 2};
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());

    Graph h = g;
    std::mt19937_64 rng(mix_seed(59, i));
    for (;;) {
      CutStructure cs = cut_structure(h);
      std::vector<std::pair<int, int>> moves;  // (0, v) delete, (1, v) smooth
      for (int v : h.vertices()) {
        if (sorted_contains(s, v)) continue;
        if (!sorted_contains(cs.cut_vertices, v)) moves.push_back({0, v});
        if (h.degree(v) == 2) {
          std::vector<int> nb = h.neighbors(v);
          std::pair<int, int> e1{std::min(nb[0], v), std::max(nb[0], v)};
          std::pair<int, int> e2{std::min(v, nb[1]), std::max(v, nb[1])};
          if (std::binary_search(cs.bridges.begin(), cs.bridges.end(), e1) &&
              std::binary_search(cs.bridges.begin(), cs.bridges.end(), e2))
            moves.push_back({1, v});
        }
      }
      if (moves.empty()) break;
      auto [op, v] = moves[rng() % moves.size()];
      if (op == 0) {
        h = h.minus_vertex(v);
      } else {
        std::vector<int> nb = h.neighbors(v);
        h = h.minus_vertex(v).plus_edge(nb[0], nb[1]);
      }
    }

    CHECK(are_isomorphic(distinguished_reduction(g, s), h, nullptr, wide));
  }
}

TEST_CASE("find distinguished bloated tree") {
  BloatedTreeDecomp whole = find_distinguished_bloated_tree(path_n(5), {0, 4});
  CHECK(whole.t == std::vector<int>{0, 1, 2, 3, 4});

  Graph sp = spider(5, 2);
  std::vector<int> tips;
  for (int v : sp.vertices())
    if (sp.degree(v) == 1) tips.push_back(v);
  BloatedTreeDecomp sd = find_distinguished_bloated_tree(sp, tips);
  CHECK(!sorted_intersect(sd.t, tips).empty());

  BloatedTreeDecomp k4 = find_distinguished_bloated_tree(complete_graph(4),
                                                         {0, 1, 2, 3});
  CHECK(k4.t == std::vector<int>{0, 1, 2, 3});

  for (int i = 0; i < 10; ++i) {
    Graph g = random_connected_graph(8 + i, (i * 7) % 10, mix_seed(808, i));
    std::vector<int> s{1 + i % 4, 5 + i % 3};
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    BloatedTreeDecomp d = find_distinguished_bloated_tree(g, s);
    CHECK(!sorted_intersect(d.t, s).empty());
    CHECK(analyze_bloated_tree(g, d.t).decomp.has_value());
  }
}

TEST_CASE("branching subtree basics") {
  Graph star = complete_bipartite(1, 9);
  CHECK(branching_subtree(star) == star.vertices());

  CHECK(branching_subtree(path_n(6)) == path_n(6).vertices());

  Graph one = Graph::from_edges({5}, {});
  CHECK(branching_subtree(one) == std::vector<int>{5});

  Graph cbt = complete_binary_tree(3);
  std::vector<int> sel = branching_subtree(cbt);
  Graph sub = cbt.induced(sel);
  CHECK(is_tree(sub));
  CHECK(no_adjacent_branching(cbt, sel));
  int kept = 0;
  for (int v : tree_leaves(cbt))
    if (sorted_contains(sel, v)) ++kept;
  CHECK(kept >= 3);  // ceil(sqrt(8))

  CHECK_THROWS_AS(branching_subtree(cycle_n(4)), Error);
}

TEST_CASE("branching subtree bound on random trees") {
  for (int i = 0; i < 200; ++i) {
    int n = 2 + (i * 29) % 64;  // leaf count stays below 65
    Graph t = random_tree(n, mix_seed(6001, i));
    std::vector<int> sel = branching_subtree(t);
    Graph sub = t.induced(sel);
    REQUIRE(is_tree(sub));
    REQUIRE(no_adjacent_branching(t, sel));
    std::vector<int> lv = tree_leaves(t);
    int kept = 0;
    for (int v : lv)
      if (sorted_contains(sel, v)) ++kept;
    REQUIRE(kept >= ceil_sqrt(static_cast<int>(lv.size())));
  }
}

TEST_CASE("branching certificate covers every node") {
  for (int i = 0; i < 40; ++i) {
    Graph t = random_tree(3 + (i * 13) % 40, mix_seed(42424, i));
    std::vector<BranchingDpNode> cert = branching_certificate(t);
    REQUIRE(static_cast<int>(cert.size()) == t.n());
    for (const auto& node : cert) {
      CHECK(t.has_vertex(node.vertex));
      CHECK(node.f0 * node.f1 >= node.leaves_below);
    }
  }
}

TEST_CASE("branching subtree with forced vertices") {
  Graph sp = spider(3, 2);
  std::vector<int> sel = branching_subtree(sp, {0});
  Graph sub = sp.induced(sel);
  CHECK(is_tree(sub));
  CHECK(no_adjacent_branching(sp, sel, {0}));

  std::vector<int> p = branching_subtree(path_n(5), {2});
  CHECK(is_tree(path_n(5).induced(p)));
  CHECK(no_adjacent_branching(path_n(5), p, {2}));
}

TEST_CASE("prune bloated tree keeps stars and spaced shapes intact") {
  Graph star = complete_bipartite(1, 6);
  BloatedTreeDecomp sd = *analyze_bloated_tree(star, star.vertices()).decomp;
  CHECK(prune_bloated_tree(sd).t == sd.t);

  // triangle with three pendant paths of length 5: already spaced, the
  // pipeline must hand it back unchanged
  std::vector<std::pair<int, int>> es{{0, 1}, {0, 2}, {1, 2}};
  std::vector<int> vs{0, 1, 2};
  int next = 3;
  for (int c = 0; c < 3; ++c) {
    int prev = c;
    for (int k = 0; k < 5; ++k) {
      vs.push_back(next);
      es.push_back({prev, next});
      prev = next++;
    }
  }
  Graph tri = Graph::from_edges(vs, es);
  BloatedTreeDecomp td = *analyze_bloated_tree(tri, tri.vertices()).decomp;
  BloatedTreeDecomp out = prune_bloated_tree(td);
  CHECK(out.t == td.t);
  CHECK(spacing_ok(out, 4));
}

TEST_CASE("prune bloated tree on a briar of adjacent branchings") {
  Graph cbt = complete_binary_tree(4);  // 16 leaves, branch points adjacent
  BloatedTreeDecomp d = *analyze_bloated_tree(cbt, cbt.vertices()).decomp;
  BloatedTreeDecomp out = prune_bloated_tree(d);
  CHECK(spacing_ok(out, 4));
  CHECK(subset_of(out.leaves, d.leaves));
  CHECK(static_cast<int>(out.leaves.size()) >= 2);  // ceil(16^(1/4))
}

TEST_CASE("prune bloated tree over random instances") {
  for (int i = 0; i < 40; ++i) {
    BloatedTreeDecomp d = random_bloated_tree(4 + i % 25, mix_seed(2024, i));
    BloatedTreeDecomp out = prune_bloated_tree(d);
    REQUIRE(analyze_bloated_tree(d.host, out.t).decomp.has_value());
    REQUIRE(subset_of(out.leaves, d.leaves));
    REQUIRE(static_cast<int>(out.leaves.size()) >=
            ceil_4th(static_cast<int>(d.leaves.size())));
    REQUIRE(spacing_ok(out, 4));
  }
}

TEST_CASE("prune rejects a tampered decomposition") {
  BloatedTreeDecomp bogus;
  bogus.host = cycle_n(4);
  bogus.t = {0, 1, 2, 3};
  CHECK_THROWS_AS(prune_bloated_tree(bogus), Error);
}

TEST_CASE("find spread bloated tree") {
  // star with every edge subdivided once: 16 degree-1 tips
  std::vector<int> vs{0};
  std::vector<std::pair<int, int>> es;
  std::vector<int> tips;
  for (int i = 0; i < 16; ++i) {
    int mid = 1 + 2 * i, tip = 2 + 2 * i;
    vs.push_back(mid);
    vs.push_back(tip);
    es.push_back({0, mid});
    es.push_back({mid, tip});
    tips.push_back(tip);
  }
  Graph sub16 = Graph::from_edges(vs, es);
  std::optional<BloatedTreeDecomp> got = find_spread_bloated_tree(sub16, tips, 2);
  REQUIRE(got.has_value());
  CHECK(static_cast<int>(got->leaves.size()) >= 2);
  CHECK(subset_of(got->leaves, tips));
  CHECK(spacing_ok(*got, 4));

  Graph k2 = path_n(2);
  CHECK_FALSE(find_spread_bloated_tree(k2, {0, 1}, 3).has_value());

  Graph star = complete_bipartite(1, 5);
  CHECK_THROWS_AS(find_spread_bloated_tree(star, {0}, 1), Error);
  CHECK_THROWS_AS(find_spread_bloated_tree(star, {1}, 0), Error);

  for (int i = 0; i < 10; ++i) {
    Graph t = random_tree(6 + 3 * i, mix_seed(515, i));
    std::vector<int> s = tree_leaves(t);
    int ell = ceil_4th(static_cast<int>(s.size()));
    std::optional<BloatedTreeDecomp> r = find_spread_bloated_tree(t, s, ell);
    REQUIRE(r.has_value());
    CHECK(static_cast<int>(sorted_intersect(r->leaves, s).size()) >= ell);
    CHECK(subset_of(r->leaves, s));
    CHECK(spacing_ok(*r, 4));
  }
}
