#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "vmc/families.hpp"
#include "vmc/multicover.hpp"
#include "vmc/oracle.hpp"
#include "vmc/solvers.hpp"
#include "vmc/trace.hpp"

using namespace vmc;

namespace {

std::vector<int> iota_vec(int first, int last) {
  std::vector<int> out;
  for (int v = first; v <= last; ++v) out.push_back(v);
  return out;
}

Graph cycle_graph(int n) {
  std::vector<int> vs = iota_vec(0, n - 1);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return Graph::from_edges(vs, es);
}

Graph path_graph(int n) {
  std::vector<int> vs = iota_vec(0, n - 1);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return Graph::from_edges(vs, es);
}

// two singleton families {2} and {3}, both covering {4, 5}, no attachment
// from 0 down to 3: a pure two-step multicover
Graph pure2() {
  return Graph::from_edges(iota_vec(0, 5), {{0, 2},
                                            {1, 3},
                                            {2, 4},
                                            {2, 5},
                                            {3, 4},
                                            {3, 5},
                                            {4, 5}});
}

// same shape with the 0-3 attachment present, so earlier 0 is complete to
// the later family {3}
Graph impure2() { return pure2().plus_edge(0, 3); }

MulticoverCert cert2(bool stable, bool pure, bool impure) {
  MulticoverCert c;
  c.xs = {0, 1};
  c.families = {{2}, {3}};
  c.covered = {4, 5};
  c.stable = stable;
  c.pure = pure;
  c.impure = impure;
  return c;
}

// Mycielski ladder over the cycle 1..5 with shadow row 6..10, top 11, and a
// second apex 0 on the shadow row; triangle-free, four-chromatic, and the
// 2-ball at 0 is the whole graph
Graph double_apex_mycielski() {
  std::vector<int> vs = iota_vec(0, 11);
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= 5; ++i) es.push_back({i, i % 5 + 1});
  for (int i = 1; i <= 5; ++i) {
    es.push_back({5 + i, i % 5 + 1});
    es.push_back({5 + i, (i + 3) % 5 + 1});
  }
  for (int i = 6; i <= 10; ++i) {
    es.push_back({11, i});
    es.push_back({0, i});
  }
  return Graph::from_edges(vs, es);
}

// two C5s joined completely (chromatic number six, clique number four) hung
// one step below the stable pair {1, 2}; pendant leaves push every 2-ball
// that sees the join past the exact solver, so only bounds ever apply
Graph join_host() {
  std::vector<int> vs = iota_vec(0, 16);
  std::vector<std::pair<int, int>> es = {{0, 1}, {0, 2}};
  for (int i = 0; i < 5; ++i) {
    es.push_back({3 + i, 3 + (i + 1) % 5});
    es.push_back({8 + i, 8 + (i + 1) % 5});
  }
  for (int a = 3; a <= 7; ++a)
    for (int b = 8; b <= 12; ++b) es.push_back({a, b});
  for (int a = 3; a <= 7; ++a) es.push_back({1, a});
  for (int b = 8; b <= 12; ++b) es.push_back({2, b});
  es.push_back({1, 13});
  es.push_back({1, 14});
  es.push_back({2, 15});
  es.push_back({2, 16});
  return Graph::from_edges(vs, es);
}

// proper subdivision of K_n: branch vertices 0..n-1, every pair joined by a
// fresh two-interior path, so every edge has odd length 3
Graph subdivided_complete(int n) {
  std::vector<int> vs = iota_vec(0, n - 1);
  std::vector<std::pair<int, int>> es;
  int next = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int s1 = next++, s2 = next++;
      vs.push_back(s1);
      vs.push_back(s2);
      es.push_back({a, s1});
      es.push_back({s1, s2});
      es.push_back({s2, b});
    }
  return Graph::from_edges(vs, es);
}

}  // namespace

TEST_CASE("multicover validator accepts the pure and impure fixtures") {
  CHECK(validate_structure(pure2(), cert2(true, false, false),
                           StructureKind::Multicover) == "");
  CHECK(validate_structure(pure2(), cert2(true, true, false),
                           StructureKind::Multicover) == "");
  CHECK(validate_structure(impure2(), cert2(true, false, true),
                           StructureKind::Multicover) == "");
}

TEST_CASE("multicover validator pins each clause to one edge of slack") {
  const MulticoverCert base = cert2(true, false, false);

  MulticoverCert shape = base;
  shape.families = {{2}};
  CHECK(validate_structure(pure2(), shape, StructureKind::Multicover) ==
        "families-shape");

  MulticoverCert ghost = base;
  ghost.xs = {0, 99};
  CHECK(validate_structure(pure2(), ghost, StructureKind::Multicover) ==
        "unknown-vertex");

  MulticoverCert overlap = base;
  overlap.covered = {2, 4, 5};
  CHECK(validate_structure(pure2(), overlap, StructureKind::Multicover) ==
        "roles-overlap");

  MulticoverCert off = base;
  off.families = {{3}, {2}};
  CHECK(validate_structure(pure2(), off, StructureKind::Multicover) ==
        "family-off-neighbourhood");

  CHECK(validate_structure(pure2().plus_edge(0, 1), base,
                           StructureKind::Multicover) == "x-not-stable");
  CHECK(validate_structure(pure2().plus_edge(0, 4), base,
                           StructureKind::Multicover) == "x-touches-covered");
  CHECK(validate_structure(pure2().minus_edge(3, 4), base,
                           StructureKind::Multicover) ==
        "family-misses-covered");
  CHECK(validate_structure(pure2().plus_edge(1, 2), base,
                           StructureKind::Multicover) ==
        "later-x-sees-earlier-family");

  // a two-member family with an internal edge breaks the stable claim
  Graph wide = Graph::from_edges(iota_vec(0, 6), {{0, 2},
                                                  {1, 3},
                                                  {2, 4},
                                                  {2, 5},
                                                  {3, 4},
                                                  {3, 5},
                                                  {4, 5},
                                                  {0, 6},
                                                  {2, 6}});
  MulticoverCert stable = base;
  stable.families = {{2, 6}, {3}};
  CHECK(validate_structure(wide, stable, StructureKind::Multicover) ==
        "family-not-stable");

  CHECK(validate_structure(impure2(), cert2(true, true, false),
                           StructureKind::Multicover) ==
        "earlier-x-sees-later-family");
  CHECK(validate_structure(pure2(), cert2(true, false, true),
                           StructureKind::Multicover) ==
        "impure-attachment-missing");
}

TEST_CASE("crested validator accepts the fixture and rejects every tamper") {
  Graph g = Graph::from_edges(iota_vec(0, 8), {{0, 2},
                                               {1, 3},
                                               {2, 4},
                                               {2, 5},
                                               {3, 4},
                                               {3, 5},
                                               {4, 5},
                                               {6, 7},
                                               {6, 8},
                                               {0, 7},
                                               {1, 8}});
  MulticoverCert c = cert2(true, true, false);
  c.centres = {6};
  c.crests = {{7, 8}};
  CHECK(validate_structure(g, c, StructureKind::Crested) == "");

  CHECK(validate_structure(g.minus_edge(6, 7), c, StructureKind::Crested) ==
        "centre-crest-mismatch");
  CHECK(validate_structure(g.plus_edge(6, 4), c, StructureKind::Crested) ==
        "centre-touches-roles");
  CHECK(validate_structure(g.plus_edge(7, 8), c, StructureKind::Crested) ==
        "crests-not-stable");
  CHECK(validate_structure(g.plus_edge(7, 4), c, StructureKind::Crested) ==
        "crest-anchor-mismatch");

  MulticoverCert bare = c;
  bare.centres.clear();
  bare.crests.clear();
  CHECK(validate_structure(g, bare, StructureKind::Crested) == "crest-shape");

  // the centre with its contact vertices forms the one-subdivision biclique
  SubdividedBiclique kb{2, 1, {}};
  Graph carved = g.induced({0, 1, 6, 7, 8});
  CHECK(are_isomorphic(carved, kb.graph()));
}

TEST_CASE("oddity validator judges the path against the role sets") {
  Graph g1 = pure2().plus_edge(2, 3);
  MulticoverCert c = cert2(true, true, false);
  CHECK(validate_structure(g1, c, StructureKind::Oddity, {0, 2, 3, 1}) == "");

  Graph g2 = Graph::from_edges(iota_vec(0, 7), {{0, 2},
                                                {0, 6},
                                                {1, 3},
                                                {1, 7},
                                                {2, 4},
                                                {6, 5},
                                                {3, 5},
                                                {7, 4},
                                                {4, 5}});
  MulticoverCert c2 = cert2(true, true, false);
  c2.families = {{2, 6}, {3, 7}};
  CHECK(validate_structure(g2, c2, StructureKind::Oddity,
                           {0, 2, 4, 5, 3, 1}) == "");
  CHECK(validate_structure(g2, c2, StructureKind::Oddity, {0, 2, 4, 7, 1}) ==
        "length-not-3-or-5");
  CHECK(validate_structure(g2, c2, StructureKind::Oddity, {2, 4, 5, 3}) ==
        "path-ends-off-x");
  CHECK(validate_structure(g2, c2, StructureKind::Oddity, {0, 2, 4, 4, 1}) ==
        "path-not-induced");

  // a third x off the path but adjacent to it taints the oddity
  Graph g3 = Graph::from_edges(
      iota_vec(0, 9),
      {{0, 2}, {0, 6}, {1, 3}, {1, 7}, {2, 4}, {6, 5}, {3, 5}, {7, 4}, {4, 5},
       {8, 9}, {9, 4}, {9, 5}, {8, 2}});
  MulticoverCert c3 = c2;
  c3.xs = {0, 1, 8};
  c3.families = {{2, 6}, {3, 7}, {9}};
  CHECK(validate_structure(g3, c3, StructureKind::Oddity,
                           {0, 2, 4, 5, 3, 1}) == "x-meets-path");

  // a shortcut through a vertex with no role in the cert is no oddity
  std::vector<int> vs4 = iota_vec(0, 7);
  vs4.push_back(20);
  Graph g4 = Graph::from_edges(vs4, {{0, 2},
                                     {0, 6},
                                     {1, 3},
                                     {1, 7},
                                     {2, 4},
                                     {6, 5},
                                     {3, 5},
                                     {7, 4},
                                     {4, 5},
                                     {2, 20},
                                     {20, 1}});
  CHECK(validate_structure(g4, c2, StructureKind::Oddity, {0, 2, 20, 1}) ==
        "path-off-roles");
}

TEST_CASE("find_stable_multicover walks C5 one step deep") {
  Graph g = cycle_graph(5);
  MulticoverCert c = find_stable_multicover(g, 1, 1, 1, 2);
  CHECK(c.xs == std::vector<int>{0});
  CHECK(c.families == std::vector<std::vector<int>>{{1, 4}});
  CHECK(c.covered == std::vector<int>{2, 3});
  CHECK(c.stable);
  CHECK(c.chi_verified);
  CHECK(validate_structure(g, c, StructureKind::Multicover) == "");

  MulticoverCert flat = find_stable_multicover(g, 0, 1, 1, 2);
  CHECK(flat.xs.empty());
  CHECK(flat.families.empty());
  CHECK(flat.covered == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("find_stable_multicover stacks two steps over the Mycielski host") {
  Graph g = double_apex_mycielski();
  MulticoverCert c = find_stable_multicover(g, 2, 0, 1, 2);
  CHECK(c.xs == std::vector<int>{1, 0});
  CHECK(c.families ==
        std::vector<std::vector<int>>{{2, 5}, {6, 7, 8, 9, 10}});
  CHECK(c.covered == std::vector<int>{3, 4});
  CHECK(c.stable);
  CHECK(c.chi_verified);
  CHECK(validate_structure(g, c, StructureKind::Multicover) == "");
}

TEST_CASE("find_stable_multicover settles for an unsettled two-ball") {
  Graph g = join_host();
  MulticoverCert c = find_stable_multicover(g, 1, 4, 1, 4);
  CHECK(c.xs == std::vector<int>{0});
  CHECK(c.families == std::vector<std::vector<int>>{{1, 2}});
  CHECK(c.covered == iota_vec(3, 12));
  CHECK(c.stable);
  CHECK_FALSE(c.chi_verified);  // the 2-ball at 0 outgrows the exact solver
  CHECK(validate_structure(g, c, StructureKind::Multicover) == "");
}

TEST_CASE("find_stable_multicover reports a host with no deep ball") {
  CHECK_THROWS_WITH_AS(
      find_stable_multicover(path_graph(10), 1, 5, 1, 2),
      "find_stable_multicover: no 2-ball reaches chromatic number 7", Error);
}

TEST_CASE("refine_multicover keeps representatives and reads the pattern") {
  MulticoverCert in = cert2(true, false, false);

  MulticoverCert p = refine_multicover(pure2(), in, 2);
  CHECK(p.pure);
  CHECK_FALSE(p.impure);
  CHECK(p.xs == std::vector<int>{0, 1});
  CHECK(p.families == std::vector<std::vector<int>>{{2}, {3}});
  CHECK(p.covered == std::vector<int>{4, 5});
  CHECK(p.stable);

  MulticoverCert q = refine_multicover(impure2(), in, 2);
  CHECK(q.impure);
  CHECK_FALSE(q.pure);
  CHECK(q.xs == std::vector<int>{0, 1});
  CHECK(q.families == std::vector<std::vector<int>>{{2}, {3}});
  CHECK(q.covered == std::vector<int>{4, 5});

  MulticoverCert loose = cert2(false, false, false);
  CHECK_THROWS_WITH_AS(refine_multicover(pure2(), loose, 2),
                       "refine_multicover: the multicover is not stable",
                       Error);
  CHECK_THROWS_WITH_AS(
      refine_multicover(pure2(), in, 3),
      "refine_multicover: length 2 is below the Ramsey bound 6", Error);
}

TEST_CASE("impure_to_pure at ell one keeps the graph and drops to one step") {
  Graph g = impure2();
  PureMulticover out = impure_to_pure(g, cert2(true, false, true), 1, 1, 1, 3, 1);
  CHECK(out.graph == g);
  CHECK(out.trace.empty());
  CHECK(out.cert.pure);
  CHECK(out.cert.xs == std::vector<int>{0});
  CHECK(out.cert.families == std::vector<std::vector<int>>{{2}});
  CHECK(out.cert.covered == std::vector<int>{4, 5});
  CHECK(out.cert.chi_verified);
}

TEST_CASE("impure_to_pure pivots the stable-family case onto its anchors") {
  Graph g = Graph::from_edges(iota_vec(0, 9), {{0, 2},
                                               {0, 3},
                                               {1, 4},
                                               {1, 5},
                                               {0, 4},
                                               {0, 5},
                                               {2, 6},
                                               {3, 7},
                                               {3, 8},
                                               {4, 6},
                                               {5, 7},
                                               {5, 8},
                                               {6, 7},
                                               {6, 8},
                                               {7, 8},
                                               {0, 9}});
  MulticoverCert in;
  in.xs = {0, 1};
  in.families = {{2, 3}, {4, 5}};
  in.covered = {6, 7, 8};
  in.stable = true;
  in.impure = true;
  PureMulticover out = impure_to_pure(g, in, 1, 2, 1, 3, 1);

  Trace want;
  want.del(9);
  want.pivot(1, 4);
  want.pivot(0, 2);
  want.del(0);
  want.del(1);
  want.del(6);
  CHECK(out.trace == want);
  CHECK(out.graph == apply_trace(g, out.trace));
  CHECK(out.graph == Graph::from_edges({2, 3, 4, 5, 7, 8}, {{2, 3},
                                                            {3, 7},
                                                            {3, 8},
                                                            {4, 5},
                                                            {5, 7},
                                                            {5, 8},
                                                            {7, 8}}));
  CHECK(out.cert.pure);
  CHECK(out.cert.xs == std::vector<int>{2, 4});
  CHECK(out.cert.families == std::vector<std::vector<int>>{{3}, {5}});
  CHECK(out.cert.covered == std::vector<int>{7, 8});
  CHECK(out.cert.chi_verified);
  CHECK(validate_structure(out.graph, out.cert, StructureKind::Multicover) ==
        "");
  CHECK(clique_number(out.graph) <= clique_number(g));
}

TEST_CASE("impure_to_pure colours a degenerate pattern and swaps labels") {
  Graph g = Graph::from_edges(iota_vec(0, 10), {{0, 3},
                                                {0, 4},
                                                {1, 5},
                                                {1, 6},
                                                {2, 7},
                                                {2, 8},
                                                {0, 5},
                                                {0, 6},
                                                {0, 7},
                                                {0, 8},
                                                {1, 7},
                                                {1, 8},
                                                {3, 5},
                                                {4, 9},
                                                {4, 10},
                                                {6, 9},
                                                {6, 10},
                                                {8, 9},
                                                {8, 10},
                                                {9, 10}});
  MulticoverCert in;
  in.xs = {0, 1, 2};
  in.families = {{3, 4}, {5, 6}, {7, 8}};
  in.covered = {9, 10};
  in.stable = true;
  in.impure = true;
  PureMulticover out = impure_to_pure(g, in, 1, 2, 1, 3, 2);

  Trace want;
  want.del(1);
  want.del(5);
  want.del(6);
  want.pivot(2, 7);
  want.pivot(0, 3);
  CHECK(out.trace == want);
  CHECK(out.graph == Graph::from_edges({0, 2, 3, 4, 7, 8, 9, 10}, {{0, 3},
                                                                   {2, 3},
                                                                   {2, 7},
                                                                   {3, 4},
                                                                   {4, 9},
                                                                   {4, 10},
                                                                   {7, 8},
                                                                   {8, 9},
                                                                   {8, 10},
                                                                   {9, 10}}));
  CHECK(out.cert.pure);
  CHECK(out.cert.xs == std::vector<int>{3, 7});
  CHECK(out.cert.families == std::vector<std::vector<int>>{{4}, {8}});
  CHECK(out.cert.covered == std::vector<int>{9, 10});
  CHECK(validate_structure(out.graph, out.cert, StructureKind::Multicover) ==
        "");
  CHECK(clique_number(out.graph) == 3);
  CHECK(clique_number(g) == 3);
}

TEST_CASE("impure_to_pure hands a heavy pattern vertex down a level") {
  Graph g = Graph::from_edges(
      iota_vec(0, 13),
      {{0, 3},  {0, 4},  {1, 5},  {1, 6},  {1, 12}, {2, 7},  {2, 8},
       {2, 13}, {0, 5},  {0, 6},  {0, 12}, {0, 7},  {0, 8},  {0, 13},
       {1, 7},  {1, 8},  {1, 13}, {4, 9},  {4, 10}, {4, 11}, {6, 9},
       {12, 10}, {12, 11}, {8, 10}, {13, 9}, {13, 11}, {3, 6}, {3, 12},
       {3, 8},  {3, 13}, {9, 10}, {9, 11}, {10, 11}});
  MulticoverCert in;
  in.xs = {0, 1, 2};
  in.families = {{3, 4}, {5, 6, 12}, {7, 8, 13}};
  in.covered = {9, 10, 11};
  in.stable = true;
  in.impure = true;
  PureMulticover out = impure_to_pure(g, in, 1, 2, 1, 4, 2);

  Trace want;
  want.del(0);
  want.del(3);
  want.del(4);
  want.del(5);
  want.del(7);
  want.pivot(2, 8);
  want.pivot(1, 6);
  want.del(1);
  want.del(2);
  want.del(9);
  want.del(10);
  CHECK(out.trace == want);
  CHECK(out.graph == Graph::from_edges({6, 8, 11, 12, 13}, {{6, 12},
                                                            {8, 13},
                                                            {11, 12},
                                                            {11, 13}}));
  CHECK(out.cert.pure);
  CHECK(out.cert.xs == std::vector<int>{6, 8});
  CHECK(out.cert.families == std::vector<std::vector<int>>{{12}, {13}});
  CHECK(out.cert.covered == std::vector<int>{11});
  CHECK(validate_structure(out.graph, out.cert, StructureKind::Multicover) ==
        "");
  CHECK(clique_number(out.graph) < clique_number(g));
}

TEST_CASE("impure_to_pure guards its entry conditions") {
  Graph g = impure2();
  MulticoverCert in = cert2(true, false, true);
  CHECK_THROWS_WITH_AS(impure_to_pure(g, cert2(true, false, false), 1, 1, 1, 3, 1),
                       "impure_to_pure: the certificate is not flagged impure",
                       Error);
  CHECK_THROWS_WITH_AS(impure_to_pure(g, cert2(false, false, true), 1, 1, 1, 3, 1),
                       "impure_to_pure: the multicover is not stable", Error);
  CHECK_THROWS_WITH_AS(
      impure_to_pure(g, in, 1, 3, 1, 3, 1),
      "impure_to_pure: the multicover length 2 is below ell 3", Error);
  CHECK_THROWS_WITH_AS(impure_to_pure(g, in, 1, 1, 1, 2, 1),
                       "impure_to_pure: the clique number beats omega", Error);
}

TEST_CASE("contract_odd_path_step pivots one stretch into an edge") {
  Graph p4 = path_graph(4);
  OddStepResult r = contract_odd_path_step(p4, 0, 1, 2, 3);
  Trace want;
  want.pivot(1, 2);
  want.del(1);
  want.del(2);
  CHECK(r.trace == want);
  CHECK(r.graph == Graph::from_edges({0, 3}, {{0, 3}}));

  Graph c6 = cycle_graph(6);
  OddStepResult s = contract_odd_path_step(c6, 0, 1, 2, 3);
  CHECK(s.graph == Graph::from_edges({0, 3, 4, 5}, {{0, 3},
                                                    {3, 4},
                                                    {4, 5},
                                                    {0, 5}}));

  CHECK_THROWS_WITH_AS(
      contract_odd_path_step(cycle_graph(4), 0, 1, 2, 3),
      "contract_odd_path_step: the stretch ends 0 and 3 are adjacent", Error);
  CHECK_THROWS_WITH_AS(
      contract_odd_path_step(complete_graph(4), 0, 1, 2, 3),
      "contract_odd_path_step: vertex 1 must have exactly the neighbours 0 and 2",
      Error);
}

TEST_CASE("repeated stretch contraction collapses a subdivided clique") {
  for (int n : {3, 4, 5}) {
    Graph g = subdivided_complete(n);
    Trace total;
    int next = n;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        int s1 = next++, s2 = next++;
        OddStepResult r = contract_odd_path_step(g, a, s1, s2, b);
        total.append(r.trace);
        g = r.graph;
      }
    CHECK(g == complete_graph(n));
    CHECK(apply_trace(subdivided_complete(n), total) == complete_graph(n));
  }

  // the nine-vertex host is small enough for the oracle to confirm
  OracleResult found = contains_vertex_minor(subdivided_complete(3),
                                             complete_graph(3));
  CHECK(found.contained);
}
