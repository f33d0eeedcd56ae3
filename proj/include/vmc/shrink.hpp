#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vmc/bloated.hpp"
#include "vmc/graph.hpp"
#include "vmc/trace.hpp"

namespace vmc {

// Where a bloated tree stands on the road from tree-shaped to a single star.
// Shrinkable trees keep their attachments, branchings and cliques spaced far
// enough apart for the eliminations below to go through; shrinking trees are
// plain induced trees whose branching and attachment vertices form a stable
// set, which is all the star contraction needs.  Everything else is Neither.
enum class ShrinkClass { Shrinkable, Shrinking, Neither };

struct ShrinkReport {
  ShrinkClass classification = ShrinkClass::Neither;
  std::string violated;    // first failed clause, filled only for Neither
  std::vector<int> leaves;
  std::vector<int> branching;
  std::vector<int> attach;
  std::vector<std::pair<int, int>> external_cut;  // tree side first; ops only
  std::string to_json() const;
};

// Recomputes the decomposition's sets against g and checks the five spacing
// clauses, distances measured inside G[t] (distance to a clique meaning the
// nearest member):
//   1. every attach vertex sees exactly one vertex outside t
//      ("multi-attachment")
//   2. attach vertices with different outside neighbours sit at distance
//      >= 4 ("close-distinct-attachments")
//   3. no branching or attach vertex within distance 3 of a big clique
//      ("object-near-clique")
//   4. no attach vertex within distance 3 of a branching vertex
//      ("z-near-branching")
//   5. every leaf at distance >= 2 from each big clique and >= 3 from each
//      attach vertex ("leaf-near-clique-or-z")
// All five holding means Shrinkable, even when the tree is already stable.
// Otherwise a clique-free tree whose branching+attach set is stable is
// Shrinking.  Anything else is Neither, `violated` naming the first clause
// that broke (or the bloated-tree clause when t is not one).
ShrinkReport classify_interface(const Graph& g, const BloatedTreeDecomp& bt);

struct EliminationResult {
  Graph graph;
  Trace trace;
};

// Dissolves one big clique into a fan.  c must lie in a clique C of size
// >= 3 with degree exactly |C|, so its one neighbour d outside C is unique,
// and d must not see the rest of C.  The result equals (G - E(C-c)) / cd
// with d keeping its label, realized by the trace [lc c, del c]; the two
// computations are compared on every call.
EliminationResult eliminate_big_clique(const Graph& g, int c, int d);

struct FanningResult {
  Graph graph;
  Trace trace;
  bool fan_cut = false;                        // second variant taken
  std::vector<std::pair<int, int>> cut_edges;  // (v_i, c) edges of g removed
};

// Collapses an induced path a v0 ... vk b whose interior fans onto a single
// outside vertex c: c sees none of a, v0, b, and the v_i have no neighbours
// beyond the path and c.  The whole fan contracts to one path vertex.  When
// the number of c-neighbours among the v_i is a positive multiple of three
// the fan edges are deleted rather than inherited (fan_cut, with the removed
// edges listed); either way the result is checked against the corresponding
// contraction formula.  `path` lists a, v0 ... vk, b in order.
FanningResult eliminate_fanning(const Graph& g, const std::vector<int>& path,
                                int c);

struct ShrinkingResult {
  Graph graph;
  BloatedTreeDecomp tree;
  Trace trace;
  std::vector<std::pair<int, int>> external_cut;  // fan edges of g deleted
};

// Turns a shrinkable tree into a shrinking one: deletes clique vertices that
// look only inward, dissolves every big clique, then collapses runs of
// adjacent same-attachment vertices.  The leaf set survives unchanged, the
// graph outside the tree interior does not move, and the interior's outside
// neighbourhood never grows.
ShrinkingResult shrinkable_to_shrinking(const Graph& g,
                                        const BloatedTreeDecomp& bt);

struct StarCertificate {
  int center = -1;  // -1 when the tree had no interior to contract
  std::vector<int> leaves;
  std::vector<std::pair<int, int>> external_cut;  // E*: tree side first
  std::string to_json() const;
};

struct StarResult {
  Graph graph;
  StarCertificate cert;
  Trace trace;
};

// Contracts a shrinkable tree down to a star on its leaf set.  The returned
// graph equals (G - E*) / E(T-L) for the certificate's edge set E*, every
// member of which runs from the tree interior to the outside; the formula is
// recomputed and compared on every call, with the contraction survivor
// renamed to the vertex the trace keeps.
StarResult contract_to_star(const Graph& g, const BloatedTreeDecomp& bt);

}  // namespace vmc
