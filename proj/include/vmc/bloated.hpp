#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vmc/graph.hpp"

namespace vmc {

// A tree-like induced subgraph: maximal cliques of size >= 3 ("big cliques")
// may stand in for tree vertices, but each edge belongs to at most one of
// them, clique vertices cannot reach past their clique's size, and collapsing
// every big clique must leave an honest tree.
//
// The derived sets follow the host graph, not just G[t]: `attach` holds the
// non-leaf t-vertices that still see something outside t, which is what later
// stages need to know when they start cutting the tree free.
struct BloatedTreeDecomp {
  Graph host;
  std::vector<int> t;                          // sorted
  std::vector<int> leaves;                     // degree <= 1 in G[t]
  std::vector<int> branching;                  // degree >= 3 in G[t], in no triangle
  std::vector<std::vector<int>> big_cliques;   // each sorted, ordered by first member
  std::vector<int> attach;                     // non-leaves with a neighbour outside t

  Graph tree_graph() const { return host.induced(t); }
  std::string to_json() const;                 // {"B":..,"L":..,"T":..,"Z":..,"cliques":..}
};

// `violated` names the first broken clause when G[t] fails the recognition:
// "edge-in-two-big-cliques", "degree-exceeds-clique-size", or
// "contraction-not-a-tree".
struct BloatedAnalysis {
  std::optional<BloatedTreeDecomp> decomp;
  std::string violated;
};

BloatedAnalysis analyze_bloated_tree(const Graph& g, const std::vector<int>& t);

// Greedy inclusion-maximal growth from a seed vertex, candidates scanned in
// ascending label order.  The guarantee is maximality, not size.
BloatedTreeDecomp grow_maximal_bloated_tree(const Graph& g, int seed);

// Shrink g around the marked vertices s: repeatedly delete unmarked non-cut
// vertices and suppress unmarked degree-2 vertices whose edges are both
// bridges, until neither applies.
Graph distinguished_reduction(const Graph& g, const std::vector<int>& s);

// Reduction, then maximal growth seeded at the smallest surviving s-vertex,
// then expansion of the suppressed paths back into g.  The result is an
// induced bloated tree of g carrying at least 1/16 of its vertices from s.
BloatedTreeDecomp find_distinguished_bloated_tree(const Graph& g,
                                                  const std::vector<int>& s);

// Subtree of `tree` maximizing the number of contained tree-leaves subject to
// no two adjacent branching vertices.  Vertices listed in `forced` count as
// branching no matter their subtree degree (and never as leaves); the pruning
// pipeline uses this for collapsed cliques, whose expansions must keep their
// distance regardless of how the subtree touches them.
std::vector<int> branching_subtree(const Graph& tree,
                                   const std::vector<int>& forced = {});

// Per-vertex record of the two-quantity tree DP behind branching_subtree,
// rooted at the smallest label.  f0 bounds the best leaf haul when the parent
// promises not to branch, f1 when it might; their product covers every
// counted leaf below the vertex, which is where the sqrt guarantee comes from.
struct BranchingDpNode {
  int vertex;
  long long f0, f1, leaves_below;
};

std::vector<BranchingDpNode> branching_certificate(const Graph& tree);

// Leaf-rich induced sub-bloated-tree whose branching vertices and big cliques
// are pairwise at distance >= 4: collapse cliques, run branching_subtree,
// suppress degree-2 vertices, run it again, then expand everything back.
// Keeps at least ceil(l^(1/4)) of the input decomposition's leaves.
BloatedTreeDecomp prune_bloated_tree(const BloatedTreeDecomp& bt);

// Full pipeline for degree-1 marks: distinguished tree, trim to s-leaves,
// prune.  Returns nullopt when the surviving leaf count lands below ell; the
// returned tree's leaves number >= ell and all lie in s.
std::optional<BloatedTreeDecomp> find_spread_bloated_tree(const Graph& g,
                                                          const std::vector<int>& s,
                                                          int ell);

}  // namespace vmc
