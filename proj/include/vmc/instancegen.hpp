#pragma once

#include <cstdint>

#include "vmc/bloated.hpp"
#include "vmc/graph.hpp"

namespace vmc {

// Stateless seed derivation so that instance i of a batch depends only on
// (seed, i), not on how many instances ran before it.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Uniform attachment tree on labels 0..n-1: vertex v picks its parent among
// 0..v-1.
Graph random_tree(int n, std::uint64_t seed);

// Attachment tree plus `extra` distinct chords, rejection-sampled.  Connected
// by construction.
Graph random_connected_graph(int n, int extra, std::uint64_t seed);

// Bloated tree built from a random skeleton tree: roughly a quarter of the
// skeleton vertices are blown up into big cliques large enough to absorb
// their skeleton edges one-per-member.  Labels are reassigned sequentially,
// the host is the decomposition itself (t = V), and the result is re-checked
// through analyze_bloated_tree before being returned.
BloatedTreeDecomp random_bloated_tree(int skeleton_n, std::uint64_t seed);

// A host whose interface passes every spacing rule, together with its tree.
struct ShrinkInstance {
  Graph graph;
  BloatedTreeDecomp tree;
};

// Spider-shaped shrinkable interface: `legs` paths radiate from a hub, and
// each leg carries at most one feature far enough from everything else to
// keep the spacing rules happy.  Features cover the whole elimination
// repertoire: big cliques partway along (with spare members to delete and
// pendant paths that force a proper elimination), big cliques capping a leg
// (burned back entirely during cleanup), and runs of attachment vertices
// fanned onto a private or shared outside vertex, with optional one-vertex
// gaps inside a run.  A few distractor vertices are sprinkled outside the
// tree, labels are scattered by a random permutation, and the result is
// re-classified before being returned.
ShrinkInstance random_shrinkable_tree(int legs, std::uint64_t seed);

// A host with one marked big-clique elimination: c sits in a clique whose
// other members may reach into a random background, d is c's one neighbour
// off the clique, and d sees nothing else of the clique.
struct CliqueEliminationInstance {
  Graph graph;
  int c = 0;
  int d = 0;
};

CliqueEliminationInstance random_clique_elimination_instance(
    int size_hint, std::uint64_t seed);

// A host with one marked fanning piece: an induced path whose interior
// vertices see nothing but their path neighbours and possibly the
// attachment c, wired into a random background through the path ends and c
// only.  The number of fanned vertices is sampled uniformly so the
// cut-producing multiples of three show up regularly.
struct FanningInstance {
  Graph graph;
  std::vector<int> path;
  int c = 0;
};

FanningInstance random_fanning_instance(int size_hint, std::uint64_t seed);

// An engineered host the radius-9 control pipeline can walk end to end with
// dims (1, paths) and kappa 1: one cover around an apex, `paths` marked
// stretches on a long outer road, private four-step routes from the apex to
// every road vertex, a clique glued to the road's far end to push its
// component's chromatic number over the budget, and a separate dense blob at
// the scan level so the threshold fires.  The chromatic bound the driver
// would otherwise certify fails on the blob, so the pipeline fires and the
// witness replay lands on the forbidden graph.
struct PlantedControl {
  Graph graph;
  int covers = 0;
  int paths = 0;
  long long kappa = 0;
};

PlantedControl planted_control_instance(int covers, int paths,
                                        std::uint64_t seed);

}  // namespace vmc
