#pragma once

#include <string>
#include <vector>

#include "vmc/graph.hpp"
#include "vmc/solvers.hpp"
#include "vmc/trace.hpp"

namespace vmc {

// An ordered set X together with one family per member and a covered set C.
// `xs` carries the total order: earlier position means earlier in the order,
// and every clause that talks about "earlier" and "later" reads it that way.
// families[i] lives inside the neighbourhood of xs[i] and covers all of C.
// The flags are claims, each checked only when set: `stable` promises every
// family is a stable set, `pure` promises no member of X sees any other
// member's family, `impure` promises every member is complete to every later
// family.  A cover can be neither pure nor impure; it cannot silently be
// both unless the families involved are empty.
//
// centres/crests, when non-empty, add a crest: centres[i] is a hub whose
// private contact vertex crests[i][t] hangs between it and xs[t].  The crest
// clauses live under StructureKind::Crested below.
struct MulticoverCert {
  std::vector<int> xs;                      // in order, not sorted
  std::vector<std::vector<int>> families;   // families[i] sorted
  std::vector<int> covered;                 // sorted
  bool stable = false;
  bool pure = false;
  bool impure = false;
  std::vector<int> centres;                 // crest hubs; empty without a crest
  std::vector<std::vector<int>> crests;     // crests[i][t] contacts xs[t]
  bool chi_verified = true;  // false when a chromatic claim was only sandwiched
  std::string to_json() const;
};

// Which clause set validate_structure applies.
enum class StructureKind { Multicover, Crested, Oddity };

// "" when every clause of the requested kind holds, otherwise the first
// broken clause.
//
// Multicover: "families-shape", "unknown-vertex", "roles-overlap",
// "family-off-neighbourhood", "x-not-stable", "x-touches-covered",
// "family-misses-covered", "later-x-sees-earlier-family", then per flag
// "family-not-stable", "earlier-x-sees-later-family",
// "impure-attachment-missing".
//
// Crested: the multicover clauses with purity enforced whether or not the
// flag is set, then "crest-shape", "crest-not-distinct",
// "crest-outside-roles", "centre-crest-mismatch", "crest-anchor-mismatch",
// "centre-touches-roles", "centres-not-stable", "crests-not-stable".
//
// Oddity: judges `path` against the certificate's role sets without
// re-judging the certificate itself, so a broken cover can still name what
// is wrong with a candidate path.  Clauses: "unknown-vertex",
// "path-not-induced", "length-not-3-or-5", "path-ends-off-x",
// "x-meets-path", "path-off-roles".
std::string validate_structure(const Graph& g, const MulticoverCert& cert,
                               StructureKind kind,
                               const std::vector<int>& path = {});

// Grows a stable multicover of length ell by recursing through heavy 2-balls:
// pick the first vertex whose 2-ball still carries the running chromatic
// budget, colour its neighbourhood, keep the first colour class whose
// covered reach stays heavy, and recurse inside that reach.  The new vertex
// enters the order as the maximum.  ell == 0 bottoms out at the first
// component still proving chi >= c.  Chromatic claims the solvers cannot
// settle are carried with chi_verified cleared; claims they refute raise
// Error, as does a neighbourhood whose exact chromatic number beats tau or a
// clique in g beating omega.
MulticoverCert find_stable_multicover(const Graph& g, int ell, long long c,
                                      long long tau, int omega,
                                      const SolverLimits& lim = {});

// Forces a stable multicover of length >= R(m,m) into a pure or impure one
// of length m.  Every covered vertex picks its minimum-label neighbour in
// each family as representative; the covered set splits by the adjacency
// pattern those representatives throw back onto earlier members of X, the
// heaviest pattern class survives, and a stable set or clique of size m in
// the pattern graph decides pure versus impure.  Families shrink to the
// representatives the surviving class actually uses.
MulticoverCert refine_multicover(const Graph& g, const MulticoverCert& cert,
                                 int m, const SolverLimits& lim = {});

struct PureMulticover {
  Graph graph;
  MulticoverCert cert;
  Trace trace;
};

// Turns a stable impure multicover into a stable pure one on a pivot-minor.
// ell == 1 passes the order's first member straight through.  With
// omega_star == 1 the families form one stable set: pivot each member of X
// onto its minimum-label anchor from the top of the order down, then delete
// X and everything the anchors cover; the anchors inherit the families.  The
// same surgery is rebuilt edge by edge and compared against the pivot replay
// before anything is returned.  With omega_star > 1 the representative
// pattern graphs either hand one member enough later neighbours to recurse
// on their representative families at omega_star - 1, or they are sparse
// enough to colour, leaving a stable set of anchors to pivot onto directly.
// Chromatic shortfalls the solvers can prove raise Error; undecided ones
// clear chi_verified.  The clique number never grows, and both that and the
// surgery agreement are asserted outright.
PureMulticover impure_to_pure(const Graph& g, const MulticoverCert& cert,
                              long long c, int ell, long long tau, int omega,
                              int omega_star, const SolverLimits& lim = {});

struct OddStepResult {
  Graph graph;
  Trace trace;
};

// Folds the chord-free stretch u-v-w-x (v and w of degree exactly two, u and
// x non-adjacent) down to its ends: pivot vw, delete both interior vertices,
// and the stretch's whole role lands on x.  The replay is checked against
// contracting vw and wx directly, with the merged class relabelled to x.
OddStepResult contract_odd_path_step(const Graph& g, int u, int v, int w,
                                     int x);

}  // namespace vmc
