#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vmc/graph.hpp"
#include "vmc/solvers.hpp"
#include "vmc/trace.hpp"

namespace vmc {

// Chromatic sandwich for graphs too large to solve exactly: `lower` comes
// from the best greedy clique over every start vertex, `upper` from a greedy
// colouring in degeneracy order.  Small graphs are solved exactly instead and
// report lower == upper.  Callers comparing against a threshold treat the
// straddling case as undecided.
struct ChiRange {
  long long lower = 0;
  long long upper = 0;
  bool exact = false;

  bool proves_above(long long threshold) const { return lower > threshold; }
  bool proves_at_most(long long threshold) const { return upper <= threshold; }
};

ChiRange chi_range(const Graph& g, const SolverLimits& lim = SolverLimits{});

// An induced path P reaching from a start vertex to t, the only vertex of P
// with a neighbour in the surviving core, plus a stripe of path vertices kept
// pairwise far apart and far from the core.  The degenerate form (no steps
// left to take) has an empty path, t == -1, an empty stripe, and carries the
// chosen component in `core` alone.
struct LollipopCert {
  std::vector<int> path;    // in path order; may be empty
  std::vector<int> core;    // sorted; may be empty when the recursion bottoms out
  int t = -1;               // path end touching the core, -1 without a path
  std::vector<int> stripe;  // subset of the path, pairwise >= 8 apart, >= 8 from core
  bool chi_verified = true; // false when a chromatic claim was only sandwiched, not settled
};

// "" when every clause holds, otherwise the first broken clause:
// "unknown-vertex", "core-not-connected", "path-not-induced",
// "path-meets-core", "t-without-path", "t-not-a-path-end", "t-misses-core",
// "interior-sees-core", "stripe-off-path", "stripe-pair-too-close",
// "stripe-near-core".  Distances are recomputed by breadth-first search, the
// certificate's word is never taken for them.
std::string lollipop_violation(const Graph& g, const LollipopCert& cert);

// A family of induced paths pairwise at distance >= 3, each carrying the same
// number of marked vertices, all marks pairwise at distance >= 8.
struct DistantPaths {
  std::vector<std::vector<int>> paths;  // each in path order
  std::vector<std::vector<int>> marks;  // marks[j] lies on paths[j], in path order
  bool chi_verified = true;
};

// Clauses: "marks-shape", "unknown-vertex", "path-not-induced",
// "paths-too-close", "mark-off-path", "marks-too-close".
std::string distant_paths_violation(const Graph& g, const DistantPaths& cert);

// Four onion layers around a centre: level[0] induces a connected graph, each
// layer covers the next, and layers two apart never touch.
struct CoverLayers {
  std::array<std::vector<int>, 4> level;  // each sorted
};

// A stack of covers over a common covered set, the whole point being that
// later covers keep their inner three layers away from everything an earlier
// cover owns.  After paths are carved out of the covered set it is emptied
// and the paths take over, each dangling from one mark per cover.
struct LongCoverCert {
  std::vector<CoverLayers> covers;
  std::vector<int> covered;             // sorted; empty once paths exist
  std::vector<std::vector<int>> paths;  // each in path order
  std::vector<std::vector<int>> marks;  // marks[i][j]: outer-layer contact of path j in cover i
  bool chi_verified = true;

  std::string to_json() const;
};

// Layer clauses only: "unknown-vertex", "layers-overlap",
// "level0-disconnected", "cover-chain-broken", "layer-skip-edge",
// "covers-overlap", "covers-touch", "covered-overlaps-cover",
// "covered-uncovered", "covered-touches-inner-layer".  An empty covered set
// passes vacuously.
std::string long_cover_violation(const Graph& g, const LongCoverCert& cert);

// Everything long_cover_violation checks plus the dangling-path discipline:
// "paths-overlap", "path-not-induced", "paths-touch", "marks-shape",
// "mark-off-layer", "marks-too-close" (pairwise >= 6 in g), and
// "dangling-broken" when some path's neighbourhood inside the union of
// covers and paths is not exactly its mark column.
std::string dangling_violation(const Graph& g, const LongCoverCert& cert);

enum class FrameFlavor { Frame, Trimmed, Pure };

// The skeleton left after contracting every dangling path to a single hub:
// q anti-complete trees, one mark per (tree, hub) pair glued to its tree
// through a private degree-2 anchor, and hubs whose entire neighbourhood is
// their mark column.  Trimmed frames additionally make each tree-plus-marks
// a bloated tree whose leaves are exactly the marks, features spaced >= 4
// apart; pure frames pass the full shrinkability interface on top.
struct FrameCert {
  Graph graph;
  std::vector<std::vector<int>> trees;  // each sorted
  std::vector<std::vector<int>> marks;  // marks[i][j]: tree i's contact of hub j
  std::vector<int> hubs;
  FrameFlavor flavor = FrameFlavor::Frame;

  std::string to_json() const;
};

// Validates the clauses the flavor claims.  Base clauses:
// "frame-shape", "frame-not-a-partition", "tree-disconnected",
// "trees-touch", "mark-anchor-count", "anchor-degree", "mark-forward-edge",
// "hub-neighbourhood", "marks-too-close" (pairwise >= 6 with hubs removed).
// Trimmed adds "tree-not-bloated", "stray-leaf", "features-too-close"; pure
// adds "tree-not-shrinkable".
std::string frame_violation(const FrameCert& cert);

// A subdivided biclique with one-directional interference: side vertices xs,
// hub side ys, subdivision vertices zs[i][j] between xs[i] and ys[j], and the
// only other edges running from some xs[k] into zs[i][j] with k < i.
// `external_cut` records the edges the star contractions dropped on the way
// here.
struct InterferedCert {
  Graph graph;
  std::vector<int> xs;
  std::vector<int> ys;
  std::vector<std::vector<int>> zs;  // zs[i][j] joins xs[i] to ys[j]
  std::vector<std::pair<int, int>> external_cut;

  std::string to_json() const;
};

// Clauses: "shape", "unknown-vertex", "not-a-partition", "spoke-missing",
// "hub-neighbourhood", "stray-edge", "canonical-mismatch" (relabelling must
// reproduce the model biclique exactly).
std::string interfered_violation(const InterferedCert& cert);

// Outcome of the radius-9 control pipeline: either the chromatic bound
// 2^q * q * h * kappa stands (ChiBound), or the pipeline fired and produced
// a trace whose replay on the input contains the forbidden graph
// (MinorWitness).  `bound_fits` goes false when the bound arithmetic would
// overflow, in which case `bound` is meaningless but the outcome stands.
struct ControlCertificate {
  enum class Outcome { ChiBound, MinorWitness };

  Outcome outcome = Outcome::ChiBound;
  int rho = 9;
  long long kappa = 0;
  bool kappa_verified = false;  // true when the radius-9 value was computed, not supplied
  long long cover_count = 0;    // q
  long long path_count = 0;     // h
  long long bound = 0;
  bool bound_fits = false;
  Graph target;                 // MinorWitness only
  Trace witness;                // MinorWitness only

  std::string to_json() const;
};

// Builds a lollipop in G[C]: a path entered at the smallest vertex of C,
// extended k times, each extension planting one stripe vertex and pushing
// into a component whose chromatic number still clears the next budget.
// Budgets decrease by kappa per extension starting from c + k*kappa; the
// claim chi(C) >= c + k*kappa is checked and refuted with an error, while
// undecidable component choices only clear chi_verified.  k == 0 returns the
// degenerate certificate.
LollipopCert find_lollipop(const Graph& g, const std::vector<int>& C, long long c,
                           int k, long long kappa,
                           const SolverLimits& lim = SolverLimits{});

// Repeatedly carves a lollipop out of C, selects q marks of minimal span on
// its path, shrinks the path to the marked stretch, and recedes to a
// component far from the marks, h times over.  Budgets follow
// q * (h - level) * kappa.
DistantPaths find_distant_paths(const Graph& g, const std::vector<int>& C, int q,
                                int h, long long kappa,
                                const SolverLimits& lim = SolverLimits{});

// Stacks q covers by levelling: from the smallest vertex of the most
// chromatic component, scan outward for the first level whose chromatic
// number beats 2^(q-1) * max(c, kappa), recurse inside that ball with the
// threshold halved, and lay this cover's four layers just under the scan
// level.  Levels below 4 refuse (the scan would cut into the layers).  The
// recursion bottom returns no covers and the surviving component as covered.
LongCoverCert find_long_q_cover(const Graph& g, int q, long long c,
                                long long kappa,
                                const SolverLimits& lim = SolverLimits{});

// Full first act: build q covers with budget q*h*kappa, thread h distant
// paths through the covered set, pick each path's mark in every cover's
// outer layer, prune the outer layers down to exactly those marks, and empty
// the covered set.  The result passes dangling_violation.
LongCoverCert attach_dangling_paths(const Graph& g, int q, int h,
                                    long long kappa,
                                    const SolverLimits& lim = SolverLimits{});

struct ParityResult {
  Graph graph;
  Trace trace;
  std::vector<int> path;  // surviving path, still dangling from X, every count odd
};

// Makes every attachment count odd.  The path must dangle from X exactly
// (N(V(P)) == X), X stable, and the vertices of X with even attachment
// pairwise at distance >= 3.  Each such vertex loses or keeps path vertices
// through one deletion (path end) or one local complementation plus deletion
// (interior), flipping only its own parity.
ParityResult fix_parity(const Graph& g, const std::vector<int>& path,
                        const std::vector<int>& X);

struct ContractPathResult {
  std::vector<int> kept;  // Y: attachment vertices surviving the collapse
  Graph graph;
  Trace trace;
  int hub = -1;           // the single vertex the path contracted to
};

// Collapses a dangling path to one vertex adjacent to a stable or complete
// subset Y of its attachment set, |Y| >= q, deleting X - Y.  Requires
// |X| >= R(q, q) so one of the two shapes must appear.  Even attachment
// counts are tolerated only when X is spacious (pairwise >= 6), in which
// case the parity is fixed first.
ContractPathResult contract_dangling_path(const Graph& g,
                                          const std::vector<int>& path,
                                          const std::vector<int>& X, int q);

struct FrameExtraction {
  FrameCert cert;  // cert.graph is the frame
  Trace trace;     // replay on the input graph gives cert.graph exactly
};

// Second act: restrict a dangling cover certificate to the skeleton (marks,
// their anchors two layers deep, the inner layers, the paths), then contract
// the paths one by one, each stage keeping the covers whose marks survived
// and deleting the rest.  Ramsey losses compound, so q covers at h paths
// need the iterated Ramsey chain q_0 = q, q_{j+1} = R(q_j, q_j) worth of
// covers to start from.  The result's flavor reports the strongest level the
// frame actually passes.
FrameExtraction extract_frame(const Graph& g, const LongCoverCert& cover,
                              int q, int h);

// Third act: a trimmed frame with enough trees (at least q * (3h - 5)) is
// thinned to q trees whose leaves stay out of each other's way, by colouring
// the interference pattern between trees and keeping one colour class.
// Needs h >= 2; pure frames pass through unchanged.  The discarded trees are
// removed from the graph wholesale; no trace is produced.
FrameCert purify_frame(const FrameCert& f, int q, int h);

struct InterferedResult {
  InterferedCert cert;
  Trace trace;  // replay on the frame gives cert.graph exactly
};

// Final act: star-contract each tree of a pure frame in index order.  Tree i
// collapses to a centre adjacent to its marks; hubs keep their columns; the
// leftover edges slope strictly downward, which is exactly the interference
// discipline.
InterferedResult frame_to_interfered(const FrameCert& f);

struct ControlParams {
  // Cover and path counts for the pipeline.  Defaults derive from the
  // forbidden graph's universal-embedding parameters, which are astronomical
  // for all but trivial targets; instances built to fire want these pinned.
  std::optional<std::pair<long long, long long>> dims;

  // Radius-9 local chromatic bound to take on faith.  Without it the driver
  // computes the exact value, which limits input size sharply.
  std::optional<long long> kappa;
};

// The whole story: given a graph and a forbidden graph, either certify
// chi(g) <= 2^q * q * h * kappa for the radius-9 local bound kappa, or run
// the pipeline (covers, paths, frame, purification, interference, universal
// embedding or direct oracle) and emit a replayable trace containing the
// forbidden graph.  The bound outcome is the default; the pipeline only
// fires when the chromatic lower bound provably clears the threshold, and a
// fired pipeline either finishes or reports the stage that could not.
ControlCertificate nine_control_driver(const Graph& g, const Graph& forbidden,
                                       const ControlParams& params = {},
                                       const SolverLimits& lim = SolverLimits{});

}  // namespace vmc
