#pragma once

#include "vmc/solvers.hpp"
#include "vmc/trace.hpp"

namespace vmc {

struct OracleResult {
  bool contained = false;
  Trace trace;  // replaying it on the host yields a graph isomorphic to the pattern
};

// Breadth-first search over isomorphism classes, from the host toward the
// pattern.  Successors of a class are all single-vertex deletions followed by
// all local complementations (vertex-minor mode) or all pivots on edges
// (pivot-minor mode), so the first hit yields a shortest trace, and the fixed
// expansion order makes that trace deterministic.  Exponential in the host
// size; refuses hosts above the oracle limit.
OracleResult contains_vertex_minor(const Graph& host, const Graph& pattern,
                                   const SolverLimits& lim = {});
OracleResult contains_pivot_minor(const Graph& host, const Graph& pattern,
                                  const SolverLimits& lim = {});

}  // namespace vmc
