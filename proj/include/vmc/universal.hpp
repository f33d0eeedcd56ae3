#pragma once

#include <map>

#include "vmc/families.hpp"
#include "vmc/ramsey.hpp"
#include "vmc/trace.hpp"

namespace vmc {

// Role labels of a clean subdivided biclique living on arbitrary labels:
// zs[i][j] is the subdivision vertex between xs[i] and ys[j].  This is what
// lets a host extracted out of a bigger graph feed straight into the
// embedding construction below without relabeling anything.
struct BicliqueRoles {
  std::vector<int> xs;
  std::vector<int> ys;
  std::vector<std::vector<int>> zs;
};

struct EmbedStats {
  long long trim_deletions = 0;     // surplus rows and trees dropped up front
  long long setup_deletions = 0;    // spare subdivision vertices dropped per tree
  long long setup_smoothings = 0;   // the two kept subdivision vertices per tree
  long long edge_smoothings = 0;    // one per edge of the target
  long long nonedge_deletions = 0;  // one per non-edge of the target
};

struct EmbedResult {
  Trace trace;
  std::map<int, int> correspondence;  // target vertex -> surviving host vertex
  EmbedStats stats;
};

// Realize the target inside a clean host with at least n rows and C(n,2)
// trees: surplus structure is deleted, each kept tree collapses to a single
// midpoint sitting on one pair of rows, and the midpoint is smoothed (edge)
// or deleted (non-edge).  The replay equals the target exactly under the
// returned correspondence.
EmbedResult embed_on(const BicliqueRoles& host, const Graph& target);

struct UniversalEmbedResult {
  SubdividedBiclique host;  // K^1_{n, C(n,2)}, no interference
  Trace trace;
  std::map<int, int> correspondence;
  EmbedStats stats;
};

// embed_on against the canonical universal host for the target's size.
UniversalEmbedResult embed_universal(const Graph& target);

struct ExtractResult {
  Trace trace;
  bool via_clique = false;  // which half of the Ramsey split fired
  std::vector<int> rows;    // chosen row indices (1-based), ascending
  std::vector<int> trees;   // chosen tree indices (1-based), ascending
  Graph result;             // the replayed graph, a clean K^1_{n,n}
  BicliqueRoles roles;      // role labels inside `result`
};

// Pull a clean K^1_{n,n} pivot-minor out of an interfered host: group trees
// by their interference pattern, pick rows on which the shared pattern is
// stable (keep an induced copy) or complete (pivot the interference away
// along a sacrificial tree).  Dimensions below the pigeonhole thresholds
// are refused up front.
ExtractResult extract_knn(const SubdividedBiclique& ic, int n);

struct UniversalParameters {
  long long target_side;  // N: both sides of the biclique the target embeds in
  RamseyValue q;          // rows needed before extraction, exactness included
  long long h_exponent;   // trees needed: 2^h_exponent * h_factor
  long long h_factor;
  bool h_fits;            // whole tree count representable
  long long h_count;      // valid only when h_fits
};

// Dimensions (q, h) such that every interfered K^1_{q,h} contains the given
// graph as a vertex-minor, by chaining the extraction thresholds with the
// universal host size.  Graphs on at most one vertex need only (1, 1).
UniversalParameters universal_parameters(const Graph& target);

struct ChainResult {
  Trace trace;
  std::map<int, int> correspondence;  // target vertex -> surviving host vertex
};

// The full pipeline on an interfered host: extract a clean K^1_{N,N} for
// N = max(n, C(n,2)), then embed the target in it.  Preconditions are the
// extraction thresholds at N.
ChainResult universal_chain(const SubdividedBiclique& ic, const Graph& target);

}  // namespace vmc
