#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmc/graph.hpp"

namespace vmc {

Graph complete_graph(int n);                    // labels 0..n-1
Graph complete_bipartite(int n, int m);         // left 0..n-1, right n..n+m-1
Graph path_n(int n);                            // 0-1-...-(n-1)
Graph cycle_n(int n);                           // n >= 3
Graph wheel_graph(int rim);                     // rim cycle 0..rim-1, hub rim

// Replace every edge by a path with k interior vertices.  Originals keep
// their labels; interior vertices take fresh labels above the maximum, edge
// by edge in edge_list order, walking from the smaller endpoint.
Graph subdivide_each_edge(const Graph& g, int k);

// The complete bipartite graph K_{n,m} with every edge subdivided once,
// plus an optional layer of "interference": extra edges from left vertices
// to subdivision vertices of strictly later rows.  Labels are fixed by
// convention (1-based i,j):
//   x(i) = i-1,  y(j) = n+j-1,  z(i,j) = n+m + (i-1)m + (j-1)
// so certificates written against one of these stay meaningful after
// deletions.
struct SubdividedBiclique {
  int n = 0;
  int m = 0;
  std::vector<std::pair<int, int>> interference;  // (x label, z label), sorted

  int x(int i) const;
  int y(int j) const;
  int z(int i, int j) const;

  bool interference_allowed(int a, int b) const;
  bool completely_interfered() const;

  Graph graph() const;
  bool matches(const Graph& g) const { return g == graph(); }

  std::string to_json() const;
  static SubdividedBiclique from_json(const std::string& text);
};

enum class InterferenceMode { None, Complete, Random };

// Random mode includes each allowed interference edge with probability 1/2,
// drawn from the seed alone, so the same (n, m, seed) names the same graph
// everywhere.
SubdividedBiclique make_biclique(int n, int m, InterferenceMode mode,
                                 std::uint64_t seed = 0);

struct FamilySpec {
  std::string name;   // the spec string that produced it
  Graph graph;
  std::optional<SubdividedBiclique> biclique;  // present for interfered families
};

// Mini-language for naming generated graphs on the command line:
//   Kn:4            complete on 4
//   Knm:3,4         complete bipartite
//   Pn:5  Cn:6  W:5 path, cycle, wheel
//   subdiv:FILE:k   graph6 file, each edge subdivided by k vertices
//   interfered:n,m:complete
//   interfered:n,m:random:SEED
FamilySpec parse_family(const std::string& spec);

}  // namespace vmc
