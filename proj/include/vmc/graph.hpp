#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vmc {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Undirected simple graph with stable integer vertex labels.  Deleting or
// contracting vertices never renumbers the survivors; that stability is what
// makes recorded operation sequences replayable and certificates meaningful
// after a long chain of transformations.
//
// Storage is a dense symmetric bit matrix over the current vertex set, which
// is the right trade-off here: the graphs are small (tens to a few hundred
// vertices) but get hammered with adjacency queries and neighbourhood
// complementations.
class Graph {
 public:
  Graph() = default;

  // Explicit vertex set plus edge list.  Rejects duplicate vertices, loops,
  // duplicate edges and edges touching unknown vertices: every one of those
  // has turned out to be a generator bug, not a legitimate input.
  static Graph from_edges(std::vector<int> vertices,
                          const std::vector<std::pair<int, int>>& edges);

  int n() const { return static_cast<int>(verts_.size()); }
  int m() const { return m_; }

  // Sorted labels.
  const std::vector<int>& vertices() const { return verts_; }

  bool has_vertex(int v) const { return idx(v) >= 0; }
  bool adjacent(int a, int b) const;
  std::vector<int> neighbors(int v) const;  // sorted
  int degree(int v) const;
  std::vector<std::pair<int, int>> edge_list() const;  // each a < b, lexicographic

  Graph plus_edge(int a, int b) const;
  Graph minus_edge(int a, int b) const;
  Graph minus_vertex(int v) const;
  Graph minus_vertices(const std::vector<int>& vs) const;
  Graph induced(const std::vector<int>& keep) const;

  // Complement the induced subgraph on s; everything else is untouched.
  Graph complement_on(const std::vector<int>& s) const;

  // Toggle every pair with one end in a and the other in b.  The two sets
  // must be disjoint subsets of the vertex set.
  Graph complement_between(const std::vector<int>& a, const std::vector<int>& b) const;

  // Label-sensitive equality: same labels, same adjacency.
  bool operator==(const Graph& o) const { return verts_ == o.verts_ && bits_ == o.bits_; }
  bool operator!=(const Graph& o) const { return !(*this == o); }

  std::size_t hash() const;

 private:
  int idx(int label) const;  // -1 when the label is absent
  int idx_checked(int label, const char* who) const;
  bool bit(int i, int j) const {
    std::size_t p = static_cast<std::size_t>(i) * verts_.size() + j;
    return (bits_[p >> 6] >> (p & 63)) & 1u;
  }
  void set_bit(int i, int j) {
    std::size_t p = static_cast<std::size_t>(i) * verts_.size() + j;
    bits_[p >> 6] |= std::uint64_t(1) << (p & 63);
  }
  void toggle_bit(int i, int j) {
    std::size_t p = static_cast<std::size_t>(i) * verts_.size() + j;
    bits_[p >> 6] ^= std::uint64_t(1) << (p & 63);
  }

  std::vector<int> verts_;           // sorted labels
  std::vector<std::uint64_t> bits_;  // n*n adjacency bits, row-major over positions
  int m_ = 0;
};

struct GraphHash {
  std::size_t operator()(const Graph& g) const { return g.hash(); }
};

// Sorted-vector set algebra.  Vertex sets flow through every structural check
// in sorted form, so these stay cheap and allocation-light.
std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> sorted_minus(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> sorted_intersect(const std::vector<int>& a, const std::vector<int>& b);
bool sorted_contains(const std::vector<int>& a, int v);

// Distances from source; vertices in other components are simply absent.
std::unordered_map<int, int> bfs_distances(const Graph& g, int source);
int distance(const Graph& g, int a, int b);  // -1 when disconnected

std::vector<int> ball(const Graph& g, int v, int radius);    // distance <= radius, sorted
std::vector<int> sphere(const Graph& g, int v, int radius);  // distance == radius, sorted

std::vector<std::vector<int>> connected_components(const Graph& g);  // each sorted, by min label
bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

bool is_stable_set(const Graph& g, const std::vector<int>& s);
bool is_clique(const Graph& g, const std::vector<int>& s);
bool anticomplete(const Graph& g, const std::vector<int>& a, const std::vector<int>& b);
bool complete_between(const Graph& g, const std::vector<int>& a, const std::vector<int>& b);

struct CutStructure {
  std::vector<int> cut_vertices;               // sorted
  std::vector<std::pair<int, int>> bridges;    // each a < b, lexicographic
};
CutStructure cut_structure(const Graph& g);

// Contract each listed edge; a merged class survives under its minimum label.
// Listing a non-edge is an error naming the offending pair.
Graph contract_edges(const Graph& g, const std::vector<std::pair<int, int>>& edges);

struct Contraction {
  Graph graph;
  std::unordered_map<int, int> survivor;  // every original label -> its class survivor
};
Contraction contract_edges_mapped(const Graph& g,
                                  const std::vector<std::pair<int, int>>& edges);

// Rename vertices: labels present in new_labels move, everything else stays.
// Collisions after the move are an error.
Graph relabel(const Graph& g, const std::unordered_map<int, int>& new_labels);

}  // namespace vmc
