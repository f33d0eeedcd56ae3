#include "vmc/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace vmc {

namespace {

std::string pair_str(int a, int b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

Graph Graph::from_edges(std::vector<int> vertices,
                        const std::vector<std::pair<int, int>>& edges) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw Error("from_edges: duplicate vertex label");

  Graph g;
  g.verts_ = std::move(vertices);
  std::size_t nbits = g.verts_.size() * g.verts_.size();
  g.bits_.assign((nbits + 63) / 64, 0);
  for (auto [a, b] : edges) {
    if (a == b) throw Error("from_edges: loop at vertex " + std::to_string(a));
    int i = g.idx(a), j = g.idx(b);
    if (i < 0) throw Error("from_edges: edge endpoint " + std::to_string(a) + " is not a vertex");
    if (j < 0) throw Error("from_edges: edge endpoint " + std::to_string(b) + " is not a vertex");
    if (g.bit(i, j)) throw Error("from_edges: duplicate edge " + pair_str(a, b));
    g.set_bit(i, j);
    g.set_bit(j, i);
    ++g.m_;
  }
  return g;
}

int Graph::idx(int label) const {
  auto it = std::lower_bound(verts_.begin(), verts_.end(), label);
  if (it == verts_.end() || *it != label) return -1;
  return static_cast<int>(it - verts_.begin());
}

int Graph::idx_checked(int label, const char* who) const {
  int i = idx(label);
  if (i < 0) throw Error(std::string(who) + ": no vertex " + std::to_string(label));
  return i;
}

bool Graph::adjacent(int a, int b) const {
  int i = idx_checked(a, "adjacent"), j = idx_checked(b, "adjacent");
  if (i == j) return false;
  return bit(i, j);
}

std::vector<int> Graph::neighbors(int v) const {
  int i = idx_checked(v, "neighbors");
  std::vector<int> out;
  for (int j = 0; j < n(); ++j)
    if (bit(i, j)) out.push_back(verts_[j]);
  return out;
}

int Graph::degree(int v) const {
  int i = idx_checked(v, "degree");
  int d = 0;
  for (int j = 0; j < n(); ++j) d += bit(i, j);
  return d;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (bit(i, j)) out.emplace_back(verts_[i], verts_[j]);
  return out;
}

Graph Graph::plus_edge(int a, int b) const {
  Graph g = *this;
  int i = g.idx_checked(a, "plus_edge"), j = g.idx_checked(b, "plus_edge");
  if (i == j) throw Error("plus_edge: loop at vertex " + std::to_string(a));
  if (g.bit(i, j)) throw Error("plus_edge: edge " + pair_str(a, b) + " already present");
  g.set_bit(i, j);
  g.set_bit(j, i);
  ++g.m_;
  return g;
}

Graph Graph::minus_edge(int a, int b) const {
  Graph g = *this;
  int i = g.idx_checked(a, "minus_edge"), j = g.idx_checked(b, "minus_edge");
  if (i == j || !g.bit(i, j)) throw Error("minus_edge: " + pair_str(a, b) + " is not an edge");
  g.toggle_bit(i, j);
  g.toggle_bit(j, i);
  --g.m_;
  return g;
}

Graph Graph::minus_vertex(int v) const { return minus_vertices({v}); }

Graph Graph::minus_vertices(const std::vector<int>& vs) const {
  std::vector<int> drop = vs;
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (int v : drop) idx_checked(v, "minus_vertices");
  return induced(sorted_minus(verts_, drop));
}

Graph Graph::induced(const std::vector<int>& keep) const {
  std::vector<int> ks = keep;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  Graph g;
  g.verts_ = ks;
  std::size_t nn = ks.size();
  std::vector<int> old_idx(nn);
  for (std::size_t i = 0; i < nn; ++i)
    old_idx[i] = idx_checked(ks[i], "induced");
  g.bits_.assign((nn * nn + 63) / 64, 0);
  for (std::size_t i = 0; i < nn; ++i) {
    int oi = old_idx[i];
    for (std::size_t j = i + 1; j < nn; ++j) {
      int oj = old_idx[j];
      if (bit(oi, oj)) {
        g.set_bit(static_cast<int>(i), static_cast<int>(j));
        g.set_bit(static_cast<int>(j), static_cast<int>(i));
        ++g.m_;
      }
    }
  }
  return g;
}

Graph Graph::complement_on(const std::vector<int>& s) const {
  Graph g = *this;
  std::vector<int> is;
  is.reserve(s.size());
  for (int v : s) is.push_back(g.idx_checked(v, "complement_on"));
  std::sort(is.begin(), is.end());
  if (std::adjacent_find(is.begin(), is.end()) != is.end())
    throw Error("complement_on: duplicate vertex in set");
  for (std::size_t a = 0; a < is.size(); ++a)
    for (std::size_t b = a + 1; b < is.size(); ++b) {
      int i = is[a], j = is[b];
      g.m_ += g.bit(i, j) ? -1 : 1;
      g.toggle_bit(i, j);
      g.toggle_bit(j, i);
    }
  return g;
}

Graph Graph::complement_between(const std::vector<int>& a, const std::vector<int>& b) const {
  if (!sorted_intersect(a, b).empty())
    throw Error("complement_between: sets overlap");
  Graph g = *this;
  for (int u : a) {
    int i = g.idx_checked(u, "complement_between");
    for (int v : b) {
      int j = g.idx_checked(v, "complement_between");
      g.m_ += g.bit(i, j) ? -1 : 1;
      g.toggle_bit(i, j);
      g.toggle_bit(j, i);
    }
  }
  return g;
}

std::size_t Graph::hash() const {
  // FNV-1a over labels then adjacency words; cheap and good enough for the
  // visited-set use in the search layers.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (int v : verts_) mix(static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull);
  for (std::uint64_t w : bits_) mix(w);
  return h;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> sorted_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> sorted_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sorted_contains(const std::vector<int>& a, int v) {
  return std::binary_search(a.begin(), a.end(), v);
}

std::unordered_map<int, int> bfs_distances(const Graph& g, int source) {
  if (!g.has_vertex(source))
    throw Error("bfs_distances: no vertex " + std::to_string(source));
  std::unordered_map<int, int> dist;
  dist.emplace(source, 0);
  std::queue<int> q;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    int d = dist.at(v);
    for (int w : g.neighbors(v))
      if (dist.emplace(w, d + 1).second) q.push(w);
  }
  return dist;
}

int distance(const Graph& g, int a, int b) {
  if (!g.has_vertex(b)) throw Error("distance: no vertex " + std::to_string(b));
  auto dist = bfs_distances(g, a);
  auto it = dist.find(b);
  return it == dist.end() ? -1 : it->second;
}

std::vector<int> ball(const Graph& g, int v, int radius) {
  std::vector<int> out;
  for (auto [w, d] : bfs_distances(g, v))
    if (d <= radius) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> sphere(const Graph& g, int v, int radius) {
  std::vector<int> out;
  for (auto [w, d] : bfs_distances(g, v))
    if (d == radius) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<int> seen;
  for (int v : g.vertices()) {
    if (sorted_contains(seen, v)) continue;
    std::vector<int> comp;
    for (auto [w, d] : bfs_distances(g, v)) comp.push_back(w);
    std::sort(comp.begin(), comp.end());
    seen = sorted_union(seen, comp);
    comps.push_back(std::move(comp));
  }
  // bfs order already yields components by their minimum label because the
  // outer scan walks sorted vertices
  return comps;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  return static_cast<int>(bfs_distances(g, g.vertices().front()).size()) == g.n();
}

bool is_tree(const Graph& g) {
  return g.n() > 0 && is_connected(g) && g.m() == g.n() - 1;
}

bool is_stable_set(const Graph& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (g.adjacent(s[i], s[j])) return false;
  return true;
}

bool is_clique(const Graph& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] != s[j] && !g.adjacent(s[i], s[j])) return false;
  return true;
}

bool anticomplete(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
  for (int u : a)
    for (int v : b)
      if (u != v && g.adjacent(u, v)) return false;
  return true;
}

bool complete_between(const Graph& g, const std::vector<int>& a, const std::vector<int>& b) {
  for (int u : a)
    for (int v : b) {
      if (u == v) throw Error("complete_between: sets overlap at " + std::to_string(u));
      if (!g.adjacent(u, v)) return false;
    }
  return true;
}

namespace {

struct CutDfs {
  const Graph& g;
  std::unordered_map<int, int> num, low;
  int counter = 0;
  std::vector<int> cuts;
  std::vector<std::pair<int, int>> bridges;

  explicit CutDfs(const Graph& gr) : g(gr) {}

  void run(int v, int parent) {
    num[v] = low[v] = counter++;
    int children = 0;
    bool cut = false;
    for (int w : g.neighbors(v)) {
      if (!num.count(w)) {
        ++children;
        run(w, v);
        low[v] = std::min(low[v], low[w]);
        if (parent >= 0 && low[w] >= num[v]) cut = true;
        if (low[w] > num[v]) bridges.emplace_back(std::min(v, w), std::max(v, w));
      } else if (w != parent) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (parent < 0 && children > 1) cut = true;
    if (cut) cuts.push_back(v);
  }
};

}  // namespace

CutStructure cut_structure(const Graph& g) {
  CutDfs dfs(g);
  for (int v : g.vertices())
    if (!dfs.num.count(v)) dfs.run(v, -1);
  std::sort(dfs.cuts.begin(), dfs.cuts.end());
  std::sort(dfs.bridges.begin(), dfs.bridges.end());
  return {std::move(dfs.cuts), std::move(dfs.bridges)};
}

Contraction contract_edges_mapped(const Graph& g,
                                  const std::vector<std::pair<int, int>>& edges) {
  std::unordered_map<int, int> parent;
  for (int v : g.vertices()) parent[v] = v;
  // union-find, classes keyed by (eventually) their minimum label
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  for (auto [a, b] : edges) {
    if (!g.has_vertex(a) || !g.has_vertex(b) || a == b || !g.adjacent(a, b))
      throw Error("contract_edges: " + pair_str(a, b) + " is not an edge");
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    if (ra > rb) std::swap(ra, rb);
    parent[rb] = ra;
  }

  std::unordered_map<int, int> survivor;
  std::vector<int> kept;
  for (int v : g.vertices()) {
    int r = find(v);
    survivor[v] = r;
    if (r == v) kept.push_back(v);
  }

  std::vector<std::pair<int, int>> new_edges;
  for (auto [a, b] : g.edge_list()) {
    int ra = survivor[a], rb = survivor[b];
    if (ra == rb) continue;
    new_edges.emplace_back(std::min(ra, rb), std::max(ra, rb));
  }
  std::sort(new_edges.begin(), new_edges.end());
  new_edges.erase(std::unique(new_edges.begin(), new_edges.end()), new_edges.end());

  return {Graph::from_edges(std::move(kept), new_edges), std::move(survivor)};
}

Graph contract_edges(const Graph& g, const std::vector<std::pair<int, int>>& edges) {
  return contract_edges_mapped(g, edges).graph;
}

Graph relabel(const Graph& g, const std::unordered_map<int, int>& new_labels) {
  std::unordered_map<int, int> full;
  for (int v : g.vertices()) {
    auto it = new_labels.find(v);
    full[v] = it == new_labels.end() ? v : it->second;
  }
  std::vector<int> vs;
  vs.reserve(g.n());
  for (int v : g.vertices()) vs.push_back(full[v]);
  std::vector<int> check = vs;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end())
    throw Error("relabel: two vertices map to the same label");

  std::vector<std::pair<int, int>> es;
  es.reserve(g.m());
  for (auto [a, b] : g.edge_list()) es.emplace_back(full[a], full[b]);
  return Graph::from_edges(std::move(vs), es);
}

}  // namespace vmc
