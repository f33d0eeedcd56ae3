#include "vmc/bloated.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include <json.hpp>

namespace vmc {

namespace {

void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p,
                   std::vector<int> x, std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  int pivot = -1, best = -1;
  for (const std::vector<int>* side : {&p, &x})
    for (int v : *side) {
      int c = static_cast<int>(sorted_intersect(p, g.neighbors(v)).size());
      if (c > best) {
        best = c;
        pivot = v;
      }
    }
  for (int v : sorted_minus(p, g.neighbors(pivot))) {
    std::vector<int> nb = g.neighbors(v);
    r.push_back(v);
    bron_kerbosch(g, r, sorted_intersect(p, nb), sorted_intersect(x, nb), out);
    r.pop_back();
    p = sorted_minus(p, {v});
    x = sorted_union(x, {v});
  }
}

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  bron_kerbosch(g, r, g.vertices(), {}, out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool in_triangle(const Graph& g, int v) {
  std::vector<int> nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (g.adjacent(nb[i], nb[j])) return true;
  return false;
}

std::vector<int> validate_marks(const Graph& g, const std::vector<int>& s,
                                const char* who) {
  std::vector<int> ss = s;
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  if (ss.empty()) throw Error(std::string(who) + ": s is empty");
  for (int v : ss)
    if (!g.has_vertex(v))
      throw Error(std::string(who) + ": vertex " + std::to_string(v) +
                  " not in graph");
  if (!is_connected(g)) throw Error(std::string(who) + ": graph is disconnected");
  return ss;
}

using Interior = std::map<std::pair<int, int>, std::vector<int>>;

std::vector<int> oriented_interior(const Interior& inner, int from, int to) {
  auto it = inner.find({std::min(from, to), std::max(from, to)});
  if (it == inner.end()) return {};
  std::vector<int> p = it->second;
  if (from > to) std::reverse(p.begin(), p.end());
  return p;
}

// Remove a degree-2 vertex and join its two neighbours directly, folding any
// previously absorbed chain vertices into the new edge's record so the path
// can be laid back out later.
Graph suppress_vertex(const Graph& g, int v, Interior& inner) {
  std::vector<int> nb = g.neighbors(v);
  std::vector<int> path = oriented_interior(inner, nb[0], v);
  path.push_back(v);
  std::vector<int> rest = oriented_interior(inner, v, nb[1]);
  path.insert(path.end(), rest.begin(), rest.end());
  inner.erase({std::min(nb[0], v), std::max(nb[0], v)});
  inner.erase({std::min(v, nb[1]), std::max(v, nb[1])});
  int a = std::min(nb[0], nb[1]), b = std::max(nb[0], nb[1]);
  if (a != nb[0]) std::reverse(path.begin(), path.end());
  inner[{a, b}] = path;
  return g.minus_vertex(v).plus_edge(nb[0], nb[1]);
}

struct ReductionState {
  Graph g;
  Interior inner;
};

ReductionState run_reduction(const Graph& g, const std::vector<int>& s) {
  ReductionState st{g, {}};
  for (;;) {
    CutStructure cs = cut_structure(st.g);
    int pick = -1;
    for (int v : st.g.vertices())
      if (!sorted_contains(s, v) && !sorted_contains(cs.cut_vertices, v)) {
        pick = v;
        break;
      }
    if (pick >= 0) {
      for (auto it = st.inner.begin(); it != st.inner.end();)
        it = (it->first.first == pick || it->first.second == pick)
                 ? st.inner.erase(it)
                 : std::next(it);
      st.g = st.g.minus_vertex(pick);
      continue;
    }
    for (int v : st.g.vertices()) {
      if (sorted_contains(s, v) || st.g.degree(v) != 2) continue;
      std::vector<int> nb = st.g.neighbors(v);
      std::pair<int, int> e1{std::min(nb[0], v), std::max(nb[0], v)};
      std::pair<int, int> e2{std::min(v, nb[1]), std::max(v, nb[1])};
      if (!std::binary_search(cs.bridges.begin(), cs.bridges.end(), e1) ||
          !std::binary_search(cs.bridges.begin(), cs.bridges.end(), e2))
        continue;
      st.g = suppress_vertex(st.g, v, st.inner);
      pick = v;
      break;
    }
    if (pick < 0) break;
  }
  return st;
}

}  // namespace

std::string BloatedTreeDecomp::to_json() const {
  nlohmann::json j;
  j["T"] = t;
  j["L"] = leaves;
  j["B"] = branching;
  j["cliques"] = big_cliques;
  j["Z"] = attach;
  return j.dump();
}

BloatedAnalysis analyze_bloated_tree(const Graph& g, const std::vector<int>& t) {
  Graph sub = g.induced(t);
  BloatedAnalysis res;
  if (sub.n() == 0) {
    res.violated = "contraction-not-a-tree";
    return res;
  }

  std::vector<std::vector<int>> big;
  for (auto& c : maximal_cliques(sub))
    if (static_cast<int>(c.size()) >= 3) big.push_back(std::move(c));

  std::map<std::pair<int, int>, int> uses;
  for (const auto& c : big)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        if (++uses[{c[i], c[j]}] > 1) {
          res.violated = "edge-in-two-big-cliques";
          return res;
        }

  for (const auto& c : big) {
    int k = static_cast<int>(c.size());
    for (int v : c)
      if (sub.degree(v) > k) {
        res.violated = "degree-exceeds-clique-size";
        return res;
      }
  }

  std::vector<std::pair<int, int>> cedges;
  int inside = 0;
  for (const auto& c : big) {
    int k = static_cast<int>(c.size());
    inside += k * (k - 1) / 2;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        cedges.push_back({c[i], c[j]});
  }
  Graph con = contract_edges(sub, cedges);
  // Exact edge conservation matters: two parallel connections between cliques
  // collapse to one simple edge and would otherwise masquerade as a tree.
  if (!is_tree(con) || con.m() != sub.m() - inside) {
    res.violated = "contraction-not-a-tree";
    return res;
  }

  BloatedTreeDecomp d;
  d.host = g;
  d.t = sub.vertices();
  d.big_cliques = std::move(big);
  for (int v : d.t) {
    int deg = sub.degree(v);
    if (deg <= 1) {
      d.leaves.push_back(v);
      continue;
    }
    if (g.degree(v) > deg) d.attach.push_back(v);
    if (deg >= 3 && !in_triangle(sub, v)) d.branching.push_back(v);
  }
  res.decomp = std::move(d);
  return res;
}

BloatedTreeDecomp grow_maximal_bloated_tree(const Graph& g, int seed) {
  if (!g.has_vertex(seed))
    throw Error("grow_maximal_bloated_tree: seed " + std::to_string(seed) +
                " not in graph");
  if (!is_connected(g))
    throw Error("grow_maximal_bloated_tree: graph is disconnected");

  std::vector<int> t{seed};
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : g.vertices()) {
      if (sorted_contains(t, v)) continue;
      std::vector<int> trial = sorted_union(t, {v});
      if (analyze_bloated_tree(g, trial).decomp) {
        t = std::move(trial);
        changed = true;
      }
    }
  }
  return *analyze_bloated_tree(g, t).decomp;
}

Graph distinguished_reduction(const Graph& g, const std::vector<int>& s) {
  return run_reduction(g, validate_marks(g, s, "distinguished_reduction")).g;
}

BloatedTreeDecomp find_distinguished_bloated_tree(const Graph& g,
                                                  const std::vector<int>& s) {
  std::vector<int> ss = validate_marks(g, s, "find_distinguished_bloated_tree");
  ReductionState st = run_reduction(g, ss);

  int seed = -1;
  for (int v : st.g.vertices())
    if (sorted_contains(ss, v)) {
      seed = v;
      break;
    }
  BloatedTreeDecomp grown = grow_maximal_bloated_tree(st.g, seed);

  // maximality in the reduced graph forces at least a sixteenth of the tree
  // to be marked; anything less means one of the stages above is broken
  std::size_t marked = sorted_intersect(grown.t, ss).size();
  if (marked < (grown.t.size() + 15) / 16)
    throw Error("find_distinguished_bloated_tree: marked-vertex ratio violated");

  std::vector<int> u = grown.t;
  for (auto [a, b] : st.g.induced(grown.t).edge_list()) {
    auto it = st.inner.find({a, b});
    if (it != st.inner.end())
      u.insert(u.end(), it->second.begin(), it->second.end());
  }
  std::sort(u.begin(), u.end());

  BloatedAnalysis out = analyze_bloated_tree(g, u);
  if (!out.decomp)
    throw Error("find_distinguished_bloated_tree: expansion is not a bloated tree (" +
                out.violated + ")");
  return *out.decomp;
}

namespace {

// Two-state subtree DP.  h: best count when the vertex must stay harmless
// under any parent (keeps at most one child, never branching after the parent
// edge arrives); g: best count when the parent promises not to branch, so the
// vertex itself may branch provided its kept children are all h-safe.  Forced
// vertices count as branching whatever their degree, so they have no h-state.
struct SubtreeDp {
  std::vector<int> order, parent;
  std::vector<std::vector<int>> kids;
  std::vector<int> leafself, h, g, hchild, top, contained;
  std::vector<char> isf, g_all, top_pair;
};

std::vector<int> branching_core(const Graph& tree, const std::vector<int>& forced,
                                const std::vector<int>* count_only,
                                std::vector<BranchingDpNode>* cert = nullptr) {
  if (!is_tree(tree)) throw Error("branching_subtree: input is not a tree");
  const std::vector<int>& vs = tree.vertices();
  int n = tree.n();

  std::unordered_map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[vs[i]] = i;

  SubtreeDp dp;
  dp.parent.assign(n, -1);
  dp.kids.assign(n, {});
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop_front();
    dp.order.push_back(i);
    for (int w : tree.neighbors(vs[i])) {
      int j = pos[w];
      if (seen[j]) continue;
      seen[j] = 1;
      dp.parent[j] = i;
      dp.kids[i].push_back(j);
      q.push_back(j);
    }
  }

  dp.isf.assign(n, 0);
  for (int f : forced)
    if (tree.has_vertex(f)) dp.isf[pos[f]] = 1;
  dp.leafself.assign(n, 0);
  dp.h.assign(n, 0);
  dp.g.assign(n, 0);
  dp.hchild.assign(n, -1);
  dp.top.assign(n, 0);
  dp.contained.assign(n, 0);
  dp.g_all.assign(n, 0);
  dp.top_pair.assign(n, 0);

  for (auto it = dp.order.rbegin(); it != dp.order.rend(); ++it) {
    int i = *it;
    bool counts = !dp.isf[i] && tree.degree(vs[i]) <= 1 &&
                  (!count_only || sorted_contains(*count_only, vs[i]));
    dp.leafself[i] = counts ? 1 : 0;
    dp.contained[i] = dp.leafself[i];
    int sum_h = 0;
    for (int c : dp.kids[i]) {
      dp.contained[i] += dp.contained[c];
      if (dp.h[c] > 0) sum_h += dp.h[c];
    }
    int all = dp.leafself[i] + sum_h;
    if (dp.isf[i]) {
      dp.h[i] = -1;
      dp.g[i] = all;
      dp.g_all[i] = 1;
    } else {
      int bestg = 0, bc = -1;
      for (int c : dp.kids[i])
        if (dp.g[c] > bestg) {
          bestg = dp.g[c];
          bc = c;
        }
      dp.h[i] = dp.leafself[i] + bestg;
      dp.hchild[i] = bc;
      if (all > dp.h[i]) {
        dp.g[i] = all;
        dp.g_all[i] = 1;
      } else {
        dp.g[i] = dp.h[i];
      }
    }
    int pair = -1;
    if (!dp.isf[i]) {
      int g1 = 0, g2 = 0;
      for (int c : dp.kids[i]) {
        if (dp.g[c] > g1) {
          g2 = g1;
          g1 = dp.g[c];
        } else if (dp.g[c] > g2) {
          g2 = dp.g[c];
        }
      }
      pair = dp.leafself[i] + g1 + g2;
    }
    if (pair >= all) {
      dp.top[i] = pair;
      dp.top_pair[i] = 1;
    } else {
      dp.top[i] = all;
    }
  }

  if (cert) {
    cert->clear();
    for (int i = 0; i < n; ++i)
      cert->push_back({vs[i], dp.g[i], dp.h[i], dp.contained[i]});
  }

  bool no_forced = true;
  for (int i = 0; i < n; ++i) no_forced = no_forced && !dp.isf[i];
  if (no_forced) {
    // the two quantities multiply out to at least the leaf count below every
    // vertex; losing that means the recurrences are wrong, not the input
    for (int i = 0; i < n; ++i)
      if (static_cast<long long>(dp.g[i]) * dp.h[i] < dp.contained[i])
        throw Error("branching_subtree: product bound lost");
  }

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (dp.top[i] > dp.top[best]) best = i;

  if (no_forced) {
    int ell = 0;
    for (int i = 0; i < n; ++i) ell += dp.leafself[i];
    int r = 0;
    while (r * r < ell) ++r;
    if (dp.top[best] < r) throw Error("branching_subtree: sqrt bound lost");
  }

  enum class St { H, G, Top };
  std::vector<int> out;
  std::vector<std::pair<int, St>> stack{{best, St::Top}};
  while (!stack.empty()) {
    auto [i, st] = stack.back();
    stack.pop_back();
    if (st == St::G && !dp.g_all[i]) st = St::H;
    out.push_back(vs[i]);
    if (st == St::H) {
      if (dp.hchild[i] >= 0) stack.push_back({dp.hchild[i], St::G});
    } else if (st == St::G) {
      for (int c : dp.kids[i])
        if (dp.h[c] > 0) stack.push_back({c, St::H});
    } else if (dp.top_pair[i]) {
      int c1 = -1, c2 = -1;
      for (int c : dp.kids[i]) {
        if (dp.g[c] <= 0) continue;
        if (c1 < 0 || dp.g[c] > dp.g[c1]) {
          c2 = c1;
          c1 = c;
        } else if (c2 < 0 || dp.g[c] > dp.g[c2]) {
          c2 = c;
        }
      }
      if (c1 >= 0) stack.push_back({c1, St::G});
      if (c2 >= 0) stack.push_back({c2, St::G});
    } else {
      for (int c : dp.kids[i])
        if (dp.h[c] > 0) stack.push_back({c, St::H});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Collapsed {
  Graph tree;
  std::map<int, std::vector<int>> expansion;  // survivor -> clique members
  std::vector<int> forced;
};

Collapsed collapse_cliques(const BloatedTreeDecomp& d) {
  std::vector<std::pair<int, int>> cedges;
  for (const auto& c : d.big_cliques)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        cedges.push_back({c[i], c[j]});
  Contraction con = contract_edges_mapped(d.tree_graph(), cedges);
  Collapsed out;
  out.tree = std::move(con.graph);
  for (const auto& c : d.big_cliques) {
    int sv = con.survivor.at(c[0]);
    out.expansion[sv] = c;
    out.forced.push_back(sv);
  }
  std::sort(out.forced.begin(), out.forced.end());
  return out;
}

int ceil_fourth_root(long long x) {
  int r = 0;
  while (static_cast<long long>(r) * r * r * r < x) ++r;
  return r;
}

BloatedTreeDecomp prune_impl(const Graph& host, const std::vector<int>& t_in,
                             const std::vector<int>* wl, const char* who) {
  BloatedAnalysis a0 = analyze_bloated_tree(host, t_in);
  if (!a0.decomp)
    throw Error(std::string(who) + ": invalid decomposition (" + a0.violated + ")");
  BloatedTreeDecomp d = *a0.decomp;
  std::vector<int> white = wl ? *wl : d.leaves;
  std::sort(white.begin(), white.end());
  long long ell_in = sorted_intersect(d.leaves, white).size();

  // a clique member with degree one under its clique size hangs off the tree
  // with no outside contact; keeping it only pads the cliques
  std::vector<int> t = d.t;
  for (bool changed = true; changed;) {
    changed = false;
    BloatedAnalysis a = analyze_bloated_tree(host, t);
    if (!a.decomp)
      throw Error(std::string(who) + ": invalid decomposition (" + a.violated + ")");
    Graph sub = host.induced(t);
    for (const auto& c : a.decomp->big_cliques) {
      int k = static_cast<int>(c.size());
      for (int v : c)
        if (sub.degree(v) == k - 1) {
          t = sorted_minus(t, {v});
          changed = true;
          break;
        }
      if (changed) break;
    }
  }
  BloatedTreeDecomp d2 = *analyze_bloated_tree(host, t).decomp;

  Collapsed col = collapse_cliques(d2);
  auto counted = [&](int v) {
    return col.tree.degree(v) <= 1 && !sorted_contains(col.forced, v) &&
           sorted_contains(white, v);
  };
  auto trim = [&](Graph g) {
    for (bool ch = true; ch;) {
      ch = false;
      for (int v : g.vertices()) {
        if (g.n() == 1) break;
        if (g.degree(v) <= 1 && !counted(v)) {
          g = g.minus_vertex(v);
          ch = true;
          break;
        }
      }
    }
    return g;
  };

  std::vector<int> v1 = branching_core(col.tree, col.forced, &white);
  Graph t2 = trim(col.tree.induced(v1));

  // collapse the chains so the second pass sees branch points side by side
  Interior inner;
  Graph t2s = t2;
  for (bool ch = true; ch;) {
    ch = false;
    for (int v : t2s.vertices()) {
      if (t2s.degree(v) != 2 || sorted_contains(col.forced, v)) continue;
      t2s = suppress_vertex(t2s, v, inner);
      ch = true;
      break;
    }
  }

  std::vector<int> f2 = sorted_intersect(col.forced, t2s.vertices());
  std::vector<int> v3 = branching_core(t2s, f2, &white);
  Graph t3 = trim(t2s.induced(v3));

  std::vector<int> star = t3.vertices();
  for (auto [a, b] : t3.edge_list()) {
    auto it = inner.find({a, b});
    if (it != inner.end())
      star.insert(star.end(), it->second.begin(), it->second.end());
  }

  std::vector<int> t_out;
  for (int v : star) {
    auto it = col.expansion.find(v);
    if (it != col.expansion.end())
      t_out.insert(t_out.end(), it->second.begin(), it->second.end());
    else
      t_out.push_back(v);
  }
  std::sort(t_out.begin(), t_out.end());

  BloatedAnalysis fin = analyze_bloated_tree(host, t_out);
  if (!fin.decomp)
    throw Error(std::string(who) + ": output failed validation (" + fin.violated + ")");
  long long got = sorted_intersect(fin.decomp->leaves, white).size();
  if (ell_in > 0 && got < static_cast<long long>(fin.decomp->leaves.size()))
    throw Error(std::string(who) + ": output grew an uncounted leaf");
  if (got < ceil_fourth_root(ell_in))
    throw Error(std::string(who) + ": leaf bound violated");
  return *fin.decomp;
}

}  // namespace

std::vector<int> branching_subtree(const Graph& tree, const std::vector<int>& forced) {
  std::vector<int> fs = forced;
  std::sort(fs.begin(), fs.end());
  return branching_core(tree, fs, nullptr);
}

std::vector<BranchingDpNode> branching_certificate(const Graph& tree) {
  std::vector<BranchingDpNode> cert;
  branching_core(tree, {}, nullptr, &cert);
  return cert;
}

BloatedTreeDecomp prune_bloated_tree(const BloatedTreeDecomp& bt) {
  return prune_impl(bt.host, bt.t, nullptr, "prune_bloated_tree");
}

std::optional<BloatedTreeDecomp> find_spread_bloated_tree(const Graph& g,
                                                          const std::vector<int>& s,
                                                          int ell) {
  std::vector<int> ss = validate_marks(g, s, "find_spread_bloated_tree");
  for (int v : ss)
    if (g.degree(v) != 1)
      throw Error("find_spread_bloated_tree: vertex " + std::to_string(v) +
                  " has degree " + std::to_string(g.degree(v)) + ", need 1");
  if (ell <= 0) throw Error("find_spread_bloated_tree: ell must be positive");

  BloatedTreeDecomp fd = find_distinguished_bloated_tree(g, ss);

  // every leaf of the working tree must be a marked vertex before pruning,
  // otherwise the pipeline spends its budget on leaves nobody asked for
  std::vector<int> t = fd.t;
  for (bool ch = true; ch;) {
    ch = false;
    Graph sub = g.induced(t);
    for (int v : t) {
      if (sub.degree(v) <= 1 && !sorted_contains(ss, v)) {
        t = sorted_minus(t, {v});
        ch = true;
        break;
      }
    }
  }

  BloatedTreeDecomp out = prune_impl(g, t, &ss, "find_spread_bloated_tree");
  if (static_cast<int>(sorted_intersect(out.leaves, ss).size()) < ell)
    return std::nullopt;
  return out;
}

}  // namespace vmc
