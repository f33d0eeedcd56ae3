#include "vmc/solvers.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace vmc {

namespace {

// Dense position-indexed view; the solvers below never want to pay the
// label translation cost in their inner loops.
struct IndexGraph {
  std::vector<int> labels;
  std::vector<std::vector<std::uint8_t>> adj;
  std::vector<std::vector<int>> nbrs;

  explicit IndexGraph(const Graph& g) : labels(g.vertices()) {
    int n = static_cast<int>(labels.size());
    adj.assign(n, std::vector<std::uint8_t>(n, 0));
    nbrs.assign(n, {});
    for (auto [a, b] : g.edge_list()) {
      int i = pos(a), j = pos(b);
      adj[i][j] = adj[j][i] = 1;
      nbrs[i].push_back(j);
      nbrs[j].push_back(i);
    }
  }

  int pos(int label) const {
    return static_cast<int>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  }
  int n() const { return static_cast<int>(labels.size()); }
};

int greedy_clique_size(const IndexGraph& ig) {
  std::vector<int> order(ig.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ig.nbrs[a].size() > ig.nbrs[b].size();
  });
  int best = 0;
  for (int seed : order) {
    std::vector<int> clique = {seed};
    for (int v : order) {
      if (v == seed) continue;
      bool ok = true;
      for (int c : clique)
        if (!ig.adj[v][c]) {
          ok = false;
          break;
        }
      if (ok) clique.push_back(v);
    }
    best = std::max(best, static_cast<int>(clique.size()));
  }
  return best;
}

// Saturation-driven branch and bound.  `goal` lets callers stop the moment
// a known lower bound is met (exact search) or a target is beaten (decision).
struct ColorSearch {
  const IndexGraph& ig;
  int n;
  int goal;
  int best;                          // colors in the best complete coloring so far
  std::vector<int> color;            // 1-based, 0 = unassigned
  std::vector<int> best_color;

  ColorSearch(const IndexGraph& g, int initial_best, int goal_colors)
      : ig(g), n(g.n()), goal(goal_colors), best(initial_best), color(n, 0) {}

  bool satisfied() const { return best <= goal; }

  int pick() const {
    int choice = -1, chosen_sat = -1, chosen_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[v]) continue;
      std::uint64_t seen = 0;
      int sat = 0;
      for (int w : ig.nbrs[v])
        if (color[w] && !(seen & (std::uint64_t(1) << (color[w] & 63)))) {
          seen |= std::uint64_t(1) << (color[w] & 63);
          ++sat;
        }
      int deg = static_cast<int>(ig.nbrs[v].size());
      if (sat > chosen_sat || (sat == chosen_sat && deg > chosen_deg)) {
        choice = v;
        chosen_sat = sat;
        chosen_deg = deg;
      }
    }
    return choice;
  }

  void dfs(int colored, int used) {
    if (satisfied() || used >= best) return;
    if (colored == n) {
      best = used;
      best_color = color;
      return;
    }
    int v = pick();
    for (int c = 1; c <= used && !satisfied(); ++c) {
      bool free = true;
      for (int w : ig.nbrs[v])
        if (color[w] == c) {
          free = false;
          break;
        }
      if (!free) continue;
      color[v] = c;
      dfs(colored + 1, used);
      color[v] = 0;
    }
    if (used + 1 < best && !satisfied()) {
      color[v] = used + 1;
      dfs(colored + 1, used + 1);
      color[v] = 0;
    }
  }
};

void export_coloring(const IndexGraph& ig, const std::vector<int>& colors,
                     std::map<int, int>* out) {
  if (!out) return;
  out->clear();
  for (int v = 0; v < ig.n(); ++v) (*out)[ig.labels[v]] = colors[v] - 1;
}

}  // namespace

bool chromatic_feasible(const Graph& g, const SolverLimits& lim) {
  return g.n() <= lim.chi_exact;
}

bool chi_decision_feasible(const Graph& g, int k, const SolverLimits& lim) {
  if (g.n() <= lim.chi_exact) return true;
  return k <= 3 && g.n() <= lim.chi_bounded;
}

int chromatic_number(const Graph& g, std::map<int, int>* coloring,
                     const SolverLimits& lim) {
  if (!chromatic_feasible(g, lim))
    throw Error("chromatic_number: n=" + std::to_string(g.n()) + " exceeds limit " +
                std::to_string(lim.chi_exact));
  if (g.n() == 0) {
    if (coloring) coloring->clear();
    return 0;
  }
  IndexGraph ig(g);
  int lower = greedy_clique_size(ig);
  ColorSearch search(ig, ig.n(), lower);
  search.best_color.resize(ig.n());
  std::iota(search.best_color.begin(), search.best_color.end(), 1);
  search.dfs(0, 0);
  export_coloring(ig, search.best_color, coloring);
  return search.best;
}

bool chi_at_most(const Graph& g, int k, std::map<int, int>* coloring,
                 const SolverLimits& lim) {
  if (k < 0) throw Error("chi_at_most: negative color count");
  if (!chi_decision_feasible(g, k, lim))
    throw Error("chi_at_most: n=" + std::to_string(g.n()) +
                " exceeds limit for target " + std::to_string(k));
  if (g.n() == 0) {
    if (coloring) coloring->clear();
    return true;
  }
  if (k == 0) return false;
  IndexGraph ig(g);
  if (greedy_clique_size(ig) > k) return false;
  ColorSearch search(ig, k + 1, k);
  search.dfs(0, 0);
  if (search.best > k) return false;
  export_coloring(ig, search.best_color, coloring);
  return true;
}

int chi_ball(const Graph& g, int radius, int* argmax, const SolverLimits& lim) {
  if (radius < 0) throw Error("chi_ball: negative radius");
  int best = 0, center = -1;
  for (int v : g.vertices()) {
    Graph b = g.induced(ball(g, v, radius));
    if (!chromatic_feasible(b, lim))
      throw Error("chi_ball: ball around " + std::to_string(v) + " has n=" +
                  std::to_string(b.n()) + ", beyond the exact limit");
    int chi = chromatic_number(b, nullptr, lim);
    if (chi > best) {
      best = chi;
      center = v;
    }
  }
  if (argmax) *argmax = center;
  return best;
}

namespace {

// Max clique with the classic greedy-coloring bound; candidates are re-colored
// at every node and visited from the highest color class down.
struct CliqueSearch {
  const IndexGraph& ig;
  std::vector<int> cur, best;

  explicit CliqueSearch(const IndexGraph& g) : ig(g) {}

  void expand(const std::vector<int>& cand) {
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      bool placed = false;
      for (auto& cls : classes) {
        bool clash = false;
        for (int u : cls)
          if (ig.adj[u][v]) {
            clash = true;
            break;
          }
        if (!clash) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    std::vector<int> ordered;
    std::vector<int> bound;
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        ordered.push_back(v);
        bound.push_back(static_cast<int>(c) + 1);
      }
    for (int i = static_cast<int>(ordered.size()) - 1; i >= 0; --i) {
      if (cur.size() + bound[i] <= best.size()) return;
      int v = ordered[i];
      cur.push_back(v);
      std::vector<int> next;
      for (int j = 0; j < i; ++j)
        if (ig.adj[ordered[j]][v]) next.push_back(ordered[j]);
      if (next.empty()) {
        if (cur.size() > best.size()) best = cur;
      } else {
        expand(next);
      }
      cur.pop_back();
    }
  }
};

}  // namespace

int clique_number(const Graph& g, std::vector<int>* witness, const SolverLimits& lim) {
  if (g.n() > lim.clique)
    throw Error("clique_number: n=" + std::to_string(g.n()) + " exceeds limit " +
                std::to_string(lim.clique));
  if (witness) witness->clear();
  if (g.n() == 0) return 0;
  IndexGraph ig(g);
  std::vector<int> all(ig.n());
  std::iota(all.begin(), all.end(), 0);
  std::sort(all.begin(), all.end(), [&](int a, int b) {
    return ig.nbrs[a].size() > ig.nbrs[b].size();
  });
  CliqueSearch search(ig);
  search.expand(all);
  if (witness) {
    for (int v : search.best) witness->push_back(ig.labels[v]);
    std::sort(witness->begin(), witness->end());
  }
  return static_cast<int>(search.best.size());
}

bool are_isomorphic(const Graph& g, const Graph& h, std::map<int, int>* mapping,
                    const SolverLimits& lim) {
  if (g.n() > lim.iso || h.n() > lim.iso)
    throw Error("are_isomorphic: n=" + std::to_string(std::max(g.n(), h.n())) +
                " exceeds limit " + std::to_string(lim.iso));
  if (mapping) mapping->clear();
  if (g.n() != h.n() || g.m() != h.m()) return false;
  if (g.n() == 0) return true;

  IndexGraph a(g), b(h);
  auto degs = [](const IndexGraph& ig) {
    std::vector<int> d;
    for (auto& nb : ig.nbrs) d.push_back(static_cast<int>(nb.size()));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degs(a) != degs(b)) return false;

  int n = a.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    auto dx = a.nbrs[x].size(), dy = a.nbrs[y].size();
    return dx != dy ? dx > dy : x < y;
  });

  std::vector<int> to_b(n, -1), taken(n, 0);
  std::function<bool(int)> assign = [&](int k) {
    if (k == n) return true;
    int v = order[k];
    for (int w = 0; w < n; ++w) {
      if (taken[w] || a.nbrs[v].size() != b.nbrs[w].size()) continue;
      bool ok = true;
      for (int i = 0; i < k; ++i) {
        int u = order[i];
        if (a.adj[u][v] != b.adj[to_b[u]][w]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      to_b[v] = w;
      taken[w] = 1;
      if (assign(k + 1)) return true;
      taken[w] = 0;
      to_b[v] = -1;
    }
    return false;
  };

  if (!assign(0)) return false;
  if (mapping)
    for (int v = 0; v < n; ++v) (*mapping)[a.labels[v]] = b.labels[to_b[v]];
  return true;
}

namespace {

std::optional<std::vector<int>> lex_first_subset(const Graph& g, int size,
                                                 bool want_edges) {
  if (size < 0) throw Error("subset search: negative size");
  const auto& vs = g.vertices();
  std::vector<int> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == size) return true;
    for (std::size_t i = start; i < vs.size(); ++i) {
      if (vs.size() - i < static_cast<std::size_t>(size) - cur.size()) return false;
      int v = vs[i];
      bool fits = true;
      for (int u : cur)
        if (g.adjacent(u, v) != want_edges) {
          fits = false;
          break;
        }
      if (!fits) continue;
      cur.push_back(v);
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return cur;
}

}  // namespace

std::optional<std::vector<int>> find_stable_set(const Graph& g, int size) {
  return lex_first_subset(g, size, false);
}

std::optional<std::vector<int>> find_clique(const Graph& g, int size) {
  return lex_first_subset(g, size, true);
}

}  // namespace vmc
