#include "vmc/chi_structures.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vmc/bloated.hpp"
#include "vmc/families.hpp"
#include "vmc/oracle.hpp"
#include "vmc/ramsey.hpp"
#include "vmc/shrink.hpp"
#include "vmc/universal.hpp"

namespace vmc {

namespace {

// Distances from a set of sources, by breadth-first search.  Vertices that
// never appear in the map are unreachable.
std::unordered_map<int, int> distances_from(const Graph& g,
                                            const std::vector<int>& sources) {
  std::unordered_map<int, int> d;
  std::deque<int> queue;
  for (int s : sources) {
    if (d.emplace(s, 0).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (d.emplace(w, d[u] + 1).second) queue.push_back(w);
    }
  }
  return d;
}

bool graph_connected(const Graph& g) {
  return connected_components(g).size() <= 1;
}

// Saturating arithmetic for the threshold formulas.  Anything at or above the
// cap reads as "too large to ever fire"; the cap leaves headroom so sums of a
// few capped values cannot wrap.
constexpr long long kSatCap = std::numeric_limits<long long>::max() / 4;

long long sat_add(long long a, long long b) {
  if (a >= kSatCap || b >= kSatCap || a > kSatCap - b) return kSatCap;
  return a + b;
}

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a >= kSatCap || b >= kSatCap || a > kSatCap / b) return kSatCap;
  return a * b;
}

long long sat_pow2(long long e) {
  if (e >= 61) return kSatCap;
  return 1LL << e;
}

// Best clique found by greedy growth from every start vertex, neighbours
// tried in degree-descending order.  A lower bound on the chromatic number.
long long greedy_clique_lower(const Graph& g) {
  long long best = g.n() > 0 ? 1 : 0;
  for (int s : g.vertices()) {
    std::vector<int> cand = g.neighbors(s);
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      int da = g.degree(a), db = g.degree(b);
      if (da != db) return da > db;
      return a < b;
    });
    std::vector<int> clique{s};
    for (int v : cand) {
      bool joins = true;
      for (int u : clique) {
        if (!g.adjacent(u, v)) {
          joins = false;
          break;
        }
      }
      if (joins) clique.push_back(v);
    }
    best = std::max(best, static_cast<long long>(clique.size()));
  }
  return best;
}

// Greedy colouring in degeneracy order: peel minimum degree (ties to the
// smallest label), colour in reverse removal order with the first free
// colour.  An upper bound on the chromatic number.
long long degeneracy_colouring_upper(const Graph& g) {
  if (g.n() == 0) return 0;
  std::map<int, int> deg;
  for (int v : g.vertices()) deg[v] = g.degree(v);
  std::vector<int> order;
  order.reserve(deg.size());
  while (!deg.empty()) {
    int pick = -1, best = INT_MAX;
    for (const auto& [v, d] : deg) {
      if (d < best) {
        best = d;
        pick = v;
      }
    }
    order.push_back(pick);
    deg.erase(pick);
    for (int w : g.neighbors(pick)) {
      auto it = deg.find(w);
      if (it != deg.end()) --it->second;
    }
  }
  std::unordered_map<int, int> colour;
  long long used = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> taken;
    for (int w : g.neighbors(*it)) {
      auto c = colour.find(w);
      if (c != colour.end()) taken.insert(c->second);
    }
    int c = 0;
    while (taken.count(c)) ++c;
    colour[*it] = c;
    used = std::max(used, static_cast<long long>(c) + 1);
  }
  return used;
}

// 1 when chi(h) >= need is proven, -1 when refuted, 0 when the sandwich
// straddles it.
int threshold_verdict(const Graph& h, long long need, const SolverLimits& lim) {
  if (need <= 0) return 1;
  ChiRange r = chi_range(h, lim);
  if (r.lower >= need) return 1;
  if (r.upper < need) return -1;
  return 0;
}

struct CompPick {
  std::vector<int> comp;
  bool proven = true;
};

// First component, in minimum-label order, whose chromatic number provably
// reaches `need`; falls back to the first undecided one (clearing `proven`),
// and refuses when every component is refuted.  A non-positive need with no
// components at all yields the empty pick.
CompPick pick_component(const Graph& g, long long need, const SolverLimits& lim,
                        const std::string& who) {
  auto comps = connected_components(g);
  if (comps.empty() && need <= 0) return {{}, true};
  std::vector<int> open;
  bool have_open = false;
  for (auto& c : comps) {
    int verdict = threshold_verdict(g.induced(c), need, lim);
    if (verdict > 0) return {std::move(c), true};
    if (verdict == 0 && !have_open) {
      open = std::move(c);
      have_open = true;
    }
  }
  if (have_open) return {std::move(open), false};
  throw Error(who + ": no component reaches chromatic number " +
              std::to_string(need));
}

// Checks the claim chi^(radius)(g) <= kappa.  A refutation, or balls too big
// to solve, clears the flag; the claim is never an error here because
// engineered instances carry asserted locality bounds.
void note_locality_claim(const Graph& g, int radius, long long kappa,
                         const SolverLimits& lim, bool& flag) {
  try {
    if (chi_ball(g, radius, nullptr, lim) > kappa) flag = false;
  } catch (const Error&) {
    flag = false;
  }
}

// Shortest path from `start` to the first vertex with a neighbour in `tgt`,
// inside g.  Layers are expanded in ascending label order and scanned the
// same way, so the result is canonical: nearest layer first, smallest label
// within it, smallest-label parents.  Empty when no layer ever touches.
std::vector<int> path_to_boundary(const Graph& g, int start,
                                  const std::unordered_set<int>& tgt) {
  auto touches = [&](int v) {
    for (int w : g.neighbors(v)) {
      if (tgt.count(w)) return true;
    }
    return false;
  };
  std::unordered_map<int, int> parent;
  parent[start] = start;
  std::vector<int> layer{start};
  while (!layer.empty()) {
    for (int v : layer) {
      if (touches(v)) {
        std::vector<int> path;
        for (int u = v;; u = parent[u]) {
          path.push_back(u);
          if (parent[u] == u) break;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
    std::vector<int> next;
    for (int v : layer) {
      for (int w : g.neighbors(v)) {
        if (parent.emplace(w, v).second) next.push_back(w);
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return {};
}

std::vector<int> sorted_copy(const std::vector<int>& v) {
  std::vector<int> out(v);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_duplicates(const std::vector<int>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

// A path listed in order is induced when consecutive vertices are adjacent
// and no other pair is.
bool path_is_induced(const Graph& g, const std::vector<int>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      bool want = j == i + 1;
      if (g.adjacent(path[i], path[j]) != want) return false;
    }
  }
  return true;
}

bool all_in_graph(const Graph& g, const std::vector<int>& vs) {
  for (int v : vs) {
    if (!g.has_vertex(v)) return false;
  }
  return true;
}

// Neighbourhood of a vertex set, excluding the set itself, sorted.
std::vector<int> outside_neighbourhood(const Graph& g,
                                       const std::vector<int>& vs) {
  std::unordered_set<int> inside(vs.begin(), vs.end());
  std::set<int> out;
  for (int v : vs) {
    for (int w : g.neighbors(v)) {
      if (!inside.count(w)) out.insert(w);
    }
  }
  return {out.begin(), out.end()};
}

// q_0 = q, q_{j+1} = R(q_j, q_j).  False when a link overflows long long.
bool ramsey_chain(long long q0, int steps, std::vector<long long>& out) {
  out.assign(1, q0);
  for (int j = 0; j < steps; ++j) {
    long long prev = out.back();
    if (prev > 1000000) return false;  // R(n, n) overflows far earlier
    long long next;
    try {
      next = ramsey(static_cast<int>(prev), static_cast<int>(prev)).value;
    } catch (const Error&) {
      return false;
    }
    out.push_back(next);
  }
  return true;
}

std::string chain_string(const std::vector<long long>& chain, bool fits) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += " -> ";
    s += std::to_string(chain[i]);
  }
  if (!fits) s += " -> overflow";
  return s;
}

nlohmann::json graph_json(const Graph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edge_list()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace

ChiRange chi_range(const Graph& g, const SolverLimits& lim) {
  ChiRange r;
  if (g.n() == 0) {
    r.exact = true;
    return r;
  }
  if (chromatic_feasible(g, lim)) {
    long long chi = chromatic_number(g, nullptr, lim);
    return {chi, chi, true};
  }
  return {greedy_clique_lower(g), degeneracy_colouring_upper(g), false};
}

std::string lollipop_violation(const Graph& g, const LollipopCert& cert) {
  if (!all_in_graph(g, cert.core) || !all_in_graph(g, cert.path) ||
      !all_in_graph(g, cert.stripe))
    return "unknown-vertex";

  std::vector<int> core = sorted_copy(cert.core);
  if (has_duplicates(core)) return "core-not-connected";
  if (!core.empty() && !graph_connected(g.induced(core)))
    return "core-not-connected";

  std::vector<int> path_sorted = sorted_copy(cert.path);
  if (has_duplicates(path_sorted)) return "path-not-induced";
  if (!path_is_induced(g, cert.path)) return "path-not-induced";

  if (!sorted_intersect(path_sorted, core).empty()) return "path-meets-core";

  if (cert.path.empty()) {
    if (cert.t != -1) return "t-without-path";
  } else {
    if (cert.t != cert.path.front() && cert.t != cert.path.back())
      return "t-not-a-path-end";
    if (!core.empty()) {
      auto sees_core = [&](int v) {
        for (int w : g.neighbors(v)) {
          if (sorted_contains(core, w)) return true;
        }
        return false;
      };
      if (!sees_core(cert.t)) return "t-misses-core";
      for (int v : cert.path) {
        if (v != cert.t && sees_core(v)) return "interior-sees-core";
      }
    }
  }

  std::vector<int> stripe_sorted = sorted_copy(cert.stripe);
  if (has_duplicates(stripe_sorted)) return "stripe-off-path";
  for (int s : cert.stripe) {
    if (!sorted_contains(path_sorted, s)) return "stripe-off-path";
  }
  for (std::size_t i = 0; i < cert.stripe.size(); ++i) {
    auto d = distances_from(g, {cert.stripe[i]});
    for (std::size_t j = i + 1; j < cert.stripe.size(); ++j) {
      auto it = d.find(cert.stripe[j]);
      if (it != d.end() && it->second < 8) return "stripe-pair-too-close";
    }
  }
  if (!core.empty() && !cert.stripe.empty()) {
    auto d = distances_from(g, core);
    for (int s : cert.stripe) {
      auto it = d.find(s);
      if (it != d.end() && it->second < 8) return "stripe-near-core";
    }
  }
  return "";
}

LollipopCert find_lollipop(const Graph& g, const std::vector<int>& C,
                           long long c, int k, long long kappa,
                           const SolverLimits& lim) {
  if (kappa < 1) throw Error("find_lollipop: kappa must be positive");
  if (c < 0) throw Error("find_lollipop: negative budget");
  if (k < 0) throw Error("find_lollipop: k must be non-negative");
  if (C.empty()) throw Error("find_lollipop: C is empty");
  for (int v : C) {
    if (!g.has_vertex(v))
      throw Error("find_lollipop: vertex " + std::to_string(v) +
                  " is not in the graph");
  }
  std::vector<int> Cs = sorted_copy(C);
  if (has_duplicates(Cs)) throw Error("find_lollipop: repeated vertex in C");
  Graph inC = g.induced(Cs);
  if (!graph_connected(inC)) throw Error("find_lollipop: C is not connected");

  LollipopCert cert;
  note_locality_claim(g, 8, kappa, lim, cert.chi_verified);

  long long need = sat_add(c, sat_mul(k, kappa));
  int verdict = threshold_verdict(inC, need, lim);
  if (verdict < 0)
    throw Error("find_lollipop: the chromatic number of C stays below " +
                std::to_string(need));
  if (verdict == 0) cert.chi_verified = false;

  if (k == 0) {
    cert.core = Cs;
    return cert;
  }

  std::vector<int> path;
  std::vector<int> stripe;
  std::vector<int> core = Cs;  // the current surviving component
  for (int j = 1; j <= k; ++j) {
    long long need_j = sat_add(c, sat_mul(k - j, kappa));
    if (j == 1) {
      int s1 = Cs.front();
      auto dist = distances_from(g, {s1});
      std::vector<int> cand;
      for (int v : core) {
        auto it = dist.find(v);
        if (it == dist.end() || it->second > 7) cand.push_back(v);
      }
      CompPick pick = pick_component(g.induced(cand), need_j, lim, "find_lollipop");
      if (!pick.proven) cert.chi_verified = false;
      if (pick.comp.empty()) {
        path = {s1};
        stripe = {s1};
        core.clear();
        continue;
      }
      std::unordered_set<int> tgt(pick.comp.begin(), pick.comp.end());
      path = path_to_boundary(inC, s1, tgt);
      if (path.empty())
        throw Error("find_lollipop: internal: no route to the chosen component");
      stripe = {s1};
      core = std::move(pick.comp);
    } else {
      if (core.empty())
        throw Error("find_lollipop: C is exhausted before stripe vertex " +
                    std::to_string(j));
      int tstar = path.back();
      auto dist = distances_from(g, {tstar});
      std::vector<int> cand;
      for (int v : core) {
        auto it = dist.find(v);
        if (it == dist.end() || it->second > 8) cand.push_back(v);
      }
      CompPick pick = pick_component(g.induced(cand), need_j, lim, "find_lollipop");
      if (!pick.proven) cert.chi_verified = false;
      if (pick.comp.empty())
        throw Error("find_lollipop: C is exhausted before stripe vertex " +
                    std::to_string(j));
      std::vector<int> search = core;
      search.push_back(tstar);
      std::sort(search.begin(), search.end());
      std::unordered_set<int> tgt(pick.comp.begin(), pick.comp.end());
      std::vector<int> ext = path_to_boundary(g.induced(search), tstar, tgt);
      if (ext.size() < 2)
        throw Error("find_lollipop: internal: empty path extension");
      stripe.push_back(ext[1]);
      path.insert(path.end(), ext.begin() + 1, ext.end());
      core = std::move(pick.comp);
    }
  }

  cert.path = path;
  cert.core = core;
  cert.t = path.back();
  cert.stripe = stripe;
  std::string bad = lollipop_violation(g, cert);
  if (!bad.empty())
    throw Error("find_lollipop: internal: certificate fails " + bad);
  return cert;
}

std::string distant_paths_violation(const Graph& g, const DistantPaths& cert) {
  if (cert.marks.size() != cert.paths.size()) return "marks-shape";
  for (std::size_t j = 1; j < cert.marks.size(); ++j) {
    if (cert.marks[j].size() != cert.marks[0].size()) return "marks-shape";
  }
  for (const auto& p : cert.paths) {
    if (!all_in_graph(g, p)) return "unknown-vertex";
  }
  for (const auto& p : cert.paths) {
    std::vector<int> s = sorted_copy(p);
    if (p.empty() || has_duplicates(s)) return "path-not-induced";
    if (!path_is_induced(g, p)) return "path-not-induced";
  }
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    auto d = distances_from(g, cert.paths[i]);
    for (std::size_t j = i + 1; j < cert.paths.size(); ++j) {
      for (int v : cert.paths[j]) {
        auto it = d.find(v);
        if (it != d.end() && it->second < 3) return "paths-too-close";
      }
    }
  }
  for (std::size_t j = 0; j < cert.marks.size(); ++j) {
    // marks must sit on their path in path order, without repeats
    std::size_t pos = 0;
    for (int m : cert.marks[j]) {
      while (pos < cert.paths[j].size() && cert.paths[j][pos] != m) ++pos;
      if (pos == cert.paths[j].size()) return "mark-off-path";
      ++pos;
    }
  }
  std::vector<int> all_marks;
  for (const auto& row : cert.marks)
    all_marks.insert(all_marks.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < all_marks.size(); ++i) {
    auto d = distances_from(g, {all_marks[i]});
    for (std::size_t j = i + 1; j < all_marks.size(); ++j) {
      auto it = d.find(all_marks[j]);
      if (it != d.end() && it->second < 8) return "marks-too-close";
    }
  }
  return "";
}

namespace {

// Exact minimum-span selection of q path positions whose vertices are
// pairwise >= 8 apart in the ambient graph.  Ties break to the earliest
// start, which the depth-first order delivers for free.
struct SpanSearch {
  const std::vector<std::vector<int>>& dist;  // pairwise path-vertex distances
  int n, q;
  std::vector<int> cur;
  std::vector<int> best;
  int best_span = INT_MAX;

  void run() { extend(0); }

  void extend(int from) {
    if (static_cast<int>(cur.size()) == q) {
      int span = cur.back() - cur.front();
      if (span < best_span) {
        best_span = span;
        best = cur;
      }
      return;
    }
    for (int p = from; p < n; ++p) {
      if (!cur.empty() && p - cur.front() >= best_span) break;
      bool ok = true;
      for (int chosen : cur) {
        if (dist[chosen][p] < 8) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cur.push_back(p);
      extend(p + 1);
      cur.pop_back();
    }
  }
};

}  // namespace

DistantPaths find_distant_paths(const Graph& g, const std::vector<int>& C,
                                int q, int h, long long kappa,
                                const SolverLimits& lim) {
  if (kappa < 1) throw Error("find_distant_paths: kappa must be positive");
  if (q < 0 || h < 0)
    throw Error("find_distant_paths: negative dimensions");
  DistantPaths out;
  if (h == 0) return out;
  for (int v : C) {
    if (!g.has_vertex(v))
      throw Error("find_distant_paths: vertex " + std::to_string(v) +
                  " is not in the graph");
  }
  note_locality_claim(g, 9, kappa, lim, out.chi_verified);

  std::vector<int> cur = sorted_copy(C);
  long long budget = sat_mul(sat_mul(q, h), kappa);
  int verdict = threshold_verdict(g.induced(cur), budget, lim);
  if (verdict < 0)
    throw Error("find_distant_paths: the chromatic number of C stays below " +
                std::to_string(budget));
  if (verdict == 0) out.chi_verified = false;

  int q_eff = std::max(q, 1);
  for (int level = 1; level <= h; ++level) {
    long long after = sat_mul(sat_mul(q_eff, h - level), kappa);
    LollipopCert lp = find_lollipop(g, cur, after, q_eff, kappa, lim);
    out.chi_verified = out.chi_verified && lp.chi_verified;

    const std::vector<int>& P = lp.path;
    int n = static_cast<int>(P.size());
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, INT_MAX));
    for (int i = 0; i < n; ++i) {
      auto d = distances_from(g, {P[i]});
      for (int j = 0; j < n; ++j) {
        auto it = d.find(P[j]);
        if (it != d.end()) dist[i][j] = it->second;
      }
    }
    SpanSearch search{dist, n, q_eff, {}, {}, INT_MAX};
    search.run();
    if (search.best.empty())
      throw Error("find_distant_paths: internal: no spaced marks on the path");

    std::vector<int> marks;
    for (int p : search.best) marks.push_back(P[p]);
    std::vector<int> kept(P.begin() + search.best.front(),
                          P.begin() + search.best.back() + 1);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      int at = search.best.front() + static_cast<int>(i);
      bool covered = false;
      for (int p : search.best) {
        if (dist[p][at] <= 7) {
          covered = true;
          break;
        }
      }
      if (!covered)
        throw Error(
            "find_distant_paths: internal: the marked stretch is not covered "
            "by its marks");
    }
    out.paths.push_back(kept);
    out.marks.push_back(q == 0 ? std::vector<int>{} : marks);

    if (level < h) {
      auto d = distances_from(g, marks);
      std::vector<int> cand;
      for (int v : cur) {
        auto it = d.find(v);
        if (it == d.end() || it->second > 9) cand.push_back(v);
      }
      CompPick pick =
          pick_component(g.induced(cand), after, lim, "find_distant_paths");
      if (!pick.proven) out.chi_verified = false;
      if (pick.comp.empty())
        throw Error("find_distant_paths: C is exhausted after level " +
                    std::to_string(level));
      cur = std::move(pick.comp);
    }
  }

  std::string bad = distant_paths_violation(g, out);
  if (!bad.empty())
    throw Error("find_distant_paths: internal: certificate fails " + bad);
  return out;
}

std::string long_cover_violation(const Graph& g, const LongCoverCert& cert) {
  for (const auto& cov : cert.covers) {
    for (const auto& lvl : cov.level) {
      if (!all_in_graph(g, lvl)) return "unknown-vertex";
    }
  }
  if (!all_in_graph(g, cert.covered)) return "unknown-vertex";

  std::vector<std::vector<int>> cover_all;
  for (const auto& cov : cert.covers) {
    std::vector<int> all;
    for (const auto& lvl : cov.level) {
      std::vector<int> s = sorted_copy(lvl);
      if (has_duplicates(s)) return "layers-overlap";
      all.insert(all.end(), s.begin(), s.end());
    }
    std::sort(all.begin(), all.end());
    if (has_duplicates(all)) return "layers-overlap";
    cover_all.push_back(std::move(all));
  }

  for (const auto& cov : cert.covers) {
    if (cov.level[0].empty() || !graph_connected(g.induced(cov.level[0])))
      return "level0-disconnected";
    for (int k = 0; k < 3; ++k) {
      std::vector<int> lower = sorted_copy(cov.level[k]);
      for (int v : cov.level[k + 1]) {
        bool attached = false;
        for (int w : g.neighbors(v)) {
          if (sorted_contains(lower, w)) {
            attached = true;
            break;
          }
        }
        if (!attached) return "cover-chain-broken";
      }
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 2; b < 4; ++b) {
        std::vector<int> hi = sorted_copy(cov.level[b]);
        for (int v : cov.level[a]) {
          for (int w : g.neighbors(v)) {
            if (sorted_contains(hi, w)) return "layer-skip-edge";
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < cover_all.size(); ++i) {
    for (std::size_t j = i + 1; j < cover_all.size(); ++j) {
      if (!sorted_intersect(cover_all[i], cover_all[j]).empty())
        return "covers-overlap";
    }
  }
  for (std::size_t i = 0; i < cert.covers.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.covers.size(); ++j) {
      // the later (outer) cover keeps its inner three layers off all of i
      for (int lvl = 0; lvl < 3; ++lvl) {
        for (int v : cert.covers[j].level[lvl]) {
          for (int w : g.neighbors(v)) {
            if (sorted_contains(cover_all[i], w)) return "covers-touch";
          }
        }
      }
    }
  }

  std::vector<int> covered = sorted_copy(cert.covered);
  if (has_duplicates(covered)) return "covered-overlaps-cover";
  for (const auto& all : cover_all) {
    if (!sorted_intersect(covered, all).empty())
      return "covered-overlaps-cover";
  }
  if (!covered.empty()) {
    for (const auto& cov : cert.covers) {
      std::vector<int> outer = sorted_copy(cov.level[3]);
      for (int v : covered) {
        bool hit = false;
        for (int w : g.neighbors(v)) {
          if (sorted_contains(outer, w)) {
            hit = true;
            break;
          }
        }
        if (!hit) return "covered-uncovered";
      }
    }
    for (const auto& cov : cert.covers) {
      for (int lvl = 0; lvl < 3; ++lvl) {
        for (int v : cov.level[lvl]) {
          for (int w : g.neighbors(v)) {
            if (sorted_contains(covered, w))
              return "covered-touches-inner-layer";
          }
        }
      }
    }
  }
  return "";
}

std::string dangling_violation(const Graph& g, const LongCoverCert& cert) {
  std::string base = long_cover_violation(g, cert);
  if (!base.empty()) return base;

  for (const auto& p : cert.paths) {
    if (!all_in_graph(g, p)) return "unknown-vertex";
  }
  std::vector<int> cover_union;
  for (const auto& cov : cert.covers) {
    for (const auto& lvl : cov.level)
      cover_union.insert(cover_union.end(), lvl.begin(), lvl.end());
  }
  std::sort(cover_union.begin(), cover_union.end());
  std::vector<int> path_union;
  for (const auto& p : cert.paths)
    path_union.insert(path_union.end(), p.begin(), p.end());
  std::vector<int> path_sorted = sorted_copy(path_union);
  if (has_duplicates(path_sorted)) return "paths-overlap";
  if (!sorted_intersect(path_sorted, cover_union).empty() ||
      !sorted_intersect(path_sorted, sorted_copy(cert.covered)).empty())
    return "paths-overlap";

  for (const auto& p : cert.paths) {
    if (p.empty() || !path_is_induced(g, p)) return "path-not-induced";
  }
  for (std::size_t i = 0; i < cert.paths.size(); ++i) {
    std::vector<int> pi = sorted_copy(cert.paths[i]);
    for (std::size_t j = i + 1; j < cert.paths.size(); ++j) {
      for (int v : cert.paths[j]) {
        for (int w : g.neighbors(v)) {
          if (sorted_contains(pi, w)) return "paths-touch";
        }
      }
    }
  }

  if (cert.marks.size() != cert.covers.size()) return "marks-shape";
  for (const auto& row : cert.marks) {
    if (row.size() != cert.paths.size()) return "marks-shape";
  }
  for (std::size_t i = 0; i < cert.marks.size(); ++i) {
    std::vector<int> outer = sorted_copy(cert.covers[i].level[3]);
    std::vector<int> row = sorted_copy(cert.marks[i]);
    if (has_duplicates(row)) return "mark-off-layer";
    for (int m : cert.marks[i]) {
      if (!sorted_contains(outer, m)) return "mark-off-layer";
    }
  }

  std::vector<int> all_marks;
  for (const auto& row : cert.marks)
    all_marks.insert(all_marks.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < all_marks.size(); ++i) {
    auto d = distances_from(g, {all_marks[i]});
    for (std::size_t j = i + 1; j < all_marks.size(); ++j) {
      auto it = d.find(all_marks[j]);
      if (it != d.end() && it->second < 6) return "marks-too-close";
    }
  }

  std::vector<int> hood = sorted_union(cover_union, path_sorted);
  Graph H = g.induced(hood);
  for (std::size_t j = 0; j < cert.paths.size(); ++j) {
    std::vector<int> column;
    for (const auto& row : cert.marks) column.push_back(row[j]);
    std::sort(column.begin(), column.end());
    if (outside_neighbourhood(H, cert.paths[j]) != column)
      return "dangling-broken";
  }
  return "";
}

namespace {

void cover_rec(const Graph& g_cur, int q, long long c, long long kappa,
               const SolverLimits& lim, LongCoverCert& out) {
  const std::string who = "find_long_q_cover";
  long long base = std::max(c, kappa);
  if (q == 0) {
    CompPick pick = pick_component(g_cur, c, lim, who);
    if (!pick.proven) out.chi_verified = false;
    out.covered = std::move(pick.comp);
    return;
  }
  long long pre = sat_add(sat_mul(sat_pow2(q), base), 1);
  CompPick pick = pick_component(g_cur, pre, lim, who);
  if (!pick.proven) out.chi_verified = false;
  Graph comp = g_cur.induced(pick.comp);
  int v = pick.comp.front();

  long long thr = sat_mul(sat_pow2(q - 1), base);
  int t = -1;
  for (int lvl = 1;; ++lvl) {
    std::vector<int> ring = sphere(comp, v, lvl);
    if (ring.empty())
      throw Error(who + ": no level beats the scan threshold " +
                  std::to_string(thr));
    ChiRange r = chi_range(comp.induced(ring), lim);
    if (r.proves_above(thr)) {
      t = lvl;
      break;
    }
    if (!r.proves_at_most(thr))
      throw Error(who + ": level " + std::to_string(lvl) +
                  " chromatic range [" + std::to_string(r.lower) + ", " +
                  std::to_string(r.upper) + "] straddles the scan threshold " +
                  std::to_string(thr));
  }
  if (t < 4)
    throw Error(who + ": the threshold falls at level " + std::to_string(t) +
                ", too close for the radius-3 locality bound");

  CoverLayers lay;
  lay.level[0] = ball(comp, v, t - 4);
  for (int i = 1; i <= 3; ++i) lay.level[i] = sphere(comp, v, t - 4 + i);

  cover_rec(comp.induced(sphere(comp, v, t)), q - 1, c, kappa, lim, out);
  out.covers.push_back(std::move(lay));
}

}  // namespace

LongCoverCert find_long_q_cover(const Graph& g, int q, long long c,
                                long long kappa, const SolverLimits& lim) {
  if (kappa < 1) throw Error("find_long_q_cover: kappa must be positive");
  if (c < 0) throw Error("find_long_q_cover: negative budget");
  if (q < 0) throw Error("find_long_q_cover: q must be non-negative");
  LongCoverCert out;
  note_locality_claim(g, 3, kappa, lim, out.chi_verified);
  cover_rec(g, q, c, kappa, lim, out);
  std::string bad = long_cover_violation(g, out);
  if (!bad.empty())
    throw Error("find_long_q_cover: internal: certificate fails " + bad);
  return out;
}

LongCoverCert attach_dangling_paths(const Graph& g, int q, int h,
                                    long long kappa, const SolverLimits& lim) {
  if (h < 1) throw Error("attach_dangling_paths: h must be positive");
  if (q < 0) throw Error("attach_dangling_paths: q must be non-negative");
  long long c = sat_mul(sat_mul(q, h), kappa);
  LongCoverCert cover = find_long_q_cover(g, q, c, kappa, lim);
  DistantPaths dp = find_distant_paths(g, cover.covered, q, h, kappa, lim);
  cover.chi_verified = cover.chi_verified && dp.chi_verified;

  std::vector<int> path_union;
  for (const auto& p : dp.paths)
    path_union.insert(path_union.end(), p.begin(), p.end());
  std::sort(path_union.begin(), path_union.end());

  cover.marks.assign(cover.covers.size(), {});
  if (q >= 1) {
    for (std::size_t i = 0; i < cover.covers.size(); ++i) {
      std::vector<int> outer = sorted_copy(cover.covers[i].level[3]);
      for (int j = 0; j < h; ++j) {
        int anchor = dp.marks[j][i];
        int contact = -1;
        for (int w : g.neighbors(anchor)) {
          if (sorted_contains(outer, w)) {
            contact = w;
            break;
          }
        }
        if (contact < 0)
          throw Error(
              "attach_dangling_paths: internal: a path mark misses the outer "
              "layer");
        cover.marks[i].push_back(contact);
      }
    }
  }

  for (std::size_t i = 0; i < cover.covers.size(); ++i) {
    std::vector<int> row = sorted_copy(cover.marks[i]);
    std::vector<int> kept;
    for (int v : cover.covers[i].level[3]) {
      bool touches_path = false;
      for (int w : g.neighbors(v)) {
        if (sorted_contains(path_union, w)) {
          touches_path = true;
          break;
        }
      }
      if (!touches_path || sorted_contains(row, v)) kept.push_back(v);
    }
    cover.covers[i].level[3] = std::move(kept);
    for (int lvl = 0; lvl < 3; ++lvl) {
      for (int v : cover.covers[i].level[lvl]) {
        for (int w : g.neighbors(v)) {
          if (sorted_contains(path_union, w))
            throw Error(
                "attach_dangling_paths: internal: a path touches an inner "
                "layer");
        }
      }
    }
  }

  cover.covered.clear();
  cover.paths = dp.paths;
  std::string bad = dangling_violation(g, cover);
  if (!bad.empty())
    throw Error("attach_dangling_paths: internal: certificate fails " + bad);
  return cover;
}

ParityResult fix_parity(const Graph& g, const std::vector<int>& path,
                        const std::vector<int>& X) {
  if (path.empty()) throw Error("fix_parity: the path is empty");
  for (int v : path) {
    if (!g.has_vertex(v))
      throw Error("fix_parity: vertex " + std::to_string(v) +
                  " is not in the graph");
  }
  for (int v : X) {
    if (!g.has_vertex(v))
      throw Error("fix_parity: vertex " + std::to_string(v) +
                  " is not in the graph");
  }
  if (!path_is_induced(g, path) || has_duplicates(sorted_copy(path)))
    throw Error("fix_parity: the path is not induced");
  std::vector<int> Xs = sorted_copy(X);
  if (has_duplicates(Xs)) throw Error("fix_parity: repeated vertex in X");
  if (outside_neighbourhood(g, path) != Xs)
    throw Error("fix_parity: the path does not dangle from X");
  for (std::size_t i = 0; i < Xs.size(); ++i) {
    for (std::size_t j = i + 1; j < Xs.size(); ++j) {
      if (g.adjacent(Xs[i], Xs[j])) throw Error("fix_parity: X is not stable");
    }
  }

  std::vector<int> path_sorted = sorted_copy(path);
  auto attach_count = [&](const Graph& cur, int x,
                          const std::vector<int>& p) {
    int count = 0;
    for (int w : cur.neighbors(x)) {
      if (std::find(p.begin(), p.end(), w) != p.end()) ++count;
    }
    return count;
  };

  std::vector<int> evens;
  for (int x : Xs) {
    if (attach_count(g, x, path) % 2 == 0) evens.push_back(x);
  }
  for (std::size_t i = 0; i < evens.size(); ++i) {
    auto d = distances_from(g, {evens[i]});
    for (std::size_t j = i + 1; j < evens.size(); ++j) {
      auto it = d.find(evens[j]);
      if (it != d.end() && it->second < 3)
        throw Error("fix_parity: even-attachment vertices " +
                    std::to_string(evens[i]) + " and " +
                    std::to_string(evens[j]) + " are too close");
    }
  }

  Graph cur = g;
  Trace trace;
  std::vector<int> p = path;
  for (int x : evens) {
    // a usable path vertex sees x and no other member of X
    auto exclusive = [&](int y) {
      for (int w : cur.neighbors(y)) {
        if (w != x && sorted_contains(Xs, w)) return false;
      }
      return cur.adjacent(x, y);
    };
    int pos = -1;
    if (exclusive(p.front())) {
      pos = 0;
    } else if (p.size() > 1 && exclusive(p.back())) {
      pos = static_cast<int>(p.size()) - 1;
    } else {
      for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (exclusive(p[i])) {
          pos = static_cast<int>(i);
          break;
        }
      }
    }
    if (pos < 0)
      throw Error("fix_parity: vertex " + std::to_string(x) +
                  " shares every path neighbour");
    int y = p[pos];
    if (pos == 0 || pos == static_cast<int>(p.size()) - 1) {
      trace.del(y);
      cur = cur.minus_vertex(y);
    } else {
      trace.lc(y);
      cur = local_complement(cur, y);
      trace.del(y);
      cur = cur.minus_vertex(y);
    }
    p.erase(p.begin() + pos);
  }

  for (int x : Xs) {
    if (attach_count(cur, x, p) % 2 == 0)
      throw Error("fix_parity: internal: a parity stayed even");
  }
  std::vector<int> rest = sorted_minus(g.vertices(), path_sorted);
  if (g.induced(rest) != cur.induced(rest))
    throw Error("fix_parity: internal: the graph outside the path moved");
  return {std::move(cur), std::move(trace), std::move(p)};
}

ContractPathResult contract_dangling_path(const Graph& g,
                                          const std::vector<int>& path,
                                          const std::vector<int>& X, int q) {
  if (q < 1) throw Error("contract_dangling_path: q must be positive");
  if (path.empty()) throw Error("contract_dangling_path: the path is empty");
  for (int v : path) {
    if (!g.has_vertex(v))
      throw Error("contract_dangling_path: vertex " + std::to_string(v) +
                  " is not in the graph");
  }
  if (!path_is_induced(g, path) || has_duplicates(sorted_copy(path)))
    throw Error("contract_dangling_path: the path is not induced");
  std::vector<int> Xs = sorted_copy(X);
  if (outside_neighbourhood(g, path) != Xs)
    throw Error("contract_dangling_path: the path does not dangle from X");

  bool ramsey_known = true;
  long long need = 0;
  try {
    need = ramsey(q, q).value;
  } catch (const Error&) {
    ramsey_known = false;
  }
  if (!ramsey_known)
    throw Error("contract_dangling_path: the attachment set of size " +
                std::to_string(Xs.size()) +
                " cannot meet the Ramsey bound for q = " + std::to_string(q));
  if (static_cast<long long>(Xs.size()) < need)
    throw Error("contract_dangling_path: the attachment set of size " +
                std::to_string(Xs.size()) + " is below the Ramsey bound " +
                std::to_string(need));

  auto attach_count = [&](int x) {
    int count = 0;
    for (int w : g.neighbors(x)) {
      if (std::find(path.begin(), path.end(), w) != path.end()) ++count;
    }
    return count;
  };
  bool any_even = false;
  for (int x : Xs) {
    if (attach_count(x) % 2 == 0) {
      any_even = true;
      break;
    }
  }

  Graph cur = g;
  Trace trace;
  std::vector<int> p = path;
  if (any_even) {
    for (std::size_t i = 0; i < Xs.size(); ++i) {
      auto d = distances_from(g, {Xs[i]});
      for (std::size_t j = i + 1; j < Xs.size(); ++j) {
        auto it = d.find(Xs[j]);
        if (it != d.end() && it->second < 6)
          throw Error("contract_dangling_path: X is not spacious");
      }
    }
    ParityResult pr = fix_parity(g, path, Xs);
    cur = std::move(pr.graph);
    trace = std::move(pr.trace);
    p = std::move(pr.path);
  }

  while (p.size() > 1) {
    int v = p.back();
    trace.lc(v);
    cur = local_complement(cur, v);
    trace.del(v);
    cur = cur.minus_vertex(v);
    p.pop_back();
  }
  int hub = p.front();

  Graph xg = cur.induced(Xs);
  std::vector<int> Y;
  bool stable = true;
  if (auto st = find_stable_set(xg, q)) {
    Y = *st;
  } else if (auto cl = find_clique(xg, q)) {
    Y = *cl;
    stable = false;
  } else {
    throw Error("contract_dangling_path: internal: the Ramsey promise broke");
  }
  std::sort(Y.begin(), Y.end());
  for (int v : sorted_minus(Xs, Y)) {
    trace.del(v);
    cur = cur.minus_vertex(v);
  }
  if (!stable) {
    trace.lc(hub);
    cur = local_complement(cur, hub);
  }

  // Replays must agree with the contraction formula computed directly on the
  // input: delete the losers and Y's internal edges, contract the original
  // path, rename the surviving vertex.
  Graph formula = g;
  for (int v : sorted_minus(Xs, Y)) formula = formula.minus_vertex(v);
  for (std::size_t i = 0; i < Y.size(); ++i) {
    for (std::size_t j = i + 1; j < Y.size(); ++j) {
      if (g.adjacent(Y[i], Y[j])) formula = formula.minus_edge(Y[i], Y[j]);
    }
  }
  if (path.size() > 1) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      edges.push_back({path[i], path[i + 1]});
    formula = contract_edges(formula, edges);
  }
  int survivor = *std::min_element(path.begin(), path.end());
  if (survivor != hub) formula = relabel(formula, {{survivor, hub}});
  if (formula != cur)
    throw Error(
        "contract_dangling_path: internal: replay disagrees with the "
        "contraction formula");
  if (apply_trace(g, trace) != cur)
    throw Error(
        "contract_dangling_path: internal: the trace does not replay to the "
        "result");
  return {std::move(Y), std::move(cur), std::move(trace), hub};
}

std::string frame_violation(const FrameCert& cert) {
  const Graph& F = cert.graph;
  std::size_t q = cert.trees.size();
  std::size_t h = cert.hubs.size();
  if (cert.marks.size() != q) return "frame-shape";
  for (const auto& row : cert.marks) {
    if (row.size() != h) return "frame-shape";
  }
  for (const auto& t : cert.trees) {
    if (t.empty() || !all_in_graph(F, t)) return "frame-shape";
  }
  for (const auto& row : cert.marks) {
    if (!all_in_graph(F, row)) return "frame-shape";
  }
  if (!all_in_graph(F, cert.hubs)) return "frame-shape";

  std::vector<int> everything;
  for (const auto& t : cert.trees)
    everything.insert(everything.end(), t.begin(), t.end());
  for (const auto& row : cert.marks)
    everything.insert(everything.end(), row.begin(), row.end());
  everything.insert(everything.end(), cert.hubs.begin(), cert.hubs.end());
  std::sort(everything.begin(), everything.end());
  if (has_duplicates(everything) || everything != F.vertices())
    return "frame-not-a-partition";

  for (const auto& t : cert.trees) {
    if (!graph_connected(F.induced(t))) return "tree-disconnected";
  }
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<int> ti = sorted_copy(cert.trees[i]);
    for (std::size_t j = i + 1; j < q; ++j) {
      for (int v : cert.trees[j]) {
        for (int w : F.neighbors(v)) {
          if (sorted_contains(ti, w)) return "trees-touch";
        }
      }
    }
  }

  for (std::size_t i = 0; i < q; ++i) {
    std::vector<int> ti = sorted_copy(cert.trees[i]);
    for (std::size_t j = 0; j < h; ++j) {
      int m = cert.marks[i][j];
      std::vector<int> anchors;
      for (int w : F.neighbors(m)) {
        if (sorted_contains(ti, w)) anchors.push_back(w);
      }
      if (anchors.size() != 1) return "mark-anchor-count";
      if (F.degree(anchors.front()) != 2) return "anchor-degree";
      for (int w : F.neighbors(m)) {
        if (w == anchors.front()) continue;
        if (w == cert.hubs[j]) continue;
        bool forward = false;
        for (std::size_t l = 0; l < i; ++l) {
          if (sorted_contains(sorted_copy(cert.trees[l]), w)) {
            forward = true;
            break;
          }
        }
        if (!forward) return "mark-forward-edge";
      }
    }
  }

  for (std::size_t j = 0; j < h; ++j) {
    std::vector<int> column;
    for (const auto& row : cert.marks) column.push_back(row[j]);
    std::sort(column.begin(), column.end());
    if (F.neighbors(cert.hubs[j]) != column) return "hub-neighbourhood";
  }

  Graph no_hubs = F.minus_vertices(sorted_copy(cert.hubs));
  std::vector<int> all_marks;
  for (const auto& row : cert.marks)
    all_marks.insert(all_marks.end(), row.begin(), row.end());
  for (std::size_t i = 0; i < all_marks.size(); ++i) {
    auto d = distances_from(no_hubs, {all_marks[i]});
    for (std::size_t j = i + 1; j < all_marks.size(); ++j) {
      auto it = d.find(all_marks[j]);
      if (it != d.end() && it->second < 6) return "marks-too-close";
    }
  }

  if (cert.flavor == FrameFlavor::Frame) return "";

  for (std::size_t i = 0; i < q; ++i) {
    std::vector<int> t =
        sorted_union(sorted_copy(cert.trees[i]), sorted_copy(cert.marks[i]));
    BloatedAnalysis analysis = analyze_bloated_tree(F, t);
    if (!analysis.decomp) return "tree-not-bloated";
    if (analysis.decomp->leaves != sorted_copy(cert.marks[i]))
      return "stray-leaf";
    Graph sub = F.induced(t);
    std::vector<std::vector<int>> features;
    for (const auto& c : analysis.decomp->big_cliques) features.push_back(c);
    for (int b : analysis.decomp->branching) features.push_back({b});
    for (std::size_t a = 0; a < features.size(); ++a) {
      auto d = distances_from(sub, features[a]);
      for (std::size_t b = a + 1; b < features.size(); ++b) {
        for (int v : features[b]) {
          auto it = d.find(v);
          if (it != d.end() && it->second < 4) return "features-too-close";
        }
      }
    }
    if (cert.flavor == FrameFlavor::Pure) {
      if (classify_interface(F, *analysis.decomp).classification !=
          ShrinkClass::Shrinkable)
        return "tree-not-shrinkable";
    }
  }
  return "";
}

FrameExtraction extract_frame(const Graph& g, const LongCoverCert& cover,
                              int q, int h) {
  if (q < 1) throw Error("extract_frame: q must be positive");
  if (h < 1) throw Error("extract_frame: h must be positive");
  std::string bad = dangling_violation(g, cover);
  if (!bad.empty())
    throw Error("extract_frame: the certificate fails " + bad);
  if (static_cast<int>(cover.paths.size()) != h)
    throw Error("extract_frame: the certificate carries " +
                std::to_string(cover.paths.size()) + " paths, needs " +
                std::to_string(h));

  std::vector<long long> chain;
  bool fits = ramsey_chain(q, h, chain);
  if (!fits)
    throw Error("extract_frame: the Ramsey chain " +
                chain_string(chain, false) + " overflows; the certificate has " +
                std::to_string(cover.covers.size()) + " covers");
  long long qprime = chain.back();
  if (static_cast<long long>(cover.covers.size()) < qprime)
    throw Error("extract_frame: the Ramsey chain " + chain_string(chain, true) +
                " needs " + std::to_string(qprime) +
                " covers, the certificate has " +
                std::to_string(cover.covers.size()));
  int Q = static_cast<int>(qprime);

  // anchors two layers deep under every kept mark
  std::vector<std::vector<int>> ys(Q, std::vector<int>(h, -1));
  std::vector<std::vector<int>> zs(Q, std::vector<int>(h, -1));
  for (int i = 0; i < Q; ++i) {
    std::vector<int> l2 = sorted_copy(cover.covers[i].level[2]);
    std::vector<int> l1 = sorted_copy(cover.covers[i].level[1]);
    for (int j = 0; j < h; ++j) {
      for (int w : g.neighbors(cover.marks[i][j])) {
        if (sorted_contains(l2, w)) {
          ys[i][j] = w;
          break;
        }
      }
      if (ys[i][j] < 0)
        throw Error("extract_frame: internal: a mark misses its second layer");
      for (int w : g.neighbors(ys[i][j])) {
        if (sorted_contains(l1, w)) {
          zs[i][j] = w;
          break;
        }
      }
      if (zs[i][j] < 0)
        throw Error("extract_frame: internal: an anchor misses its first layer");
    }
  }

  std::set<int> keep;
  for (int i = 0; i < Q; ++i) {
    keep.insert(cover.covers[i].level[0].begin(),
                cover.covers[i].level[0].end());
    for (int j = 0; j < h; ++j) {
      keep.insert(ys[i][j]);
      keep.insert(zs[i][j]);
      keep.insert(cover.marks[i][j]);
    }
  }
  for (const auto& p : cover.paths) keep.insert(p.begin(), p.end());

  Graph cur = g;
  Trace trace;
  for (int v : g.vertices()) {
    if (!keep.count(v)) {
      trace.del(v);
      cur = cur.minus_vertex(v);
    }
  }

  std::vector<int> alive(Q);
  for (int i = 0; i < Q; ++i) alive[i] = i;
  std::vector<int> hubs(h, -1);
  for (int j = 0; j < h; ++j) {
    long long target = chain[h - 1 - j];
    std::vector<int> X;
    for (int i : alive) X.push_back(cover.marks[i][j]);
    std::sort(X.begin(), X.end());
    ContractPathResult res = contract_dangling_path(
        cur, cover.paths[j], X, static_cast<int>(target));
    cur = std::move(res.graph);
    trace.append(res.trace);
    hubs[j] = res.hub;

    std::vector<int> survivors;
    for (int i : alive) {
      if (sorted_contains(res.kept, cover.marks[i][j])) survivors.push_back(i);
    }
    if (static_cast<long long>(survivors.size()) != target)
      throw Error("extract_frame: internal: the contraction kept " +
                  std::to_string(survivors.size()) + " covers, promised " +
                  std::to_string(target));
    for (int i : sorted_minus(alive, survivors)) {
      std::vector<int> pieces(cover.covers[i].level[0]);
      for (int jj = 0; jj < h; ++jj) {
        pieces.push_back(ys[i][jj]);
        pieces.push_back(zs[i][jj]);
        pieces.push_back(cover.marks[i][jj]);
      }
      std::sort(pieces.begin(), pieces.end());
      for (int v : pieces) {
        if (cur.has_vertex(v)) {
          trace.del(v);
          cur = cur.minus_vertex(v);
        }
      }
    }
    alive = std::move(survivors);
  }

  FrameCert fc;
  fc.graph = cur;
  fc.hubs = hubs;
  for (int i : alive) {
    std::vector<int> tree(cover.covers[i].level[0]);
    for (int j = 0; j < h; ++j) {
      tree.push_back(ys[i][j]);
      tree.push_back(zs[i][j]);
    }
    std::sort(tree.begin(), tree.end());
    fc.trees.push_back(std::move(tree));
    fc.marks.push_back(cover.marks[i]);
  }

  fc.flavor = FrameFlavor::Pure;
  if (!frame_violation(fc).empty()) {
    fc.flavor = FrameFlavor::Trimmed;
    if (!frame_violation(fc).empty()) {
      fc.flavor = FrameFlavor::Frame;
      std::string base = frame_violation(fc);
      if (!base.empty())
        throw Error("extract_frame: internal: frame validation failed (" +
                    base + ")");
    }
  }
  if (apply_trace(g, trace) != cur)
    throw Error(
        "extract_frame: internal: the trace does not replay to the frame");
  return {std::move(fc), std::move(trace)};
}

FrameCert purify_frame(const FrameCert& f, int q, int h) {
  if (f.flavor == FrameFlavor::Pure) {
    std::string bad = frame_violation(f);
    if (!bad.empty()) throw Error("purify_frame: the frame fails " + bad);
    return f;
  }
  if (q < 1) throw Error("purify_frame: q must be positive");
  if (static_cast<int>(f.hubs.size()) != h)
    throw Error("purify_frame: the frame carries " +
                std::to_string(f.hubs.size()) + " hubs, not " +
                std::to_string(h));
  if (h < 2)
    throw Error("purify_frame: needs at least two hubs, got " +
                std::to_string(h));
  if (f.flavor != FrameFlavor::Trimmed)
    throw Error("purify_frame: frame is not trimmed");
  std::string bad = frame_violation(f);
  if (!bad.empty()) throw Error("purify_frame: the frame fails " + bad);
  long long want = static_cast<long long>(q) * (3LL * h - 5);
  if (static_cast<long long>(f.trees.size()) < want)
    throw Error("purify_frame: " + std::to_string(f.trees.size()) +
                " trees are too few; purification starts from " +
                std::to_string(want));

  int T = static_cast<int>(f.trees.size());
  std::unordered_map<int, int> tree_of;
  for (int i = 0; i < T; ++i) {
    for (int v : f.trees[i]) tree_of[v] = i;
  }
  // distance to the nearest feature, measured inside each tree
  std::vector<std::unordered_map<int, int>> feature_dist(T);
  for (int i = 0; i < T; ++i) {
    std::vector<int> t =
        sorted_union(sorted_copy(f.trees[i]), sorted_copy(f.marks[i]));
    BloatedAnalysis analysis = analyze_bloated_tree(f.graph, t);
    if (!analysis.decomp)
      throw Error("purify_frame: internal: a trimmed tree stopped analysing");
    std::vector<int> features;
    for (const auto& c : analysis.decomp->big_cliques)
      features.insert(features.end(), c.begin(), c.end());
    features.insert(features.end(), analysis.decomp->branching.begin(),
                    analysis.decomp->branching.end());
    feature_dist[i] = distances_from(f.graph.induced(t), features);
  }

  std::set<std::pair<int, int>> aux_edges;
  for (int j = 0; j < T; ++j) {
    for (int m : f.marks[j]) {
      for (int u : f.graph.neighbors(m)) {
        auto it = tree_of.find(u);
        if (it == tree_of.end() || it->second == j) continue;
        int i = it->second;
        auto d = feature_dist[i].find(u);
        if (d != feature_dist[i].end() && d->second <= 3)
          aux_edges.insert({std::min(i, j), std::max(i, j)});
      }
    }
  }

  // degeneracy-ordered greedy colouring of the interference pattern
  std::vector<std::set<int>> adj(T);
  for (const auto& [a, b] : aux_edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<int> deg(T);
  std::vector<bool> gone(T, false);
  for (int i = 0; i < T; ++i) deg[i] = static_cast<int>(adj[i].size());
  std::vector<int> order;
  for (int step = 0; step < T; ++step) {
    int pick = -1, best = INT_MAX;
    for (int i = 0; i < T; ++i) {
      if (!gone[i] && deg[i] < best) {
        best = deg[i];
        pick = i;
      }
    }
    gone[pick] = true;
    order.push_back(pick);
    for (int w : adj[pick]) {
      if (!gone[w]) --deg[w];
    }
  }
  std::vector<int> colour(T, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> taken;
    for (int w : adj[*it]) {
      if (colour[w] >= 0) taken.insert(colour[w]);
    }
    int c = 0;
    while (taken.count(c)) ++c;
    colour[*it] = c;
  }
  std::map<int, std::vector<int>> classes;
  for (int i = 0; i < T; ++i) classes[colour[i]].push_back(i);
  std::vector<int> best_class;
  for (auto& [c, members] : classes) {
    std::sort(members.begin(), members.end());
    if (members.size() > best_class.size() ||
        (members.size() == best_class.size() && !best_class.empty() &&
         members.front() < best_class.front()))
      best_class = members;
  }
  if (static_cast<int>(best_class.size()) < q)
    throw Error(
        "purify_frame: auxiliary graph too dense; the largest colour class "
        "holds " +
        std::to_string(best_class.size()) + " trees, needs " +
        std::to_string(q));
  best_class.resize(q);

  std::vector<int> dropped;
  for (int i = 0; i < T; ++i) {
    if (std::find(best_class.begin(), best_class.end(), i) != best_class.end())
      continue;
    dropped.insert(dropped.end(), f.trees[i].begin(), f.trees[i].end());
    dropped.insert(dropped.end(), f.marks[i].begin(), f.marks[i].end());
  }
  std::sort(dropped.begin(), dropped.end());

  FrameCert out;
  out.graph = f.graph.minus_vertices(dropped);
  for (int i : best_class) {
    out.trees.push_back(f.trees[i]);
    out.marks.push_back(f.marks[i]);
  }
  out.hubs = f.hubs;
  out.flavor = FrameFlavor::Pure;
  std::string still = frame_violation(out);
  if (!still.empty())
    throw Error("purify_frame: the surviving trees still interfere (" + still +
                ")");
  return out;
}

std::string interfered_violation(const InterferedCert& cert) {
  const Graph& G = cert.graph;
  std::size_t n = cert.xs.size();
  std::size_t m = cert.ys.size();
  if (n == 0 || m == 0) return "shape";
  if (cert.zs.size() != n) return "shape";
  for (const auto& row : cert.zs) {
    if (row.size() != m) return "shape";
  }
  if (!all_in_graph(G, cert.xs) || !all_in_graph(G, cert.ys)) {
    return "unknown-vertex";
  }
  for (const auto& row : cert.zs) {
    if (!all_in_graph(G, row)) return "unknown-vertex";
  }

  std::vector<int> everything(cert.xs);
  everything.insert(everything.end(), cert.ys.begin(), cert.ys.end());
  for (const auto& row : cert.zs)
    everything.insert(everything.end(), row.begin(), row.end());
  std::sort(everything.begin(), everything.end());
  if (has_duplicates(everything) || everything != G.vertices())
    return "not-a-partition";

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!G.adjacent(cert.zs[i][j], cert.xs[i]) ||
          !G.adjacent(cert.zs[i][j], cert.ys[j]))
        return "spoke-missing";
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<int> column;
    for (std::size_t i = 0; i < n; ++i) column.push_back(cert.zs[i][j]);
    std::sort(column.begin(), column.end());
    if (G.neighbors(cert.ys[j]) != column) return "hub-neighbourhood";
  }

  std::unordered_map<int, int> xidx, yidx;
  std::unordered_map<int, std::pair<int, int>> zpos;
  for (std::size_t i = 0; i < n; ++i) xidx[cert.xs[i]] = static_cast<int>(i);
  for (std::size_t j = 0; j < m; ++j) yidx[cert.ys[j]] = static_cast<int>(j);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      zpos[cert.zs[i][j]] = {static_cast<int>(i), static_cast<int>(j)};
  }
  std::vector<std::pair<int, int>> interference;
  for (const auto& [a, b] : G.edge_list()) {
    auto classify = [&](int x, int z) -> int {
      // -1 illegal, 0 spoke, 1 interference
      auto xi = xidx.find(x);
      auto zp = zpos.find(z);
      if (xi == xidx.end() || zp == zpos.end()) return -1;
      if (xi->second == zp->second.first) return 0;
      return xi->second < zp->second.first ? 1 : -1;
    };
    if (yidx.count(a) || yidx.count(b)) {
      // already vetted by the hub-neighbourhood pass when legal
      int y = yidx.count(a) ? a : b;
      int z = y == a ? b : a;
      auto zp = zpos.find(z);
      if (zp == zpos.end() || zp->second.second != yidx[y])
        return "stray-edge";
      continue;
    }
    int va = classify(a, b);
    int vb = classify(b, a);
    if (va < 0 && vb < 0) return "stray-edge";
    if (va == 1) {
      interference.push_back(
          {xidx[a], zpos[b].first * static_cast<int>(m) + zpos[b].second});
    } else if (vb == 1) {
      interference.push_back(
          {xidx[b], zpos[a].first * static_cast<int>(m) + zpos[a].second});
    }
  }

  std::vector<std::pair<int, int>> canon;
  for (const auto& [xi, zflat] : interference) {
    canon.push_back({xi, static_cast<int>(n + m) + zflat});
  }
  std::sort(canon.begin(), canon.end());
  SubdividedBiclique sb{static_cast<int>(n), static_cast<int>(m), canon};

  std::unordered_map<int, int> to_canon;
  for (std::size_t i = 0; i < n; ++i)
    to_canon[cert.xs[i]] = sb.x(static_cast<int>(i) + 1);
  for (std::size_t j = 0; j < m; ++j)
    to_canon[cert.ys[j]] = sb.y(static_cast<int>(j) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      to_canon[cert.zs[i][j]] =
          sb.z(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
  }
  if (relabel(G, to_canon) != sb.graph()) return "canonical-mismatch";
  return "";
}

InterferedResult frame_to_interfered(const FrameCert& f) {
  std::size_t Q = f.trees.size();
  std::size_t H = f.hubs.size();
  if (Q == 0 || H == 0) throw Error("frame_to_interfered: the frame is empty");
  if (f.marks.size() != Q)
    throw Error("frame_to_interfered: marks shape mismatch");
  for (const auto& row : f.marks) {
    if (row.size() != H) throw Error("frame_to_interfered: marks shape mismatch");
  }

  std::vector<int> everything;
  for (const auto& t : f.trees) {
    if (t.empty()) throw Error("frame_to_interfered: marks shape mismatch");
    for (int v : t) {
      if (!f.graph.has_vertex(v))
        throw Error("frame_to_interfered: vertex " + std::to_string(v) +
                    " is not in the frame");
    }
    everything.insert(everything.end(), t.begin(), t.end());
  }
  for (const auto& row : f.marks) {
    for (int v : row) {
      if (!f.graph.has_vertex(v))
        throw Error("frame_to_interfered: vertex " + std::to_string(v) +
                    " is not in the frame");
    }
    everything.insert(everything.end(), row.begin(), row.end());
  }
  for (int v : f.hubs) {
    if (!f.graph.has_vertex(v))
      throw Error("frame_to_interfered: vertex " + std::to_string(v) +
                  " is not in the frame");
  }
  everything.insert(everything.end(), f.hubs.begin(), f.hubs.end());
  std::sort(everything.begin(), everything.end());
  if (has_duplicates(everything) || everything != f.graph.vertices())
    throw Error("frame_to_interfered: the labels do not partition the frame");

  for (std::size_t i = 0; i < Q; ++i) {
    std::vector<int> ti = sorted_copy(f.trees[i]);
    for (std::size_t j = i + 1; j < Q; ++j) {
      for (int v : f.trees[j]) {
        for (int w : f.graph.neighbors(v)) {
          if (sorted_contains(ti, w))
            throw Error("frame_to_interfered: trees " + std::to_string(i) +
                        " and " + std::to_string(j) + " touch");
        }
      }
    }
  }
  for (std::size_t j = 0; j < H; ++j) {
    std::vector<int> column;
    for (const auto& row : f.marks) column.push_back(row[j]);
    std::sort(column.begin(), column.end());
    if (f.graph.neighbors(f.hubs[j]) != column)
      throw Error("frame_to_interfered: the neighbourhood of hub " +
                  std::to_string(j) + " is not its mark column");
  }

  Graph cur = f.graph;
  Trace trace;
  std::vector<std::pair<int, int>> cut;
  std::vector<int> xs(Q, -1);
  for (std::size_t i = 0; i < Q; ++i) {
    std::vector<int> t =
        sorted_union(sorted_copy(f.trees[i]), sorted_copy(f.marks[i]));
    BloatedAnalysis analysis = analyze_bloated_tree(cur, t);
    if (!analysis.decomp)
      throw Error("frame_to_interfered: tree " + std::to_string(i) +
                  " is not a bloated tree (" + analysis.violated + ")");
    ShrinkReport report = classify_interface(cur, *analysis.decomp);
    if (report.classification != ShrinkClass::Shrinkable)
      throw Error("frame_to_interfered: tree " + std::to_string(i) +
                  " is not shrinkable (" +
                  (report.violated.empty() ? "merely shrinking"
                                          : report.violated) +
                  ")");
    StarResult star = contract_to_star(cur, *analysis.decomp);
    cur = std::move(star.graph);
    trace.append(star.trace);
    cut.insert(cut.end(), star.cert.external_cut.begin(),
               star.cert.external_cut.end());
    std::vector<int> left;
    for (int v : f.trees[i]) {
      if (cur.has_vertex(v)) left.push_back(v);
    }
    if (left.size() != 1)
      throw Error("frame_to_interfered: internal: tree " + std::to_string(i) +
                  " contracted to " + std::to_string(left.size()) +
                  " vertices");
    xs[i] = left.front();
  }

  InterferedCert cert;
  cert.graph = cur;
  cert.xs = xs;
  cert.ys = f.hubs;
  cert.zs = f.marks;
  cert.external_cut = cut;
  std::string bad = interfered_violation(cert);
  if (!bad.empty())
    throw Error("frame_to_interfered: internal: certificate fails " + bad);

  // the composed star contractions must equal the one-shot formula
  Graph formula = f.graph;
  for (const auto& [a, b] : cut) formula = formula.minus_edge(a, b);
  std::vector<std::pair<int, int>> merged;
  for (const auto& t : f.trees) {
    for (const auto& e : f.graph.induced(t).edge_list()) merged.push_back(e);
  }
  if (!merged.empty()) formula = contract_edges(formula, merged);
  std::unordered_map<int, int> rename;
  for (std::size_t i = 0; i < Q; ++i) {
    int mn = *std::min_element(f.trees[i].begin(), f.trees[i].end());
    if (mn != xs[i]) rename[mn] = xs[i];
  }
  if (!rename.empty()) formula = relabel(formula, rename);
  if (formula != cur)
    throw Error(
        "frame_to_interfered: internal: the contraction disagrees with the "
        "formula");
  if (apply_trace(f.graph, trace) != cur)
    throw Error(
        "frame_to_interfered: internal: the trace does not replay to the "
        "result");
  return {std::move(cert), std::move(trace)};
}

std::string LongCoverCert::to_json() const {
  nlohmann::json j;
  j["covers"] = nlohmann::json::array();
  for (const auto& cov : covers) {
    nlohmann::json c;
    c["L0"] = cov.level[0];
    c["L1"] = cov.level[1];
    c["L2"] = cov.level[2];
    c["L3"] = cov.level[3];
    j["covers"].push_back(std::move(c));
  }
  j["covered"] = covered;
  j["paths"] = paths;
  j["marks"] = marks;
  j["chi_verified"] = chi_verified;
  return j.dump();
}

std::string FrameCert::to_json() const {
  nlohmann::json j;
  j["flavor"] = flavor == FrameFlavor::Pure
                    ? "pure"
                    : (flavor == FrameFlavor::Trimmed ? "trimmed" : "frame");
  j["trees"] = trees;
  j["marks"] = marks;
  j["hubs"] = hubs;
  j["graph"] = graph_json(graph);
  return j.dump();
}

std::string InterferedCert::to_json() const {
  nlohmann::json j;
  j["xs"] = xs;
  j["ys"] = ys;
  j["zs"] = zs;
  nlohmann::json cut = nlohmann::json::array();
  for (const auto& [a, b] : external_cut) cut.push_back({a, b});
  j["external_cut"] = std::move(cut);
  j["graph"] = graph_json(graph);
  return j.dump();
}

std::string ControlCertificate::to_json() const {
  nlohmann::json j;
  j["outcome"] =
      outcome == Outcome::MinorWitness ? "minor-witness" : "chi-bound";
  j["rho"] = rho;
  j["kappa"] = kappa;
  j["kappa_verified"] = kappa_verified;
  j["covers"] = cover_count;
  j["paths"] = path_count;
  j["bound"] = bound;
  j["bound_fits"] = bound_fits;
  if (outcome == Outcome::MinorWitness) {
    j["target"] = graph_json(target);
    j["witness_steps"] = witness.size();
  }
  return j.dump();
}

ControlCertificate nine_control_driver(const Graph& g, const Graph& forbidden,
                                       const ControlParams& params,
                                       const SolverLimits& lim) {
  ControlCertificate cert;
  if (params.kappa) {
    if (*params.kappa < 1)
      throw Error("nine_control_driver: kappa must be positive");
    cert.kappa = *params.kappa;
    cert.kappa_verified = false;
  } else {
    try {
      cert.kappa = chi_ball(g, 9, nullptr, lim);
      cert.kappa_verified = true;
    } catch (const Error&) {
      throw Error(
          "nine_control_driver: the radius-9 chromatic bound is out of the "
          "solver's reach; supply kappa");
    }
  }

  long long qbase = 0, hcount = 0;
  bool fits = true;
  if (params.dims) {
    qbase = params.dims->first;
    hcount = params.dims->second;
    if (qbase < 1 || hcount < 1)
      throw Error("nine_control_driver: dimensions must be positive");
  } else {
    try {
      UniversalParameters up = universal_parameters(forbidden);
      qbase = up.q.value;
      if (!up.h_fits)
        fits = false;
      else
        hcount = up.h_count;
    } catch (const Error&) {
      fits = false;  // even the parameter arithmetic overflows
    }
  }

  // The iterated Ramsey chain either reaches a fixed point (1 or 2) or
  // overflows within a handful of links, so huge path counts are fine.
  long long qchain = fits ? qbase : 0;
  for (long long j = 0; fits && j < hcount; ++j) {
    if (qchain > 1000000) {
      fits = false;
      break;
    }
    long long next;
    try {
      next = ramsey(static_cast<int>(qchain), static_cast<int>(qchain)).value;
    } catch (const Error&) {
      fits = false;
      break;
    }
    if (next == qchain) break;
    qchain = next;
  }

  long long threshold = kSatCap;
  if (fits) {
    threshold = sat_mul(sat_mul(sat_pow2(qchain), qchain),
                        sat_mul(hcount, cert.kappa));
    if (threshold >= kSatCap) fits = false;
  }
  cert.bound_fits = fits;
  cert.bound = fits ? threshold : 0;
  cert.cover_count = fits ? qchain : 0;
  cert.path_count = fits ? hcount : 0;

  bool fires = fits && chi_range(g, lim).proves_above(threshold);
  if (!fires) return cert;

  cert.outcome = ControlCertificate::Outcome::MinorWitness;
  cert.target = forbidden;

  if (forbidden.n() <= 1) {
    Trace witness;
    std::vector<int> vs = g.vertices();
    std::size_t spare = forbidden.n();
    for (std::size_t i = spare; i < vs.size(); ++i) witness.del(vs[i]);
    cert.witness = std::move(witness);
    return cert;
  }

  if (qchain > 1000000 || hcount > 1000000)
    throw Error(
        "nine_control_driver: the pipeline dimensions overflow what the "
        "solvers can attempt");

  LongCoverCert att;
  try {
    att = attach_dangling_paths(g, static_cast<int>(qchain),
                                static_cast<int>(hcount), cert.kappa, lim);
  } catch (const Error& e) {
    throw Error(std::string("nine_control_driver: dangling stage: ") +
                e.what());
  }

  FrameExtraction fe;
  try {
    fe = extract_frame(g, att, static_cast<int>(qbase),
                       static_cast<int>(hcount));
  } catch (const Error& e) {
    throw Error(std::string("nine_control_driver: frame stage: ") + e.what());
  }
  FrameCert frame = std::move(fe.cert);
  Trace witness = std::move(fe.trace);

  if (frame.flavor == FrameFlavor::Frame)
    throw Error(
        "nine_control_driver: the extracted frame is not even trimmed; the "
        "pipeline stops at these dimensions");
  if (frame.flavor == FrameFlavor::Trimmed) {
    FrameCert pured;
    try {
      pured = purify_frame(frame, static_cast<int>(qbase),
                           static_cast<int>(hcount));
    } catch (const Error& e) {
      throw Error(std::string("nine_control_driver: purification: ") +
                  e.what());
    }
    for (int v : sorted_minus(frame.graph.vertices(), pured.graph.vertices()))
      witness.del(v);
    frame = std::move(pured);
  }

  InterferedResult ir;
  try {
    ir = frame_to_interfered(frame);
  } catch (const Error& e) {
    throw Error(std::string("nine_control_driver: interference stage: ") +
                e.what());
  }
  witness.append(ir.trace);

  if (ir.cert.graph.n() <= lim.oracle) {
    OracleResult oracle = contains_vertex_minor(ir.cert.graph, forbidden, lim);
    if (!oracle.contained)
      throw Error(
          "nine_control_driver: the interfered graph misses the forbidden "
          "graph; the dimensions are too small");
    witness.append(oracle.trace);
  } else {
    // rebuild the canonical biclique and chase the forbidden graph through
    // the universal embedding, then carry the steps back to our labels
    std::size_t n = ir.cert.xs.size();
    std::size_t m = ir.cert.ys.size();
    std::unordered_map<int, int> to_canon;
    std::unordered_map<int, int> from_canon;
    std::vector<std::pair<int, int>> interference;
    SubdividedBiclique shape{static_cast<int>(n), static_cast<int>(m), {}};
    for (std::size_t i = 0; i < n; ++i)
      to_canon[ir.cert.xs[i]] = shape.x(static_cast<int>(i) + 1);
    for (std::size_t j = 0; j < m; ++j)
      to_canon[ir.cert.ys[j]] = shape.y(static_cast<int>(j) + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        to_canon[ir.cert.zs[i][j]] =
            shape.z(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
    for (const auto& [v, c] : to_canon) from_canon[c] = v;
    for (const auto& [a, b] : ir.cert.graph.edge_list()) {
      int ca = to_canon[a], cb = to_canon[b];
      bool xa = ca < static_cast<int>(n);
      bool xb = cb < static_cast<int>(n);
      bool za = ca >= static_cast<int>(n + m);
      bool zb = cb >= static_cast<int>(n + m);
      if (xa && zb && (cb - static_cast<int>(n + m)) / static_cast<int>(m) !=
                          ca)
        interference.push_back({ca, cb});
      else if (xb && za &&
               (ca - static_cast<int>(n + m)) / static_cast<int>(m) != cb)
        interference.push_back({cb, ca});
    }
    std::sort(interference.begin(), interference.end());
    SubdividedBiclique sb{static_cast<int>(n), static_cast<int>(m),
                          interference};
    ChainResult chain;
    try {
      chain = universal_chain(sb, forbidden);
    } catch (const Error& e) {
      throw Error(std::string("nine_control_driver: universal stage: ") +
                  e.what());
    }
    for (const TraceStep& s : chain.trace.steps) {
      TraceStep mapped = s;
      if (mapped.u >= 0) mapped.u = from_canon.at(mapped.u);
      if (mapped.v >= 0) mapped.v = from_canon.at(mapped.v);
      witness.steps.push_back(mapped);
    }
  }

  Graph fin = apply_trace(g, witness);
  if (forbidden.n() <= lim.iso) {
    if (!are_isomorphic(fin, forbidden, nullptr, lim))
      throw Error(
          "nine_control_driver: internal: the witness does not replay to the "
          "forbidden graph");
  } else if (fin.n() != forbidden.n() ||
             fin.edge_list().size() != forbidden.edge_list().size()) {
    throw Error(
        "nine_control_driver: internal: the witness does not replay to the "
        "forbidden graph");
  }
  cert.witness = std::move(witness);
  return cert;
}

}  // namespace vmc
