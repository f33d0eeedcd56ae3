#include "vmc/multicover.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vmc/chi_structures.hpp"
#include "vmc/ramsey.hpp"

namespace vmc {

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> family_union(const MulticoverCert& cert) {
  std::vector<int> u;
  for (const auto& fam : cert.families) u = sorted_union(u, sorted_copy(fam));
  return u;
}

// X, covered set and families together, the sets an oddity or crest must
// steer clear of or stay inside.
std::vector<int> role_union(const MulticoverCert& cert) {
  return sorted_union(sorted_copy(cert.xs),
                      sorted_union(sorted_copy(cert.covered), family_union(cert)));
}

bool is_induced_path(const Graph& g, const std::vector<int>& p) {
  if (p.size() < 2) return false;
  std::vector<int> seen = sorted_copy(p);
  for (std::size_t i = 0; i + 1 < seen.size(); ++i)
    if (seen[i] == seen[i + 1]) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (g.adjacent(p[i], p[j]) != (j == i + 1)) return false;
  return true;
}

std::string check_multicover(const Graph& g, const MulticoverCert& cert,
                             bool force_pure) {
  const std::size_t L = cert.xs.size();
  if (cert.families.size() != L) return "families-shape";
  std::vector<int> all;
  all.insert(all.end(), cert.xs.begin(), cert.xs.end());
  all.insert(all.end(), cert.covered.begin(), cert.covered.end());
  for (const auto& fam : cert.families) all.insert(all.end(), fam.begin(), fam.end());
  for (int v : all)
    if (!g.has_vertex(v)) return "unknown-vertex";
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i + 1 < all.size(); ++i)
    if (all[i] == all[i + 1]) return "roles-overlap";
  for (std::size_t i = 0; i < L; ++i)
    for (int w : cert.families[i])
      if (!g.adjacent(cert.xs[i], w)) return "family-off-neighbourhood";
  if (!is_stable_set(g, cert.xs)) return "x-not-stable";
  if (!anticomplete(g, cert.xs, cert.covered)) return "x-touches-covered";
  for (std::size_t i = 0; i < L; ++i)
    for (int v : cert.covered) {
      bool hit = false;
      for (int w : cert.families[i]) hit = hit || g.adjacent(v, w);
      if (!hit) return "family-misses-covered";
    }
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j)
      for (int w : cert.families[i])
        if (g.adjacent(cert.xs[j], w)) return "later-x-sees-earlier-family";
  if (cert.stable)
    for (const auto& fam : cert.families)
      if (!is_stable_set(g, fam)) return "family-not-stable";
  if (cert.pure || force_pure)
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        for (int w : cert.families[j])
          if (g.adjacent(cert.xs[i], w)) return "earlier-x-sees-later-family";
  if (cert.impure)
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        for (int w : cert.families[j])
          if (!g.adjacent(cert.xs[i], w)) return "impure-attachment-missing";
  return "";
}

std::string check_crest(const Graph& g, const MulticoverCert& cert) {
  const std::size_t k = cert.centres.size();
  if (k == 0 || cert.crests.size() != k) return "crest-shape";
  for (const auto& row : cert.crests)
    if (row.size() != cert.xs.size()) return "crest-shape";
  std::vector<int> crest_all;
  for (const auto& row : cert.crests)
    crest_all.insert(crest_all.end(), row.begin(), row.end());
  std::vector<int> newcomers = cert.centres;
  newcomers.insert(newcomers.end(), crest_all.begin(), crest_all.end());
  for (int v : newcomers)
    if (!g.has_vertex(v)) return "unknown-vertex";
  std::sort(newcomers.begin(), newcomers.end());
  for (std::size_t i = 0; i + 1 < newcomers.size(); ++i)
    if (newcomers[i] == newcomers[i + 1]) return "crest-not-distinct";
  const std::vector<int> roles = role_union(cert);
  for (int v : newcomers)
    if (sorted_contains(roles, v)) return "crest-outside-roles";
  const std::vector<int> crest_sorted = sorted_copy(crest_all);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> want = sorted_copy(cert.crests[i]);
    std::vector<int> got = sorted_intersect(g.neighbors(cert.centres[i]), crest_sorted);
    if (got != want) return "centre-crest-mismatch";
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < cert.xs.size(); ++t) {
      std::vector<int> got = sorted_intersect(g.neighbors(cert.crests[i][t]), roles);
      if (got != std::vector<int>{cert.xs[t]}) return "crest-anchor-mismatch";
    }
  if (!anticomplete(g, cert.centres, roles)) return "centre-touches-roles";
  if (!is_stable_set(g, cert.centres)) return "centres-not-stable";
  if (!is_stable_set(g, crest_sorted)) return "crests-not-stable";
  return "";
}

std::string check_oddity(const Graph& g, const MulticoverCert& cert,
                         const std::vector<int>& path) {
  for (int v : path)
    if (!g.has_vertex(v)) return "unknown-vertex";
  if (!is_induced_path(g, path)) return "path-not-induced";
  const std::size_t len = path.size() - 1;
  if (len != 3 && len != 5) return "length-not-3-or-5";
  const std::vector<int> xset = sorted_copy(cert.xs);
  if (!sorted_contains(xset, path.front()) || !sorted_contains(xset, path.back()))
    return "path-ends-off-x";
  const std::vector<int> pset = sorted_copy(path);
  for (int x : cert.xs) {
    if (x == path.front() || x == path.back()) continue;
    if (sorted_contains(pset, x)) return "x-meets-path";
    for (int v : path)
      if (g.adjacent(x, v)) return "x-meets-path";
  }
  const std::vector<int> roles = role_union(cert);
  for (int v : path)
    if (!sorted_contains(roles, v)) return "path-off-roles";
  return "";
}

}  // namespace

std::string MulticoverCert::to_json() const {
  nlohmann::json j;
  j["order"] = xs;
  j["families"] = families;
  j["covered"] = covered;
  j["stable"] = stable;
  j["pure"] = pure;
  j["impure"] = impure;
  j["centres"] = centres;
  j["crests"] = crests;
  j["chi_verified"] = chi_verified;
  return j.dump();
}

std::string validate_structure(const Graph& g, const MulticoverCert& cert,
                               StructureKind kind,
                               const std::vector<int>& path) {
  switch (kind) {
    case StructureKind::Multicover:
      return check_multicover(g, cert, false);
    case StructureKind::Crested: {
      std::string base = check_multicover(g, cert, true);
      if (!base.empty()) return base;
      return check_crest(g, cert);
    }
    case StructureKind::Oddity:
      return check_oddity(g, cert, path);
  }
  throw Error("validate_structure: unhandled kind");
}

namespace {

// Chromatic budget the 2-ball must still carry with the given number of
// recursion steps left.  Losing the neighbourhood costs tau + 1 colours and
// the surviving class keeps only a tau-th share, so the budget climbs one
// tau-multiple per step.  Saturated well below overflow; a saturated budget
// just means no desk-sized ball can prove it, which the caller reports.
std::vector<long long> chi_budgets(int ell, long long c, long long tau) {
  const long long cap = 1'000'000'000'000LL;
  std::vector<long long> need(static_cast<std::size_t>(ell) + 1);
  need[0] = c;
  for (int k = 1; k <= ell; ++k) {
    long long prev = need[k - 1];
    long long next = (tau > 0 && prev > (cap - tau - 1) / tau)
                         ? cap
                         : tau * prev + tau + 1;
    need[k] = std::min(next, cap);
  }
  return need;
}

// Smallest-last order, then greedy from the back; the workhorse upper-bound
// colouring for graphs the exact solver refuses.
std::map<int, int> degeneracy_colouring(const Graph& g) {
  std::vector<int> verts = g.vertices();
  std::vector<int> order;
  std::vector<int> left = verts;
  Graph cur = g;
  while (!left.empty()) {
    int pick = left.front();
    for (int v : left)
      if (cur.degree(v) < cur.degree(pick)) pick = v;
    order.push_back(pick);
    cur = cur.minus_vertex(pick);
    left.erase(std::find(left.begin(), left.end(), pick));
  }
  std::map<int, int> col;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<bool> used(g.n() + 1, false);
    for (int w : g.neighbors(*it)) {
      auto found = col.find(w);
      if (found != col.end()) used[found->second] = true;
    }
    int c = 0;
    while (used[c]) ++c;
    col[*it] = c;
  }
  return col;
}

std::vector<std::vector<int>> colour_classes(const std::map<int, int>& col) {
  std::map<int, std::vector<int>> by;
  for (const auto& [v, c] : col) by[c].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [c, members] : by) out.push_back(std::move(members));
  return out;
}

// Three-way verdict of a chromatic sandwich against a threshold.
enum class ChiVerdict { Proven, Undecided, Refuted };

ChiVerdict judge(const ChiRange& r, long long need) {
  if (r.lower >= need) return ChiVerdict::Proven;
  if (r.exact || r.upper < need) return ChiVerdict::Refuted;
  return ChiVerdict::Undecided;
}

struct McContext {
  const SolverLimits& lim;
  std::vector<long long> need;
  long long tau;
  bool verified = true;
};

MulticoverCert mc_search(McContext& ctx, const Graph& h, int steps) {
  if (steps == 0) {
    const auto comps = connected_components(h);
    std::vector<ChiRange> ranges;
    ranges.reserve(comps.size());
    for (const auto& comp : comps) ranges.push_back(chi_range(h.induced(comp), ctx.lim));
    int pick = -1;
    for (std::size_t i = 0; i < comps.size() && pick < 0; ++i)
      if (judge(ranges[i], ctx.need[0]) == ChiVerdict::Proven) pick = static_cast<int>(i);
    for (std::size_t i = 0; i < comps.size() && pick < 0; ++i)
      if (judge(ranges[i], ctx.need[0]) == ChiVerdict::Undecided) {
        pick = static_cast<int>(i);
        ctx.verified = false;
      }
    if (pick < 0)
      throw Error("find_stable_multicover: no component reaches chromatic number " +
                  std::to_string(ctx.need[0]));
    MulticoverCert cert;
    cert.covered = comps[pick];
    return cert;
  }

  const long long want = ctx.need[steps];
  std::vector<ChiRange> ranges;
  for (int v : h.vertices())
    ranges.push_back(chi_range(h.induced(ball(h, v, 2)), ctx.lim));
  int y = -1;
  for (std::size_t i = 0; i < ranges.size() && y < 0; ++i)
    if (judge(ranges[i], want) == ChiVerdict::Proven) y = h.vertices()[i];
  for (std::size_t i = 0; i < ranges.size() && y < 0; ++i)
    if (judge(ranges[i], want) == ChiVerdict::Undecided) {
      y = h.vertices()[i];
      ctx.verified = false;
    }
  if (y < 0)
    throw Error("find_stable_multicover: no 2-ball reaches chromatic number " +
                std::to_string(want));

  const Graph nbhd = h.induced(h.neighbors(y));
  std::map<int, int> col;
  if (chromatic_feasible(nbhd, ctx.lim)) {
    int k = chromatic_number(nbhd, &col, ctx.lim);
    if (k > ctx.tau)
      throw Error("find_stable_multicover: the neighbourhood of vertex " +
                  std::to_string(y) + " needs " + std::to_string(k) +
                  " colours, tau is " + std::to_string(ctx.tau));
  } else {
    col = degeneracy_colouring(nbhd);
    ctx.verified = false;  // the tau promise stays unsettled out here
  }

  const std::vector<int> sphere2 = sphere(h, y, 2);
  const long long inner_want = ctx.need[steps - 1];
  const auto classes = colour_classes(col);
  std::vector<std::vector<int>> reaches;
  std::vector<ChiRange> reach_ranges;
  for (const auto& cls : classes) {
    std::vector<int> reach;
    for (int s : cls) reach = sorted_union(reach, h.neighbors(s));
    reach = sorted_intersect(reach, sphere2);
    reach_ranges.push_back(chi_range(h.induced(reach), ctx.lim));
    reaches.push_back(std::move(reach));
  }
  int pick = -1;
  for (std::size_t i = 0; i < classes.size() && pick < 0; ++i)
    if (judge(reach_ranges[i], inner_want) == ChiVerdict::Proven)
      pick = static_cast<int>(i);
  for (std::size_t i = 0; i < classes.size() && pick < 0; ++i)
    if (judge(reach_ranges[i], inner_want) == ChiVerdict::Undecided) {
      pick = static_cast<int>(i);
      ctx.verified = false;
    }
  if (pick < 0)
    throw Error("find_stable_multicover: no stable cover class keeps chromatic number " +
                std::to_string(inner_want));

  MulticoverCert cert = mc_search(ctx, h.induced(reaches[pick]), steps - 1);
  cert.xs.push_back(y);
  cert.families.push_back(classes[pick]);
  return cert;
}

}  // namespace

MulticoverCert find_stable_multicover(const Graph& g, int ell, long long c,
                                      long long tau, int omega,
                                      const SolverLimits& lim) {
  if (ell < 0) throw Error("find_stable_multicover: ell must be non-negative");
  if (c < 0) throw Error("find_stable_multicover: c must be non-negative");
  if (tau < 0) throw Error("find_stable_multicover: tau must be non-negative");
  if (g.n() > 0 && g.n() <= lim.clique && clique_number(g, nullptr, lim) > omega)
    throw Error("find_stable_multicover: the clique number beats omega");
  McContext ctx{lim, chi_budgets(ell, c, tau), tau};
  MulticoverCert cert = mc_search(ctx, g, ell);
  cert.stable = true;
  cert.chi_verified = ctx.verified;
  std::string bad = validate_structure(g, cert, StructureKind::Multicover);
  if (!bad.empty())
    throw Error("find_stable_multicover: internal: the certificate fails " + bad);
  return cert;
}

namespace {

// Minimum-label neighbour of v inside each (sorted) family: the canonical
// representative every refinement step agrees on.
std::vector<int> representatives(const Graph& g, const std::vector<std::vector<int>>& fams,
                                 int v, const char* who) {
  std::vector<int> rep(fams.size(), -1);
  for (std::size_t i = 0; i < fams.size(); ++i) {
    for (int w : fams[i])
      if (g.adjacent(v, w)) {
        rep[i] = w;
        break;
      }
    if (rep[i] < 0)
      throw Error(std::string(who) + ": internal: vertex " + std::to_string(v) +
                  " has no neighbour in family " + std::to_string(i));
  }
  return rep;
}

}  // namespace

MulticoverCert refine_multicover(const Graph& g, const MulticoverCert& cert,
                                 int m, const SolverLimits& lim) {
  if (m < 1) throw Error("refine_multicover: m must be positive");
  std::string bad = validate_structure(g, cert, StructureKind::Multicover);
  if (!bad.empty()) throw Error("refine_multicover: the certificate fails " + bad);
  if (!cert.stable) throw Error("refine_multicover: the multicover is not stable");
  const long long bound = ramsey(m, m).value;
  const std::size_t L = cert.xs.size();
  if (static_cast<long long>(L) < bound)
    throw Error("refine_multicover: length " + std::to_string(L) +
                " is below the Ramsey bound " + std::to_string(bound));
  if (cert.covered.empty()) throw Error("refine_multicover: the covered set is empty");

  std::unordered_map<int, std::vector<int>> rep;
  for (int v : cert.covered)
    rep[v] = representatives(g, cert.families, v, "refine_multicover");

  // one bit per ordered pair i < j: does v's representative in family j look
  // back at xs[i]?
  std::map<std::string, std::vector<int>> classes;
  for (int v : cert.covered) {
    std::string key;
    key.reserve(L * (L - 1) / 2);
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        key.push_back(g.adjacent(cert.xs[i], rep[v][j]) ? '1' : '0');
    classes[key].push_back(v);
  }
  std::string best_key;
  ChiRange best_range;
  bool have = false;
  for (const auto& [key, members] : classes) {
    ChiRange r = chi_range(g.induced(members), lim);
    if (!have || r.lower > best_range.lower) {
      best_key = key;
      best_range = r;
      have = true;
    }
  }
  const std::vector<int>& kept = classes[best_key];

  std::vector<int> idx_verts(L);
  for (std::size_t i = 0; i < L; ++i) idx_verts[i] = static_cast<int>(i);
  std::vector<std::pair<int, int>> pattern_edges;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j, ++bit)
      if (best_key[bit] == '1')
        pattern_edges.push_back({static_cast<int>(i), static_cast<int>(j)});
  const Graph pattern = Graph::from_edges(idx_verts, pattern_edges);

  std::vector<int> chosen;
  MulticoverCert out;
  if (auto st = find_stable_set(pattern, m)) {
    chosen = *st;
    out.pure = true;
  } else if (auto cl = find_clique(pattern, m)) {
    chosen = *cl;
    out.impure = true;
  } else {
    throw Error("refine_multicover: internal: no monochromatic set of size " +
                std::to_string(m));
  }

  for (int i : chosen) {
    out.xs.push_back(cert.xs[i]);
    std::vector<int> fam;
    for (int v : kept) fam.push_back(rep[v][i]);
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    out.families.push_back(std::move(fam));
  }
  out.covered = kept;
  out.stable = true;
  out.chi_verified = cert.chi_verified && best_range.exact;
  bad = validate_structure(g, out, StructureKind::Multicover);
  if (!bad.empty())
    throw Error("refine_multicover: internal: the certificate fails " + bad);
  return out;
}

namespace {

// Chromatic floor shared by the purification paths: a provable shortfall is
// an error, an unsettled sandwich just drops the verified flag.
void chi_floor(const Graph& g, const std::vector<int>& set, long long need,
               const char* what, bool& verified, const SolverLimits& lim) {
  ChiRange r = chi_range(g.induced(set), lim);
  if (r.upper < need)
    throw Error(std::string("impure_to_pure: the ") + what +
                " falls below chromatic number " + std::to_string(need));
  if (r.lower < need) verified = false;
}

struct AnchorData {
  std::vector<int> anchors;            // anchors[i] = min of families[i]
  std::vector<std::vector<int>> cuts;  // covered vertices each anchor sees
  std::vector<int> cut_union;
};

AnchorData pick_anchors(const Graph& g, const std::vector<std::vector<int>>& fams,
                        const std::vector<int>& covered, long long tau,
                        bool& verified, const SolverLimits& lim) {
  AnchorData a;
  for (const auto& fam : fams) {
    if (fam.empty()) throw Error("impure_to_pure: a family is empty");
    a.anchors.push_back(fam.front());
    std::vector<int> cut = sorted_intersect(g.neighbors(fam.front()), covered);
    ChiRange r = chi_range(g.induced(cut), lim);
    if (r.lower > tau)
      throw Error("impure_to_pure: the anchor cut at vertex " +
                  std::to_string(fam.front()) + " beats tau");
    if (r.upper > tau) verified = false;
    a.cut_union = sorted_union(a.cut_union, cut);
    a.cuts.push_back(std::move(cut));
  }
  return a;
}

void assert_clique_not_grown(const Graph& before, const Graph& after,
                             const SolverLimits& lim) {
  if (before.n() > lim.clique || after.n() > lim.clique) return;
  if (clique_number(after, nullptr, lim) > clique_number(before, nullptr, lim))
    throw Error("impure_to_pure: internal: the clique number grew");
}

void assert_pure_multicover(const Graph& g, const MulticoverCert& cert) {
  std::string bad = validate_structure(g, cert, StructureKind::Multicover);
  if (!bad.empty())
    throw Error("impure_to_pure: internal: the certificate fails " + bad);
}

// The omega_star == 1 construction: all families in one stable set.  Pivot
// every member of X onto its anchor from the top of the order down, then
// delete X's labels (the pivoted-away anchors) and the anchors' covered
// reach.  The anchors survive carrying their families minus themselves.
PureMulticover pure_base(const Graph& g, std::vector<int> xs,
                         std::vector<std::vector<int>> fams,
                         const std::vector<int>& covered, long long c,
                         long long tau, bool verified, const SolverLimits& lim) {
  const int ell = static_cast<int>(xs.size());
  chi_floor(g, covered, c + static_cast<long long>(ell) * tau, "covered set",
            verified, lim);
  AnchorData a = pick_anchors(g, fams, covered, tau, verified, lim);

  std::vector<int> keep = sorted_union(sorted_copy(xs), covered);
  for (const auto& fam : fams) keep = sorted_union(keep, fam);
  Trace t;
  for (int v : sorted_minus(g.vertices(), keep)) t.del(v);
  for (int i = ell - 1; i >= 0; --i) t.pivot(xs[i], a.anchors[i]);
  for (int v : sorted_union(sorted_copy(xs), a.cut_union)) t.del(v);
  Graph replay = apply_trace(g, t);

  Graph surgery = g.induced(keep);
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      if (i == j) continue;
      for (int w : fams[j])
        if (w != a.anchors[j] && surgery.adjacent(xs[i], w))
          surgery = surgery.minus_edge(xs[i], w);
    }
  surgery = surgery.minus_vertices(
      sorted_union(sorted_copy(a.anchors), a.cut_union));
  std::unordered_map<int, int> moves;
  for (int i = 0; i < ell; ++i) moves[xs[i]] = a.anchors[i];
  surgery = relabel(surgery, moves);
  if (replay != surgery)
    throw Error("impure_to_pure: internal: the pivot cascade disagrees with the edge surgery");

  PureMulticover out;
  out.graph = std::move(replay);
  out.trace = std::move(t);
  out.cert.xs = a.anchors;
  for (int i = 0; i < ell; ++i)
    out.cert.families.push_back(sorted_minus(fams[i], {a.anchors[i]}));
  out.cert.covered = sorted_minus(covered, a.cut_union);
  out.cert.stable = true;
  out.cert.pure = true;
  chi_floor(out.graph, out.cert.covered, c, "surviving covered set", verified, lim);
  out.cert.chi_verified = verified;
  assert_pure_multicover(out.graph, out.cert);
  assert_clique_not_grown(g, out.graph, lim);
  return out;
}

// Length the inductive call at depth omega_star insists on; the trigger for
// handing a heavy pattern vertex's later neighbours down a level.
long long inner_length_demand(int ell, int omega_star) {
  const long long cap = 1'000'000;
  long long v = ell;
  for (int w = 2; w <= omega_star; ++w) {
    long long r = ramsey(w + 1, ell).value;
    if (v > cap / v) return cap;
    v *= v;
    if (v > cap / r) return cap;
    v *= r;
  }
  return v;
}

}  // namespace

PureMulticover impure_to_pure(const Graph& g, const MulticoverCert& cert,
                              long long c, int ell, long long tau, int omega,
                              int omega_star, const SolverLimits& lim) {
  if (ell < 1) throw Error("impure_to_pure: ell must be positive");
  if (c < 0) throw Error("impure_to_pure: c must be non-negative");
  if (tau < 0) throw Error("impure_to_pure: tau must be non-negative");
  if (omega_star < 1) throw Error("impure_to_pure: omega-star must be positive");
  std::string bad = validate_structure(g, cert, StructureKind::Multicover);
  if (!bad.empty()) throw Error("impure_to_pure: the certificate fails " + bad);
  if (!cert.stable) throw Error("impure_to_pure: the multicover is not stable");
  if (!cert.impure) throw Error("impure_to_pure: the certificate is not flagged impure");
  if (static_cast<int>(cert.xs.size()) < ell)
    throw Error("impure_to_pure: the multicover length " +
                std::to_string(cert.xs.size()) + " is below ell " +
                std::to_string(ell));
  if (g.n() <= lim.clique && clique_number(g, nullptr, lim) > omega)
    throw Error("impure_to_pure: the clique number beats omega");
  const std::vector<int> famU = family_union(cert);
  if (omega_star == 1) {
    if (!is_stable_set(g, famU))
      throw Error("impure_to_pure: the families are not a stable set");
  } else if (static_cast<int>(famU.size()) <= lim.clique &&
             clique_number(g.induced(famU), nullptr, lim) > omega_star) {
    throw Error("impure_to_pure: the families' clique number beats omega-star");
  }

  if (ell == 1) {
    PureMulticover out;
    out.graph = g;
    out.cert.xs = {cert.xs.front()};
    out.cert.families = {cert.families.front()};
    out.cert.covered = cert.covered;
    out.cert.stable = true;
    out.cert.pure = true;
    bool verified = cert.chi_verified;
    chi_floor(g, out.cert.covered, c, "covered set", verified, lim);
    out.cert.chi_verified = verified;
    assert_pure_multicover(out.graph, out.cert);
    return out;
  }

  bool verified = cert.chi_verified;
  if (omega_star == 1) {
    std::vector<int> xs(cert.xs.begin(), cert.xs.begin() + ell);
    std::vector<std::vector<int>> fams(cert.families.begin(),
                                       cert.families.begin() + ell);
    return pure_base(g, std::move(xs), std::move(fams), cert.covered, c, tau,
                     verified, lim);
  }

  // omega_star >= 2: carve the covered set down to the vertices no anchor
  // sees, split it by the two representative pattern graphs, and either
  // recurse on someone's representative families or pivot onto a stable set
  // of anchors directly.
  const std::size_t L = cert.xs.size();
  chi_floor(g, cert.covered, c, "covered set", verified, lim);
  AnchorData a = pick_anchors(g, cert.families, cert.covered, tau, verified, lim);
  const std::vector<int> c0 = sorted_minus(cert.covered, a.cut_union);
  if (c0.empty())
    throw Error("impure_to_pure: the anchor cuts consume the covered set");

  std::unordered_map<int, std::vector<int>> rep;
  for (int v : c0) rep[v] = representatives(g, cert.families, v, "impure_to_pure");
  // two bits per pair i < j: the later representative looking back at the
  // earlier anchor, and the earlier representative looking up at the later
  std::map<std::string, std::vector<int>> classes;
  for (int v : c0) {
    std::string key;
    key.reserve(L * (L - 1));
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j) {
        key.push_back(g.adjacent(a.anchors[i], rep[v][j]) ? '1' : '0');
        key.push_back(g.adjacent(a.anchors[j], rep[v][i]) ? '1' : '0');
      }
    classes[key].push_back(v);
  }
  std::string best_key;
  ChiRange best_range;
  bool have = false;
  for (const auto& [key, members] : classes) {
    ChiRange r = chi_range(g.induced(members), lim);
    if (!have || r.lower > best_range.lower) {
      best_key = key;
      best_range = r;
      have = true;
    }
  }
  const std::vector<int>& c1 = classes[best_key];
  if (!best_range.exact) verified = false;

  std::vector<std::vector<bool>> h1(L, std::vector<bool>(L, false));
  std::vector<std::vector<bool>> h2(L, std::vector<bool>(L, false));
  std::size_t bit = 0;
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) {
      h1[i][j] = h1[j][i] = best_key[bit++] == '1';
      h2[i][j] = h2[j][i] = best_key[bit++] == '1';
    }

  auto rep_family = [&](std::size_t j) {
    std::vector<int> fam;
    for (int v : c1) fam.push_back(rep[v][j]);
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
  };

  const long long trigger = inner_length_demand(ell, omega_star - 1);
  for (std::size_t i = 0; i < L; ++i) {
    std::vector<std::size_t> later;
    for (std::size_t j = i + 1; j < L; ++j)
      if (h1[i][j]) later.push_back(j);
    if (static_cast<long long>(later.size()) < trigger) continue;
    MulticoverCert sub;
    for (std::size_t j : later) {
      sub.xs.push_back(cert.xs[j]);
      sub.families.push_back(rep_family(j));
    }
    sub.covered = c1;
    sub.stable = true;
    sub.impure = true;
    sub.chi_verified = verified;
    return impure_to_pure(g, sub, c, ell, tau, omega, omega_star - 1, lim);
  }

  // both pattern graphs are sparse: colour their union, keep the heaviest
  // class, and pull a stable set of anchors out of it
  std::vector<int> idx_verts(L);
  std::vector<std::pair<int, int>> union_edges;
  for (std::size_t i = 0; i < L; ++i) {
    idx_verts[i] = static_cast<int>(i);
    for (std::size_t j = i + 1; j < L; ++j)
      if (h1[i][j] || h2[i][j])
        union_edges.push_back({static_cast<int>(i), static_cast<int>(j)});
  }
  const Graph pattern = Graph::from_edges(idx_verts, union_edges);
  const auto pattern_classes = colour_classes(degeneracy_colouring(pattern));
  std::vector<int> y0;
  for (const auto& cls : pattern_classes)
    if (cls.size() > y0.size()) y0 = cls;
  std::vector<int> pool;
  for (int j : y0) pool.push_back(a.anchors[j]);
  std::sort(pool.begin(), pool.end());
  auto anchor_pick = find_stable_set(g.induced(pool), ell);
  if (!anchor_pick)
    throw Error("impure_to_pure: no stable anchor set of size " +
                std::to_string(ell));
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < L; ++j)
    if (sorted_contains(*anchor_pick, a.anchors[j]) &&
        std::find(y0.begin(), y0.end(), static_cast<int>(j)) != y0.end())
      ys.push_back(j);

  std::vector<std::vector<int>> pfams;
  std::vector<int> keep = c1;
  for (std::size_t j : ys) {
    pfams.push_back(rep_family(j));
    keep = sorted_union(keep, pfams.back());
    keep = sorted_union(keep, {cert.xs[j], a.anchors[j]});
  }
  Trace t;
  for (int v : sorted_minus(g.vertices(), keep)) t.del(v);
  for (auto it = ys.rbegin(); it != ys.rend(); ++it)
    t.pivot(cert.xs[*it], a.anchors[*it]);
  Graph replay = apply_trace(g, t);

  Graph surgery = g.induced(keep);
  for (std::size_t ai = 0; ai < ys.size(); ++ai)
    for (std::size_t bi = 0; bi < ys.size(); ++bi) {
      if (ai == bi) continue;
      for (int w : pfams[bi])
        if (surgery.adjacent(cert.xs[ys[ai]], w))
          surgery = surgery.minus_edge(cert.xs[ys[ai]], w);
    }
  std::unordered_map<int, int> swaps;
  for (std::size_t j : ys) {
    swaps[cert.xs[j]] = a.anchors[j];
    swaps[a.anchors[j]] = cert.xs[j];
  }
  surgery = relabel(surgery, swaps);
  if (replay != surgery)
    throw Error("impure_to_pure: internal: the pivot cascade disagrees with the edge surgery");

  PureMulticover out;
  out.graph = std::move(replay);
  out.trace = std::move(t);
  for (std::size_t j : ys) out.cert.xs.push_back(a.anchors[j]);
  out.cert.families = pfams;
  out.cert.covered = c1;
  out.cert.stable = true;
  out.cert.pure = true;
  chi_floor(out.graph, out.cert.covered, c, "surviving covered set", verified, lim);
  out.cert.chi_verified = verified;
  assert_pure_multicover(out.graph, out.cert);
  assert_clique_not_grown(g, out.graph, lim);
  return out;
}

OddStepResult contract_odd_path_step(const Graph& g, int u, int v, int w,
                                     int x) {
  for (int z : {u, v, w, x})
    if (!g.has_vertex(z))
      throw Error("contract_odd_path_step: unknown vertex " + std::to_string(z));
  std::vector<int> four = sorted_copy({u, v, w, x});
  for (std::size_t i = 0; i + 1 < four.size(); ++i)
    if (four[i] == four[i + 1])
      throw Error("contract_odd_path_step: the four vertices must be distinct");
  if (g.neighbors(v) != sorted_copy({u, w}))
    throw Error("contract_odd_path_step: vertex " + std::to_string(v) +
                " must have exactly the neighbours " + std::to_string(u) +
                " and " + std::to_string(w));
  if (g.neighbors(w) != sorted_copy({v, x}))
    throw Error("contract_odd_path_step: vertex " + std::to_string(w) +
                " must have exactly the neighbours " + std::to_string(v) +
                " and " + std::to_string(x));
  if (g.adjacent(u, x))
    throw Error("contract_odd_path_step: the stretch ends " + std::to_string(u) +
                " and " + std::to_string(x) + " are adjacent");
  Trace t;
  t.pivot(v, w);
  t.del(v);
  t.del(w);
  Graph replay = apply_trace(g, t);
  Graph direct = contract_edges(g, {{v, w}, {w, x}});
  const int survivor = std::min({v, w, x});
  if (survivor != x) direct = relabel(direct, {{survivor, x}});
  if (replay != direct)
    throw Error("contract_odd_path_step: internal: the pivot disagrees with the contraction");
  return {std::move(replay), std::move(t)};
}

}  // namespace vmc
