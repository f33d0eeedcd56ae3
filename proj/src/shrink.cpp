#include "vmc/shrink.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vmc {

namespace {

std::vector<int> outside_neighbours(const Graph& g, const std::vector<int>& t,
                                    int v) {
  return sorted_minus(g.neighbors(v), t);
}

// BFS distances from a whole set at once; only reached vertices appear.
std::unordered_map<int, int> distances_from_set(const Graph& g,
                                                const std::vector<int>& src) {
  std::unordered_map<int, int> dist;
  std::deque<int> q;
  for (int s : src) {
    if (!dist.count(s)) {
      dist[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
    }
  }
  return dist;
}

int distance_into(const std::unordered_map<int, int>& dist, int v) {
  auto it = dist.find(v);
  return it == dist.end() ? -1 : it->second;
}

bool within(const std::unordered_map<int, int>& dist, int v, int limit) {
  int d = distance_into(dist, v);
  return d >= 0 && d <= limit;
}

// Sorted outside contacts of `inside`.
std::vector<int> contact_set(const Graph& g, const std::vector<int>& inside) {
  std::vector<int> out;
  for (int v : inside)
    for (int w : g.neighbors(v))
      if (!sorted_contains(inside, w)) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* class_name(ShrinkClass c) {
  switch (c) {
    case ShrinkClass::Shrinkable:
      return "shrinkable";
    case ShrinkClass::Shrinking:
      return "shrinking";
    default:
      return "neither";
  }
}

nlohmann::json edges_to_json(const std::vector<std::pair<int, int>>& es) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [a, b] : es) arr.push_back({a, b});
  return arr;
}

}  // namespace

std::string ShrinkReport::to_json() const {
  nlohmann::json j;
  j["classification"] = class_name(classification);
  j["violated"] = violated;
  j["L"] = leaves;
  j["B"] = branching;
  j["Z"] = attach;
  j["E*"] = edges_to_json(external_cut);
  return j.dump();
}

std::string StarCertificate::to_json() const {
  nlohmann::json j;
  j["center"] = center;
  j["leaves"] = leaves;
  j["E*"] = edges_to_json(external_cut);
  return j.dump();
}

ShrinkReport classify_interface(const Graph& g, const BloatedTreeDecomp& bt) {
  ShrinkReport rep;
  BloatedAnalysis an = analyze_bloated_tree(g, bt.t);
  if (!an.decomp) {
    rep.violated = an.violated;
    return rep;
  }
  const BloatedTreeDecomp& d = *an.decomp;
  rep.leaves = d.leaves;
  rep.branching = d.branching;
  rep.attach = d.attach;

  Graph tree = d.tree_graph();
  std::vector<int> objects = sorted_union(d.branching, d.attach);
  std::string broken;

  for (int z : d.attach) {
    if (outside_neighbours(g, d.t, z).size() != 1) {
      broken = "multi-attachment";
      break;
    }
  }
  if (broken.empty()) {
    for (std::size_t i = 0; i < d.attach.size() && broken.empty(); ++i) {
      auto di = bfs_distances(tree, d.attach[i]);
      for (std::size_t j = i + 1; j < d.attach.size(); ++j) {
        if (outside_neighbours(g, d.t, d.attach[i]) ==
            outside_neighbours(g, d.t, d.attach[j]))
          continue;
        if (within(di, d.attach[j], 3)) {
          broken = "close-distinct-attachments";
          break;
        }
      }
    }
  }
  if (broken.empty()) {
    for (const auto& cq : d.big_cliques) {
      auto dc = distances_from_set(tree, cq);
      for (int v : objects) {
        if (within(dc, v, 3)) {
          broken = "object-near-clique";
          break;
        }
      }
      if (!broken.empty()) break;
    }
  }
  if (broken.empty()) {
    for (std::size_t i = 0; i < d.attach.size() && broken.empty(); ++i) {
      auto di = bfs_distances(tree, d.attach[i]);
      for (int b : d.branching) {
        if (within(di, b, 3)) {
          broken = "z-near-branching";
          break;
        }
      }
    }
  }
  if (broken.empty()) {
    for (const auto& cq : d.big_cliques) {
      auto dc = distances_from_set(tree, cq);
      for (int l : d.leaves) {
        if (within(dc, l, 1)) {
          broken = "leaf-near-clique-or-z";
          break;
        }
      }
      if (!broken.empty()) break;
    }
    for (std::size_t i = 0; i < d.attach.size() && broken.empty(); ++i) {
      auto di = bfs_distances(tree, d.attach[i]);
      for (int l : d.leaves) {
        if (within(di, l, 2)) {
          broken = "leaf-near-clique-or-z";
          break;
        }
      }
    }
  }

  if (broken.empty()) {
    rep.classification = ShrinkClass::Shrinkable;
  } else if (d.big_cliques.empty() && is_stable_set(tree, objects)) {
    rep.classification = ShrinkClass::Shrinking;
  } else {
    rep.classification = ShrinkClass::Neither;
    rep.violated = broken;
  }
  return rep;
}

EliminationResult eliminate_big_clique(const Graph& g, int c, int d) {
  if (!g.has_vertex(c))
    throw Error("eliminate_big_clique: no vertex " + std::to_string(c));
  if (!g.has_vertex(d))
    throw Error("eliminate_big_clique: no vertex " + std::to_string(d));
  if (!g.adjacent(c, d))
    throw Error("eliminate_big_clique: " + std::to_string(c) + " and " +
                std::to_string(d) + " are not adjacent");
  std::vector<int> rest = g.neighbors(c);
  rest.erase(std::remove(rest.begin(), rest.end(), d), rest.end());
  if (rest.size() < 2)
    throw Error("eliminate_big_clique: the clique around " + std::to_string(c) +
                " has only " + std::to_string(rest.size() + 1) +
                " vertices, need at least 3");
  if (!is_clique(g, rest))
    throw Error("eliminate_big_clique: the neighbourhood of " +
                std::to_string(c) + " minus " + std::to_string(d) +
                " is not a clique");
  for (int x : rest) {
    if (g.adjacent(d, x))
      throw Error("eliminate_big_clique: " + std::to_string(d) +
                  " is adjacent to clique vertex " + std::to_string(x));
  }

  Trace tr;
  tr.lc(c);
  tr.del(c);
  Graph out = local_complement(g, c).minus_vertex(c);

  // The independent route: drop the other clique edges, contract cd, and put
  // the merged vertex under the label the trace keeps.
  Graph direct = g;
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j)
      direct = direct.minus_edge(rest[i], rest[j]);
  direct = contract_edges(direct, {{c, d}});
  if (std::min(c, d) != d) direct = relabel(direct, {{std::min(c, d), d}});
  if (direct != out)
    throw Error(
        "eliminate_big_clique: trace replay disagrees with the contraction "
        "formula");
  return {out, tr};
}

FanningResult eliminate_fanning(const Graph& g, const std::vector<int>& path,
                                int c) {
  if (path.size() < 3)
    throw Error("eliminate_fanning: path needs at least 3 vertices, got " +
                std::to_string(path.size()));
  for (int v : path)
    if (!g.has_vertex(v))
      throw Error("eliminate_fanning: no vertex " + std::to_string(v));
  if (!g.has_vertex(c))
    throw Error("eliminate_fanning: no vertex " + std::to_string(c));
  {
    std::vector<int> seen = path;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error("eliminate_fanning: repeated path vertex");
    if (sorted_contains(seen, c))
      throw Error("eliminate_fanning: the attachment lies on the path");
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      bool consecutive = j == i + 1;
      if (consecutive && !g.adjacent(path[i], path[j]))
        throw Error("eliminate_fanning: " + std::to_string(path[i]) + " and " +
                    std::to_string(path[j]) + " are not adjacent");
      if (!consecutive && g.adjacent(path[i], path[j]))
        throw Error("eliminate_fanning: chord between " +
                    std::to_string(path[i]) + " and " +
                    std::to_string(path[j]));
    }
  }
  for (int v : {path.front(), path[1], path.back()}) {
    if (g.adjacent(c, v))
      throw Error("eliminate_fanning: the attachment " + std::to_string(c) +
                  " sees " + std::to_string(v));
  }
  std::vector<int> interior(path.begin() + 1, path.end() - 1);
  for (std::size_t i = 0; i < interior.size(); ++i) {
    for (int w : g.neighbors(interior[i])) {
      if (w == path[i] || w == path[i + 2] || w == c) continue;
      throw Error("eliminate_fanning: " + std::to_string(interior[i]) +
                  " has a neighbour " + std::to_string(w) + " off the path");
    }
  }

  std::vector<int> fanned;
  for (std::size_t i = 1; i < interior.size(); ++i)
    if (g.adjacent(interior[i], c)) fanned.push_back(interior[i]);
  const bool cut = fanned.size() >= 3 && fanned.size() % 3 == 0;

  Trace tr;
  Graph cur = g;
  auto lc_at = [&](int v) {
    tr.lc(v);
    cur = local_complement(cur, v);
  };
  auto del_at = [&](int v) {
    tr.del(v);
    cur = cur.minus_vertex(v);
  };
  // Straighten first: interior vertices the attachment does not see are
  // plain links and smooth away.
  for (std::size_t i = 1; i < interior.size(); ++i) {
    if (!g.adjacent(interior[i], c)) {
      tr.smooth(interior[i]);
      cur = smooth(cur, interior[i]);
    }
  }
  // Fold the fan three vertices at a time into the one before them, then
  // finish with the anchor for whatever remains.
  std::vector<int> live = fanned;
  while (live.size() > 3) {
    std::size_t s = live.size();
    lc_at(live[s - 2]);
    lc_at(live[s - 3]);
    lc_at(live[s - 1]);
    del_at(live[s - 3]);
    del_at(live[s - 2]);
    del_at(live[s - 1]);
    live.resize(s - 3);
  }
  switch (live.size()) {
    case 0:
      break;
    case 1:
      tr.smooth(interior.front());
      cur = smooth(cur, interior.front());
      break;
    case 2:
      lc_at(live[0]);
      lc_at(live[1]);
      del_at(live[0]);
      del_at(live[1]);
      break;
    default:  // exactly three: the attachment's edges go
      lc_at(live[1]);
      lc_at(live[0]);
      lc_at(live[2]);
      del_at(live[0]);
      del_at(live[1]);
      del_at(live[2]);
      break;
  }

  Graph direct = g;
  std::vector<std::pair<int, int>> removed;
  if (cut) {
    for (int v : fanned) {
      direct = direct.minus_edge(v, c);
      removed.push_back({v, c});
    }
  }
  std::vector<std::pair<int, int>> chain;
  for (std::size_t i = 0; i + 1 < interior.size(); ++i)
    chain.push_back({interior[i], interior[i + 1]});
  if (!chain.empty()) direct = contract_edges(direct, chain);

  int rep = -1;
  for (int v : interior) {
    if (!cur.has_vertex(v)) continue;
    if (rep >= 0)
      throw Error("eliminate_fanning: internal: two fan representatives");
    rep = v;
  }
  if (rep < 0) throw Error("eliminate_fanning: internal: the fan vanished");
  int lowest = *std::min_element(interior.begin(), interior.end());
  if (lowest != rep) direct = relabel(direct, {{lowest, rep}});
  if (direct != cur)
    throw Error(
        "eliminate_fanning: trace replay disagrees with the contraction "
        "formula");
  return {cur, tr, cut, removed};
}

ShrinkingResult shrinkable_to_shrinking(const Graph& g,
                                        const BloatedTreeDecomp& bt) {
  ShrinkReport gate = classify_interface(g, bt);
  if (gate.classification != ShrinkClass::Shrinkable)
    throw Error("shrinkable_to_shrinking: input is not shrinkable (" +
                (gate.violated.empty()
                     ? std::string("already shrinking, nothing to eliminate")
                     : gate.violated) +
                ")");
  const std::vector<int> L = gate.leaves;

  Graph cur = g;
  std::vector<int> tset = bt.t;
  std::sort(tset.begin(), tset.end());
  Trace tr;
  std::vector<std::pair<int, int>> cuts;
  auto drop = [&tset](int v) {
    tset.erase(std::find(tset.begin(), tset.end(), v));
  };
  auto reanalyze = [&]() {
    BloatedAnalysis an = analyze_bloated_tree(cur, tset);
    if (!an.decomp)
      throw Error("shrinkable_to_shrinking: intermediate state failed "
                  "validation (" +
                  an.violated + ")");
    return *an.decomp;
  };

  // Clique vertices with no tree edge leaving their clique contribute
  // nothing to the final star, and removing them can strand further
  // non-leaves at degree <= 1; both kinds go, cascading until quiet.
  bool changed = true;
  while (changed) {
    changed = false;
    BloatedTreeDecomp d = reanalyze();
    Graph sub = d.tree_graph();
    for (const auto& cq : d.big_cliques) {
      for (int x : cq) {
        if (sub.degree(x) == static_cast<int>(cq.size()) - 1) {
          tr.del(x);
          cur = cur.minus_vertex(x);
          drop(x);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
    if (changed) continue;
    for (int v : tset) {
      if (sub.degree(v) <= 1 && !sorted_contains(L, v)) {
        tr.del(v);
        cur = cur.minus_vertex(v);
        drop(v);
        changed = true;
        break;
      }
    }
  }

  // Dissolve the big cliques, in order of their first members.
  while (true) {
    BloatedTreeDecomp d = reanalyze();
    if (d.big_cliques.empty()) break;
    const std::vector<int>& cq = d.big_cliques.front();
    int c = cq.front();
    std::vector<int> out = sorted_minus(cur.neighbors(c), cq);
    if (out.size() != 1)
      throw Error("shrinkable_to_shrinking: clique vertex " +
                  std::to_string(c) + " has " + std::to_string(out.size()) +
                  " neighbours outside its clique, need exactly 1");
    EliminationResult el = eliminate_big_clique(cur, c, out.front());
    tr.append(el.trace);
    cur = el.graph;
    drop(c);
  }

  // Collapse every run of adjacent attach vertices.  A run shares one
  // attachment (anything else cannot happen under the spacing clauses), and
  // nearby same-attachment vertices up to two steps out fold into the same
  // piece so that the margin handed to eliminate_fanning is clean.
  while (true) {
    BloatedTreeDecomp d = reanalyze();
    if (!d.big_cliques.empty())
      throw Error(
          "shrinkable_to_shrinking: internal: big cliques after dissolution");
    Graph sub = d.tree_graph();
    std::vector<int> special = sorted_union(d.branching, d.attach);
    int s1 = -1, s2 = -1;
    for (int v : special) {
      for (int w : sub.neighbors(v)) {
        if (sorted_contains(special, w)) {
          s1 = v;
          s2 = w;
          break;
        }
      }
      if (s1 >= 0) break;
    }
    if (s1 < 0) break;

    auto zout = [&](int v) { return outside_neighbours(cur, tset, v); };
    if (!sorted_contains(d.attach, s1) || !sorted_contains(d.attach, s2) ||
        zout(s1).size() != 1 || zout(s1) != zout(s2))
      throw Error("shrinkable_to_shrinking: adjacent special vertices " +
                  std::to_string(s1) + " and " + std::to_string(s2) +
                  " do not form a one-attachment run");
    int c = zout(s1).front();

    auto step_from = [&sub](int at, int prev) {
      for (int w : sub.neighbors(at))
        if (w != prev) return w;
      return -1;
    };
    auto is_run_member = [&](int v) {
      return sorted_contains(d.attach, v) && zout(v) == std::vector<int>{c};
    };
    auto walk = [&](int start, int banned) {
      std::vector<int> out;
      int prev = banned, at = start;
      while (true) {
        int n1 = step_from(at, prev);
        if (n1 < 0) break;
        if (is_run_member(n1)) {
          out.push_back(n1);
          prev = at;
          at = n1;
          continue;
        }
        int n2 = step_from(n1, at);
        if (n2 >= 0 && is_run_member(n2) && !sorted_contains(special, n1)) {
          out.push_back(n1);
          out.push_back(n2);
          prev = n1;
          at = n2;
          continue;
        }
        break;
      }
      return out;
    };

    std::vector<int> stretch;
    {
      std::vector<int> left = walk(s1, s2);
      stretch.assign(left.rbegin(), left.rend());
      stretch.push_back(s1);
      stretch.push_back(s2);
      std::vector<int> right = walk(s2, s1);
      stretch.insert(stretch.end(), right.begin(), right.end());
    }
    int p1 = step_from(stretch.front(), stretch[1]);
    int a1 = p1 < 0 ? -1 : step_from(p1, stretch.front());
    int b1 = step_from(stretch.back(), stretch[stretch.size() - 2]);
    if (p1 < 0 || a1 < 0 || b1 < 0)
      throw Error("shrinkable_to_shrinking: no room around the attachment "
                  "run at " +
                  std::to_string(stretch.front()));
    std::vector<int> piece;
    piece.push_back(a1);
    piece.push_back(p1);
    piece.insert(piece.end(), stretch.begin(), stretch.end());
    piece.push_back(b1);

    FanningResult fr = eliminate_fanning(cur, piece, c);
    tr.append(fr.trace);
    cur = fr.graph;
    for (const auto& e : fr.cut_edges) cuts.push_back(e);
    std::vector<int> keep;
    for (int v : tset)
      if (cur.has_vertex(v)) keep.push_back(v);
    tset.swap(keep);
  }

  BloatedTreeDecomp fin = reanalyze();
  if (fin.leaves != L)
    throw Error(
        "shrinkable_to_shrinking: output failed validation (leaf set "
        "drifted)");
  if (!is_stable_set(fin.tree_graph(),
                     sorted_union(fin.branching, fin.attach)))
    throw Error(
        "shrinkable_to_shrinking: output failed validation (branching and "
        "attach vertices are not stable)");
  std::vector<int> t0 = bt.t;
  std::sort(t0.begin(), t0.end());
  std::vector<int> int_in = sorted_minus(t0, L);
  std::vector<int> int_out = sorted_minus(tset, L);
  if (g.minus_vertices(int_in) != cur.minus_vertices(int_out))
    throw Error(
        "shrinkable_to_shrinking: output failed validation (the graph "
        "outside the interior moved)");
  std::vector<int> old_hood = contact_set(g, int_in);
  for (int w : contact_set(cur, int_out)) {
    if (!sorted_contains(old_hood, w))
      throw Error(
          "shrinkable_to_shrinking: output failed validation (interior "
          "neighbourhood grew)");
  }
  if (apply_trace(g, tr) != cur)
    throw Error(
        "shrinkable_to_shrinking: internal: trace does not replay to the "
        "result");
  return {cur, fin, tr, cuts};
}

StarResult contract_to_star(const Graph& g, const BloatedTreeDecomp& bt) {
  ShrinkReport gate = classify_interface(g, bt);
  if (gate.classification != ShrinkClass::Shrinkable)
    throw Error("contract_to_star: input is not shrinkable (" +
                (gate.violated.empty() ? std::string("already shrinking")
                                       : gate.violated) +
                ")");

  ShrinkingResult base = shrinkable_to_shrinking(g, bt);
  Graph cur = base.graph;
  Trace tr = base.trace;
  std::vector<int> tset = base.tree.t;
  const std::vector<int> L = base.tree.leaves;
  auto drop = [&tset](int v) {
    tset.erase(std::find(tset.begin(), tset.end(), v));
  };

  // Eat the interior from the smallest label up.  A vertex between two
  // branching-or-attach neighbours pivots away, taking the smaller neighbour
  // with it; everything else smooths.
  while (true) {
    std::vector<int> interior = sorted_minus(tset, L);
    if (interior.size() <= 2) break;
    Graph sub = cur.induced(tset);
    std::vector<int> special;
    for (int v : interior) {
      if (sub.degree(v) >= 3 || !outside_neighbours(cur, tset, v).empty())
        special.push_back(v);
    }
    int v = -1;
    for (int cand : interior) {
      if (!sorted_contains(special, cand)) {
        v = cand;
        break;
      }
    }
    if (v < 0)
      throw Error(
          "contract_to_star: no admissible vertex; the tree stopped "
          "shrinking");
    std::vector<int> nb = sub.neighbors(v);
    if (nb.size() != 2)
      throw Error("contract_to_star: internal: interior vertex " +
                  std::to_string(v) + " has tree degree " +
                  std::to_string(nb.size()));
    if (sorted_contains(special, nb[0]) && sorted_contains(special, nb[1])) {
      int lo = std::min(nb[0], nb[1]);
      tr.pivot(lo, v);
      cur = pivot(cur, lo, v);
      tr.del(lo);
      tr.del(v);
      cur = cur.minus_vertex(lo).minus_vertex(v);
      drop(lo);
      drop(v);
    } else {
      tr.smooth(v);
      cur = smooth(cur, v);
      drop(v);
    }
  }

  {
    std::vector<int> interior = sorted_minus(tset, L);
    if (interior.size() == 2) {
      Graph sub = cur.induced(tset);
      int s = -1;
      for (int cand : interior) {
        if (sub.degree(cand) <= 2 &&
            outside_neighbours(cur, tset, cand).empty()) {
          s = cand;
          break;
        }
      }
      if (s < 0)
        throw Error(
            "contract_to_star: both interior vertices resist smoothing");
      tr.smooth(s);
      cur = smooth(cur, s);
      drop(s);
    }
  }

  std::vector<int> t0 = bt.t;
  std::sort(t0.begin(), t0.end());
  std::vector<int> int_in = sorted_minus(t0, L);
  std::vector<int> int_out = sorted_minus(tset, L);
  int center = int_out.empty() ? -1 : int_out.front();

  // E* falls out of the result: an outside contact the center no longer
  // sees lost every edge it had into the interior.
  std::vector<std::pair<int, int>> estar;
  for (int x : contact_set(g, int_in)) {
    if (sorted_contains(t0, x)) continue;
    if (center >= 0 && cur.adjacent(center, x)) continue;
    for (int y : int_in)
      if (g.adjacent(y, x)) estar.push_back({y, x});
  }

  Graph direct = g;
  for (const auto& [y, x] : estar) direct = direct.minus_edge(y, x);
  std::vector<std::pair<int, int>> chain = g.induced(int_in).edge_list();
  if (!chain.empty()) direct = contract_edges(direct, chain);
  if (!int_in.empty() && int_in.front() != center)
    direct = relabel(direct, {{int_in.front(), center}});
  if (direct != cur)
    throw Error(
        "contract_to_star: trace replay disagrees with the contraction "
        "formula");

  if (center >= 0) {
    if (tset.size() != L.size() + 1)
      throw Error(
          "contract_to_star: output failed validation (stray interior "
          "vertices)");
    Graph star = cur.induced(tset);
    for (int l : L) {
      if (!star.adjacent(center, l) || star.degree(l) != 1)
        throw Error(
            "contract_to_star: output failed validation (not a star on the "
            "leaves)");
    }
  }
  if (g.minus_vertices(int_in) != cur.minus_vertices(int_out))
    throw Error(
        "contract_to_star: output failed validation (the graph outside the "
        "interior moved)");
  std::vector<int> old_hood = contact_set(g, int_in);
  for (int w : contact_set(cur, int_out)) {
    if (!sorted_contains(old_hood, w))
      throw Error(
          "contract_to_star: output failed validation (interior "
          "neighbourhood grew)");
  }
  if (apply_trace(g, tr) != cur)
    throw Error(
        "contract_to_star: internal: trace does not replay to the result");

  StarCertificate cert;
  cert.center = center;
  cert.leaves = L;
  cert.external_cut = estar;
  return {cur, cert, tr};
}

}  // namespace vmc
