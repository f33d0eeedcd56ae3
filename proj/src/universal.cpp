#include "vmc/universal.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "vmc/solvers.hpp"

namespace vmc {

namespace {

long long choose2(long long k) { return k * (k - 1) / 2; }

BicliqueRoles canonical_roles(const SubdividedBiclique& b) {
  BicliqueRoles r;
  for (int i = 1; i <= b.n; ++i) r.xs.push_back(b.x(i));
  for (int j = 1; j <= b.m; ++j) r.ys.push_back(b.y(j));
  r.zs.assign(b.n, {});
  for (int i = 1; i <= b.n; ++i)
    for (int j = 1; j <= b.m; ++j) r.zs[i - 1].push_back(b.z(i, j));
  return r;
}

}  // namespace

EmbedResult embed_on(const BicliqueRoles& host, const Graph& target) {
  if (target.n() < 1) throw Error("embed_on: need at least one vertex");
  int n = target.n();
  int m = static_cast<int>(choose2(n));
  int rows = static_cast<int>(host.xs.size());
  int trees = static_cast<int>(host.ys.size());
  if (rows < n || trees < m)
    throw Error("embed_on: host is K^1_{" + std::to_string(rows) + "," +
                std::to_string(trees) + "}, need at least (" + std::to_string(n) +
                "," + std::to_string(m) + ")");

  EmbedResult out;
  const std::vector<int>& vs = target.vertices();
  for (int i = 0; i < n; ++i) out.correspondence[vs[i]] = host.xs[i];

  // surplus rows and trees go first, subdivision vertices before their hub
  for (int i = n; i < rows; ++i) {
    for (int j = 0; j < trees; ++j) {
      out.trace.del(host.zs[i][j]);
      ++out.stats.trim_deletions;
    }
    out.trace.del(host.xs[i]);
    ++out.stats.trim_deletions;
  }
  for (int j = m; j < trees; ++j) {
    for (int i = 0; i < n; ++i) {
      out.trace.del(host.zs[i][j]);
      ++out.stats.trim_deletions;
    }
    out.trace.del(host.ys[j]);
    ++out.stats.trim_deletions;
  }

  // pair e <-> tree e, pairs of row positions in lexicographic order
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  // collapse every kept tree onto its pair: spare subdivision vertices go,
  // the two kept ones are smoothed so the tree top becomes the pair midpoint
  for (int e = 0; e < m; ++e) {
    auto [ri, rj] = pairs[e];
    for (int i = 0; i < n; ++i) {
      if (i == ri || i == rj) continue;
      out.trace.del(host.zs[i][e]);
      ++out.stats.setup_deletions;
    }
    out.trace.smooth(host.zs[ri][e]);
    out.trace.smooth(host.zs[rj][e]);
    out.stats.setup_smoothings += 2;
  }

  // then decide each midpoint by the target's adjacency
  for (int e = 0; e < m; ++e) {
    auto [ri, rj] = pairs[e];
    if (target.adjacent(vs[ri], vs[rj])) {
      out.trace.smooth(host.ys[e]);
      ++out.stats.edge_smoothings;
    } else {
      out.trace.del(host.ys[e]);
      ++out.stats.nonedge_deletions;
    }
  }
  return out;
}

UniversalEmbedResult embed_universal(const Graph& target) {
  if (target.n() < 1) throw Error("embed_universal: need at least one vertex");
  UniversalEmbedResult out;
  out.host = make_biclique(target.n(),
                           static_cast<int>(choose2(target.n())),
                           InterferenceMode::None);
  EmbedResult e = embed_on(canonical_roles(out.host), target);
  out.trace = std::move(e.trace);
  out.correspondence = std::move(e.correspondence);
  out.stats = e.stats;

  Graph expected =
      relabel(target, {out.correspondence.begin(), out.correspondence.end()});
  if (apply_trace(out.host.graph(), out.trace) != expected)
    throw Error("embed_universal: replay does not reproduce the target");
  return out;
}

ExtractResult extract_knn(const SubdividedBiclique& ic, int n) {
  if (n < 1) throw Error("extract_knn: n must be positive");
  long long need_rows = ramsey(n, n).value;
  long long profile_bits = choose2(ic.n);
  long long need_trees = -1;  // < 0 when it does not fit
  if (profile_bits <= 61) {
    long long classes = 1LL << profile_bits;
    if (classes <= LLONG_MAX / (n + 1)) need_trees = classes * (n + 1);
  }
  std::string need_trees_text =
      need_trees >= 0 ? std::to_string(need_trees)
                      : "2^" + std::to_string(profile_bits) + "*" +
                            std::to_string(n + 1);
  if (ic.n < need_rows || need_trees < 0 || ic.m < need_trees)
    throw Error("extract_knn: need N1 >= " + std::to_string(need_rows) +
                " and N2 >= " + need_trees_text + ", got (" + std::to_string(ic.n) +
                "," + std::to_string(ic.m) + ")");

  // interference profile of each tree: the row pairs (k < i) with x_k z_{i,j}
  std::vector<std::vector<std::pair<int, int>>> profile(ic.m + 1);
  for (auto [xl, zl] : ic.interference) {
    int k = xl + 1;
    int off = zl - ic.n - ic.m;
    profile[off % ic.m + 1].emplace_back(k, off / ic.m + 1);
  }
  std::map<std::vector<std::pair<int, int>>, std::vector<int>> classes;
  for (int j = 1; j <= ic.m; ++j) {
    std::sort(profile[j].begin(), profile[j].end());
    classes[profile[j]].push_back(j);
  }

  const std::vector<int>* chosen_class = nullptr;
  for (const auto& [key, members] : classes)
    if (static_cast<int>(members.size()) >= n + 1)
      if (!chosen_class || members.front() < chosen_class->front())
        chosen_class = &members;
  if (!chosen_class)
    throw Error("extract_knn: internal: pigeonhole failed despite dimensions");

  // the shared pattern, as a graph on row indices
  std::vector<int> row_ids(ic.n);
  for (int i = 0; i < ic.n; ++i) row_ids[i] = i + 1;
  Graph pattern = Graph::from_edges(row_ids, profile[chosen_class->front()]);

  ExtractResult out;
  auto stable = find_stable_set(pattern, n);
  if (stable) {
    out.rows = *stable;
  } else {
    auto clique = find_clique(pattern, n);
    if (!clique)
      throw Error("extract_knn: internal: Ramsey split found neither witness");
    out.rows = *clique;
    out.via_clique = true;
  }
  int keep_trees = out.via_clique ? n + 1 : n;
  out.trees.assign(chosen_class->begin(), chosen_class->begin() + keep_trees);

  // restriction first: drop everything outside the chosen rows and trees
  Graph host = ic.graph();
  std::vector<int> keep;
  for (int i : out.rows) keep.push_back(ic.x(i));
  for (int j : out.trees) keep.push_back(ic.y(j));
  for (int i : out.rows)
    for (int j : out.trees) keep.push_back(ic.z(i, j));
  std::sort(keep.begin(), keep.end());
  for (int v : host.vertices())
    if (!sorted_contains(keep, v)) out.trace.del(v);

  std::vector<int> expected_vs;
  std::vector<std::pair<int, int>> expected_es;
  out.roles.zs.assign(n, {});
  if (out.via_clique) {
    // pivot the interference away along the last tree, then discard it
    // together with the original left side
    int last = out.trees.back();
    for (int idx = n - 1; idx >= 0; --idx)
      out.trace.pivot(ic.x(out.rows[idx]), ic.z(out.rows[idx], last));
    out.trace.del(ic.y(last));
    for (int idx = n - 1; idx >= 0; --idx) out.trace.del(ic.x(out.rows[idx]));

    // the sacrificial tree's subdivision vertices are the new left side
    for (int a = 0; a < n; ++a) {
      int i = out.rows[a];
      out.roles.xs.push_back(ic.z(i, last));
      expected_vs.push_back(ic.z(i, last));
      for (int t = 0; t < n; ++t) {
        int j = out.trees[t];
        out.roles.zs[a].push_back(ic.z(i, j));
        expected_vs.push_back(ic.z(i, j));
        expected_es.emplace_back(ic.z(i, last), ic.z(i, j));
        expected_es.emplace_back(ic.z(i, j), ic.y(j));
      }
    }
    for (int t = 0; t < n; ++t) {
      out.roles.ys.push_back(ic.y(out.trees[t]));
      expected_vs.push_back(ic.y(out.trees[t]));
    }
  } else {
    for (int a = 0; a < n; ++a) {
      int i = out.rows[a];
      out.roles.xs.push_back(ic.x(i));
      expected_vs.push_back(ic.x(i));
      for (int j : out.trees) {
        out.roles.zs[a].push_back(ic.z(i, j));
        expected_vs.push_back(ic.z(i, j));
        expected_es.emplace_back(ic.x(i), ic.z(i, j));
        expected_es.emplace_back(ic.z(i, j), ic.y(j));
      }
    }
    for (int j : out.trees) {
      out.roles.ys.push_back(ic.y(j));
      expected_vs.push_back(ic.y(j));
    }
  }
  Graph expected = Graph::from_edges(expected_vs, expected_es);

  out.result = apply_trace(host, out.trace);
  if (out.result != expected)
    throw Error("extract_knn: replay disagrees with the predicted graph");
  return out;
}

UniversalParameters universal_parameters(const Graph& target) {
  UniversalParameters p{};
  if (target.n() <= 1) {
    p.target_side = 1;
    p.q = {1, true};
    p.h_exponent = 0;
    p.h_factor = 1;
    p.h_fits = true;
    p.h_count = 1;
    return p;
  }
  long long n = target.n();
  p.target_side = std::max(n, choose2(n));
  if (p.target_side > INT_MAX) throw Error("universal_parameters: target too large");
  p.q = ramsey(static_cast<int>(p.target_side), static_cast<int>(p.target_side));
  if (p.q.value > 3037000499LL)
    throw Error("universal_parameters: tree count exponent overflows");
  p.h_exponent = choose2(p.q.value);
  p.h_factor = p.target_side + 1;
  p.h_fits =
      p.h_exponent <= 61 && (1LL << p.h_exponent) <= LLONG_MAX / p.h_factor;
  p.h_count = p.h_fits ? (1LL << p.h_exponent) * p.h_factor : -1;
  return p;
}

ChainResult universal_chain(const SubdividedBiclique& ic, const Graph& target) {
  if (target.n() < 1) throw Error("universal_chain: need at least one vertex");
  long long side = std::max<long long>(target.n(), choose2(target.n()));
  if (side > INT_MAX) throw Error("universal_chain: target too large");
  ExtractResult ex = extract_knn(ic, static_cast<int>(side));
  EmbedResult em = embed_on(ex.roles, target);

  ChainResult out;
  out.trace = ex.trace;
  out.trace.append(em.trace);
  out.correspondence = std::move(em.correspondence);

  Graph expected =
      relabel(target, {out.correspondence.begin(), out.correspondence.end()});
  if (apply_trace(ic.graph(), out.trace) != expected)
    throw Error("universal_chain: replay does not reproduce the target");
  return out;
}

}  // namespace vmc
