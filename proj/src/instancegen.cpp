#include "vmc/instancegen.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vmc/shrink.hpp"

namespace vmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x51ed270b0f4dcbebULL));
}

Graph random_tree(int n, std::uint64_t seed) {
  if (n <= 0) throw Error("random_tree: need n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    vs[v] = v;
    if (v > 0) {
      int u = static_cast<int>(rng() % v);
      edges.push_back({u, v});
    }
  }
  return Graph::from_edges(vs, edges);
}

Graph random_connected_graph(int n, int extra, std::uint64_t seed) {
  Graph g = random_tree(n, seed);
  long long room = static_cast<long long>(n) * (n - 1) / 2 - g.m();
  if (extra > room)
    throw Error("random_connected_graph: only " + std::to_string(room) +
                " chords available, asked for " + std::to_string(extra));
  std::mt19937_64 rng(splitmix64(seed));
  int added = 0;
  while (added < extra) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    if (a == b || g.adjacent(a, b)) continue;
    g = g.plus_edge(a, b);
    ++added;
  }
  return g;
}

BloatedTreeDecomp random_bloated_tree(int skeleton_n, std::uint64_t seed) {
  if (skeleton_n <= 0) throw Error("random_bloated_tree: need skeleton_n >= 1");
  Graph skel = random_tree(skeleton_n, seed);
  std::mt19937_64 rng(splitmix64(seed ^ 0xb10a7edULL));

  // decide per skeleton vertex: stay a vertex, or become a clique of size
  // >= max(3, degree) so each skeleton edge can land on its own member
  std::vector<std::vector<int>> members(skeleton_n);
  int next = 0;
  for (int v = 0; v < skeleton_n; ++v) {
    bool blow = skeleton_n >= 2 && rng() % 4 == 0;
    int k = 1;
    if (blow) k = std::max(3 + static_cast<int>(rng() % 3), skel.degree(v));
    for (int i = 0; i < k; ++i) members[v].push_back(next++);
  }

  std::vector<int> vs(next);
  for (int i = 0; i < next; ++i) vs[i] = i;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < skeleton_n; ++v)
    for (std::size_t i = 0; i < members[v].size(); ++i)
      for (std::size_t j = i + 1; j < members[v].size(); ++j)
        edges.push_back({members[v][i], members[v][j]});

  // rotate through the members so no one of them takes two skeleton edges
  std::vector<int> cursor(skeleton_n, 0);
  for (auto [a, b] : skel.edge_list()) {
    int ma = members[a][cursor[a]++ % members[a].size()];
    int mb = members[b][cursor[b]++ % members[b].size()];
    edges.push_back({std::min(ma, mb), std::max(ma, mb)});
  }

  Graph host = Graph::from_edges(vs, edges);
  BloatedAnalysis a = analyze_bloated_tree(host, vs);
  if (!a.decomp)
    throw Error("random_bloated_tree: generated graph failed validation (" +
                a.violated + ")");
  return *a.decomp;
}

ShrinkInstance random_shrinkable_tree(int legs, std::uint64_t seed) {
  if (legs < 1) throw Error("random_shrinkable_tree: need legs >= 1");
  std::mt19937_64 rng(seed);

  std::vector<int> vs;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> t;
  int next = 0;
  auto fresh = [&](bool in_tree) {
    vs.push_back(next);
    if (in_tree) t.push_back(next);
    return next++;
  };
  auto clique_on = [&](const std::vector<int>& ms) {
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j)
        edges.push_back({ms[i], ms[j]});
  };

  // The hub is one vertex, or occasionally a big clique handing one member
  // to each leg (plus a spare member for the cleanup pass to delete).
  std::vector<int> hubport;
  if (legs >= 3 && legs <= 4 && rng() % 3 == 0) {
    int k = legs + static_cast<int>(rng() % 2);
    std::vector<int> members;
    for (int i = 0; i < k; ++i) members.push_back(fresh(true));
    clique_on(members);
    hubport.assign(members.begin(), members.begin() + legs);
  } else {
    hubport.assign(legs, fresh(true));
  }

  int shared_c = -1;
  int capped = 0;  // legs ending in a clique instead of a tip
  std::vector<int> tips, attachments;
  for (int leg = 0; leg < legs; ++leg) {
    int prev = hubport[leg];
    auto extend = [&](int count) {
      for (int i = 0; i < count; ++i) {
        int v = fresh(true);
        edges.push_back({prev, v});
        prev = v;
      }
    };
    int feature = static_cast<int>(rng() % 4);
    // A leg burned back to the hub leaves no tip behind, so at least two
    // legs must keep theirs or the whole interior disappears.
    if (feature == 3 && capped >= legs - 2) feature = 0;

    if (feature == 0) {
      extend(6 + static_cast<int>(rng() % 4));
      tips.push_back(prev);
    } else if (feature == 1 || feature == 3) {
      extend(4 + static_cast<int>(rng() % 3));
      int k = 3 + static_cast<int>(rng() % 2);
      std::vector<int> members;
      for (int i = 0; i < k; ++i) members.push_back(fresh(true));
      clique_on(members);
      edges.push_back({prev, members[0]});
      if (feature == 1) {
        // members[0] and [1] carry the leg onwards; the others either sit
        // idle (deleted during cleanup) or hold a pendant path that keeps
        // them alive into the elimination step proper.
        for (int i = 2; i < k; ++i) {
          if (rng() % 2) {
            int q1 = fresh(true), q2 = fresh(true);
            edges.push_back({members[i], q1});
            edges.push_back({q1, q2});
            tips.push_back(q2);
          }
        }
        prev = members[1];
        extend(2 + static_cast<int>(rng() % 3));
        tips.push_back(prev);
      } else {
        ++capped;
      }
    } else {
      extend(4 + static_cast<int>(rng() % 3));
      int c;
      if (shared_c >= 0 && rng() % 2 == 0) {
        c = shared_c;
      } else {
        c = fresh(false);
        attachments.push_back(c);
        if (shared_c < 0 && rng() % 2 == 0) shared_c = c;
      }
      int r = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < r; ++i) {
        if (i > 0 && rng() % 3 == 0) extend(1);
        int z = fresh(true);
        edges.push_back({prev, z});
        edges.push_back({z, c});
        prev = z;
      }
      extend(3 + static_cast<int>(rng() % 3));
      tips.push_back(prev);
    }
  }

  // Distractors: outside vertices hanging off attachments, tips, or nothing.
  std::vector<int> outsiders = attachments;
  int noise = static_cast<int>(rng() % 4);
  for (int i = 0; i < noise; ++i) {
    int v = fresh(false);
    int kind = static_cast<int>(rng() % 3);
    if (kind == 0 && !outsiders.empty()) {
      edges.push_back({outsiders[rng() % outsiders.size()], v});
    } else if (kind == 1 && !tips.empty()) {
      edges.push_back({tips[rng() % tips.size()], v});
    }
    outsiders.push_back(v);
  }

  std::vector<int> perm = vs;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::unordered_map<int, int> m;
  for (int i = 0; i < next; ++i) m[i] = perm[i];
  Graph host = relabel(Graph::from_edges(vs, edges), m);
  std::vector<int> tt;
  for (int v : t) tt.push_back(m[v]);
  std::sort(tt.begin(), tt.end());

  BloatedAnalysis an = analyze_bloated_tree(host, tt);
  if (!an.decomp)
    throw Error("random_shrinkable_tree: generated host failed validation (" +
                an.violated + ")");
  ShrinkInstance inst{host, *an.decomp};
  ShrinkReport rep = classify_interface(host, inst.tree);
  if (rep.classification != ShrinkClass::Shrinkable)
    throw Error("random_shrinkable_tree: generated host is not shrinkable (" +
                rep.violated + ")");
  return inst;
}

CliqueEliminationInstance random_clique_elimination_instance(
    int size_hint, std::uint64_t seed) {
  if (size_hint < 8)
    throw Error("random_clique_elimination_instance: need size_hint >= 8");
  std::mt19937_64 rng(seed);
  int k = 3 + static_cast<int>(rng() % 3);
  int bg = size_hint - k;
  int room = (bg - 1) * (bg - 2) / 2;
  int extra = static_cast<int>(rng() % std::min(bg, room + 1));
  Graph back = random_connected_graph(bg, extra, mix_seed(seed, 1));
  std::unordered_map<int, int> shift;
  for (int i = 0; i < bg; ++i) shift[i] = i + k;
  back = relabel(back, shift);

  int d = k;
  std::vector<int> vs;
  for (int v = 0; v < k + bg; ++v) vs.push_back(v);
  std::vector<std::pair<int, int>> edges = back.edge_list();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j});
  edges.push_back({0, d});
  // the other members may reach anywhere in the background except d itself,
  // which keeps the elimination legal without making it sterile
  for (int i = 1; i < k; ++i) {
    if (rng() % 2 == 0) {
      int y = k + static_cast<int>(rng() % bg);
      if (y != d) edges.push_back({i, y});
    }
  }
  return {Graph::from_edges(vs, edges), 0, d};
}

FanningInstance random_fanning_instance(int size_hint, std::uint64_t seed) {
  if (size_hint < 12)
    throw Error("random_fanning_instance: need size_hint >= 12");
  std::mt19937_64 rng(seed);
  int m = 1 + static_cast<int>(rng() % 7);  // interior vertices
  int bg = size_hint - m - 3;
  int n = m + 3 + bg;
  std::vector<int> vs(n);
  for (int i = 0; i < n; ++i) vs[i] = i;
  std::vector<int> pool = vs;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> path(pool.begin(), pool.begin() + m + 2);
  int c = pool[m + 2];
  std::vector<int> back(pool.begin() + m + 3, pool.end());

  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    edges.push_back({path[i], path[i + 1]});
  // fan some of the interior onto c; the first interior vertex stays clean
  int kstar = m >= 2 ? static_cast<int>(rng() % m) : 0;
  std::vector<int> idx;
  for (int i = 2; i <= m; ++i) idx.push_back(i);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(kstar);
  for (int i : idx) edges.push_back({path[i], c});
  // background touches the world only through the path ends and c
  for (std::size_t i = 0; i < back.size(); ++i) {
    if (i > 0 && rng() % 2 == 0)
      edges.push_back({back[i], back[rng() % i]});
    int hook = static_cast<int>(rng() % 4);
    if (hook == 0) edges.push_back({back[i], path.front()});
    if (hook == 1) edges.push_back({back[i], path.back()});
    if (hook == 2) edges.push_back({back[i], c});
  }
  return {Graph::from_edges(vs, edges), path, c};
}

PlantedControl planted_control_instance(int covers, int paths,
                                        std::uint64_t seed) {
  if (covers != 1)
    throw Error(
        "planted_control_instance: only single-cover instances are generated");
  if (paths < 1) throw Error("planted_control_instance: paths must be positive");
  int h = paths;
  int road_len = 10 * (h - 1) + 9;  // w_0 .. w_{10(h-1)+8}
  int blob_size = 2 * h + 1;

  // Logical ids first; only the apex and the road's level-entry vertices get
  // pinned labels (0 and 1..h), everything else is shuffled.  The pipeline
  // steers by smallest label, so those pins decide where it walks.
  int total = 1 + h + road_len + h + 3 * (road_len + h) + 4 * blob_size;
  std::vector<int> label(total, -1);
  int next_id = 0;
  auto fresh = [&] { return next_id++; };

  int apex = fresh();
  std::vector<int> feet(h);
  for (int j = 0; j < h; ++j) feet[j] = fresh();
  std::vector<int> road(road_len);
  for (int i = 0; i < road_len; ++i) road[i] = fresh();
  std::vector<int> ks(h);
  for (int j = 0; j < h; ++j) ks[j] = fresh();

  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < h; ++j) edges.push_back({apex, feet[j]});
  for (int i = 0; i + 1 < road_len; ++i)
    edges.push_back({road[i], road[i + 1]});
  for (int a = 0; a < h; ++a) {
    edges.push_back({ks[a], road[road_len - 1]});
    for (int b = a + 1; b < h; ++b) edges.push_back({ks[a], ks[b]});
  }

  // private four-step route from the right foot to every road-side vertex
  auto route = [&](int foot, int u) {
    int c = fresh(), d = fresh(), e = fresh();
    edges.push_back({foot, c});
    edges.push_back({c, d});
    edges.push_back({d, e});
    edges.push_back({e, u});
  };
  for (int i = 0; i < road_len; ++i)
    route(feet[std::min(i / 10, h - 1)], road[i]);
  for (int j = 0; j < h; ++j) route(feet[h - 1], ks[j]);

  std::vector<int> blob(blob_size);
  for (int b = 0; b < blob_size; ++b) {
    blob[b] = fresh();
    for (int a = 0; a < b; ++a) edges.push_back({blob[a], blob[b]});
  }
  for (int b = 0; b < blob_size; ++b) route(feet[0], blob[b]);

  label[apex] = 0;
  label[road[0]] = 1;
  // road vertices of one decade share a foot, so the radius-9 prune around
  // w_{10j} reaches one vertex past the decade boundary; the next level
  // enters at w_{10j+1}, which therefore carries the next pinned label
  for (int j = 1; j < h; ++j) label[road[10 * j + 1]] = j + 1;
  std::vector<int> pool;
  for (int l = h + 1; l < total; ++l) pool.push_back(l);
  std::mt19937_64 rng(mix_seed(seed, 0x9a11ad));
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t at = 0;
  for (int id = 0; id < total; ++id) {
    if (label[id] < 0) label[id] = pool[at++];
  }

  std::vector<int> vs(total);
  for (int id = 0; id < total; ++id) vs[id] = label[id];
  std::vector<std::pair<int, int>> relabeled;
  for (const auto& [a, b] : edges) relabeled.push_back({label[a], label[b]});
  return {Graph::from_edges(vs, relabeled), covers, paths, 1};
}

}  // namespace vmc
