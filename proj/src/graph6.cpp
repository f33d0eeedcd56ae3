#include "vmc/graph6.hpp"

#include <algorithm>
#include <cstdint>

namespace vmc {

namespace {

void require_plain_labels(const Graph& g, const char* who) {
  for (int i = 0; i < g.n(); ++i)
    if (g.vertices()[i] != i)
      throw Error(std::string(who) + ": vertex labels must be exactly 0.." +
                  std::to_string(g.n() - 1) + " (found " +
                  std::to_string(g.vertices()[i]) + ")");
}

std::string offset_msg(const std::string& what, std::size_t off) {
  return "graph6: " + what + " at offset " + std::to_string(off);
}

// Upper-triangle bits in column order: (0,1), (0,2), (1,2), (0,3), ...
std::string pack(int n, const std::vector<std::uint8_t>& bits) {
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  for (std::size_t k = 0; k < bits.size(); k += 6) {
    int group = 0;
    for (std::size_t b = 0; b < 6; ++b)
      if (k + b < bits.size() && bits[k + b]) group |= 32 >> b;
    out.push_back(static_cast<char>(group + 63));
  }
  return out;
}

}  // namespace

std::string graph6_encode(const Graph& g) {
  require_plain_labels(g, "graph6_encode");
  int n = g.n();
  if (n > 258047) throw Error("graph6_encode: graph too large");
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.adjacent(i, j) ? 1 : 0);
  return pack(n, bits);
}

Graph graph6_decode(const std::string& s) {
  if (s.empty()) throw Error(offset_msg("empty input", 0));
  std::size_t pos = 0;
  auto next = [&](const char* why) -> int {
    if (pos >= s.size()) throw Error(offset_msg(std::string("truncated ") + why, pos));
    unsigned char c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw Error(offset_msg("byte out of range", pos));
    ++pos;
    return c - 63;
  };

  long long n;
  if (static_cast<unsigned char>(s[0]) == 126) {
    ++pos;
    if (pos < s.size() && static_cast<unsigned char>(s[pos]) == 126)
      throw Error(offset_msg("graph too large for this decoder", pos));
    long long a = next("size"), b = next("size"), c = next("size");
    n = (a << 12) | (b << 6) | c;
  } else {
    n = next("size");
  }

  std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<std::uint8_t> bits(nbits, 0);
  for (std::size_t k = 0; k < nbits; k += 6) {
    int group = next("adjacency data");
    for (std::size_t b = 0; b < 6; ++b) {
      bool bit = group & (32 >> b);
      if (k + b < nbits) {
        bits[k + b] = bit;
      } else if (bit) {
        throw Error(offset_msg("padding bits set", pos - 1));
      }
    }
  }
  if (pos != s.size()) throw Error(offset_msg("trailing data", pos));

  std::vector<int> vs(n);
  for (long long i = 0; i < n; ++i) vs[i] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if (bits[k]) edges.emplace_back(i, j);
  return Graph::from_edges(std::move(vs), edges);
}

namespace {

// Minimise the triangle bit string over all relabellings by extending a
// partial placement one position at a time.  Placing position j fixes
// column j of the triangle, so we can compare against the best completed
// string column by column and cut branches that already lost.
struct CanonSearch {
  int n;
  std::vector<std::vector<std::uint8_t>> adj;  // by original position
  std::vector<std::uint8_t> best, cur;
  std::vector<int> perm;                       // new position -> original position
  std::vector<std::uint8_t> used;
  bool have_best = false;
  std::uint64_t generation = 0;                // bumps whenever best is replaced

  explicit CanonSearch(const Graph& g) : n(g.n()) {
    adj.assign(n, std::vector<std::uint8_t>(n, 0));
    for (auto [a, b] : g.edge_list()) {
      int i = index_of(g, a), j = index_of(g, b);
      adj[i][j] = adj[j][i] = 1;
    }
    perm.assign(n, -1);
    used.assign(n, 0);
    cur.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  }

  static int index_of(const Graph& g, int label) {
    auto& vs = g.vertices();
    return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), label) - vs.begin());
  }

  // tighter == cur[0..col) is strictly below the current best
  void extend(int j, bool tighter) {
    if (j == n) {
      best = cur;
      have_best = true;
      ++generation;
      return;
    }
    std::size_t col = static_cast<std::size_t>(j) * (j - 1) / 2;
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand]) continue;
      bool t = tighter;
      bool worse = false;
      for (int i = 0; i < j; ++i) {
        std::uint8_t bit = adj[perm[i]][cand];
        cur[col + i] = bit;
        if (!t && have_best) {
          if (bit > best[col + i]) {
            worse = true;
            break;
          }
          if (bit < best[col + i]) t = true;
        }
      }
      if (worse) continue;
      used[cand] = 1;
      perm[j] = cand;
      std::uint64_t before = generation;
      extend(j + 1, t);
      used[cand] = 0;
      // a best found inside the subtree extends cur's prefix, so for the
      // remaining candidates the prefix comparison is equality, not less-than
      if (generation != before) tighter = false;
    }
  }
};

}  // namespace

std::string canonical_graph6(const Graph& g) {
  if (g.n() == 0) return graph6_encode(g);
  CanonSearch search(g);
  search.extend(0, false);
  return pack(g.n(), search.best);
}

}  // namespace vmc
