#include "vmc/families.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vmc/graph6.hpp"

namespace vmc {

Graph complete_graph(int n) {
  if (n < 0) throw Error("complete_graph: negative order");
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    vs[i] = i;
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  }
  return Graph::from_edges(std::move(vs), es);
}

Graph complete_bipartite(int n, int m) {
  if (n < 0 || m < 0) throw Error("complete_bipartite: negative side");
  std::vector<int> vs(n + m);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n + m; ++i) vs[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) es.emplace_back(i, n + j);
  return Graph::from_edges(std::move(vs), es);
}

Graph path_n(int n) {
  if (n < 0) throw Error("path_n: negative order");
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    vs[i] = i;
    if (i) es.emplace_back(i - 1, i);
  }
  return Graph::from_edges(std::move(vs), es);
}

Graph cycle_n(int n) {
  if (n < 3) throw Error("cycle_n: need at least 3 vertices");
  std::vector<int> vs(n);
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) {
    vs[i] = i;
    es.emplace_back(i, (i + 1) % n);
  }
  return Graph::from_edges(std::move(vs), es);
}

Graph wheel_graph(int rim) {
  if (rim < 3) throw Error("wheel_graph: need a rim of at least 3");
  Graph g = cycle_n(rim);
  std::vector<int> vs = g.vertices();
  vs.push_back(rim);
  auto es = g.edge_list();
  for (int i = 0; i < rim; ++i) es.emplace_back(i, rim);
  return Graph::from_edges(std::move(vs), es);
}

Graph subdivide_each_edge(const Graph& g, int k) {
  if (k < 0) throw Error("subdivide_each_edge: negative interior count");
  int fresh = g.n() == 0 ? 0 : g.vertices().back() + 1;
  std::vector<int> vs = g.vertices();
  std::vector<std::pair<int, int>> es;
  for (auto [a, b] : g.edge_list()) {
    int prev = a;
    for (int t = 0; t < k; ++t) {
      vs.push_back(fresh);
      es.emplace_back(prev, fresh);
      prev = fresh++;
    }
    es.emplace_back(prev, b);
  }
  return Graph::from_edges(std::move(vs), es);
}

int SubdividedBiclique::x(int i) const {
  if (i < 1 || i > n) throw Error("biclique: x index " + std::to_string(i) + " out of range");
  return i - 1;
}

int SubdividedBiclique::y(int j) const {
  if (j < 1 || j > m) throw Error("biclique: y index " + std::to_string(j) + " out of range");
  return n + j - 1;
}

int SubdividedBiclique::z(int i, int j) const {
  x(i);
  y(j);
  return n + m + (i - 1) * m + (j - 1);
}

bool SubdividedBiclique::interference_allowed(int a, int b) const {
  // a must be x(k), b must be z(i,j) with k < i
  if (a < 0 || a >= n) return false;
  int off = b - n - m;
  if (off < 0 || off >= n * m) return false;
  return a + 1 < off / m + 1;
}

Graph SubdividedBiclique::graph() const {
  std::vector<int> vs;
  std::vector<std::pair<int, int>> es;
  for (int i = 1; i <= n; ++i) vs.push_back(x(i));
  for (int j = 1; j <= m; ++j) vs.push_back(y(j));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      vs.push_back(z(i, j));
      es.emplace_back(x(i), z(i, j));
      es.emplace_back(z(i, j), y(j));
    }
  for (auto [a, b] : interference) {
    if (!interference_allowed(a, b))
      throw Error("biclique: interference edge {" + std::to_string(a) + "," +
                  std::to_string(b) + "} outside the allowed set");
    es.emplace_back(a, b);
  }
  return Graph::from_edges(std::move(vs), es);
}

bool SubdividedBiclique::completely_interfered() const {
  return static_cast<long long>(interference.size()) ==
         static_cast<long long>(n) * (n - 1) / 2 * m;
}

std::string SubdividedBiclique::to_json() const {
  nlohmann::json inter = nlohmann::json::array();
  for (auto [a, b] : interference) inter.push_back({a, b});
  nlohmann::json j = {{"family", "interfered"},
                      {"n", n},
                      {"m", m},
                      {"interference", inter}};
  return j.dump();
}

SubdividedBiclique SubdividedBiclique::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("biclique certificate: ") + e.what());
  }
  if (!j.is_object() || j.value("family", "") != "interfered")
    throw Error("biclique certificate: not an interfered family record");
  SubdividedBiclique b;
  b.n = j.at("n").get<int>();
  b.m = j.at("m").get<int>();
  for (const auto& e : j.at("interference")) {
    if (!e.is_array() || e.size() != 2)
      throw Error("biclique certificate: malformed interference entry");
    b.interference.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::sort(b.interference.begin(), b.interference.end());
  return b;
}

SubdividedBiclique make_biclique(int n, int m, InterferenceMode mode,
                                 std::uint64_t seed) {
  if (n < 0 || m < 0) throw Error("make_biclique: negative side");
  SubdividedBiclique b;
  b.n = n;
  b.m = m;
  std::mt19937_64 rng(seed);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k < i; ++k) {
        bool take = mode == InterferenceMode::Complete ||
                    (mode == InterferenceMode::Random && (rng() & 1));
        if (take) b.interference.emplace_back(b.x(k), b.z(i, j));
      }
  std::sort(b.interference.begin(), b.interference.end());
  return b;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("family: bad " + what + " '" + s + "'");
  }
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("family: bad seed '" + s + "'");
  }
}

}  // namespace

FamilySpec parse_family(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto want = [&](std::size_t k) {
    if (parts.size() != k)
      throw Error("family: '" + spec + "' has the wrong number of ':' fields");
  };

  FamilySpec out;
  out.name = spec;
  if (kind == "Kn") {
    want(2);
    out.graph = complete_graph(parse_int(parts[1], "order"));
  } else if (kind == "Knm") {
    want(2);
    auto sides = split(parts[1], ',');
    if (sides.size() != 2) throw Error("family: Knm needs 'n,m'");
    out.graph = complete_bipartite(parse_int(sides[0], "left side"),
                                   parse_int(sides[1], "right side"));
  } else if (kind == "Pn") {
    want(2);
    out.graph = path_n(parse_int(parts[1], "order"));
  } else if (kind == "Cn") {
    want(2);
    out.graph = cycle_n(parse_int(parts[1], "order"));
  } else if (kind == "W") {
    want(2);
    out.graph = wheel_graph(parse_int(parts[1], "rim size"));
  } else if (kind == "subdiv") {
    want(3);
    std::ifstream in(parts[1]);
    if (!in) throw Error("family: cannot open '" + parts[1] + "'");
    std::string line;
    if (!std::getline(in, line) || line.empty())
      throw Error("family: '" + parts[1] + "' has no graph6 line");
    out.graph = subdivide_each_edge(graph6_decode(line), parse_int(parts[2], "interior count"));
  } else if (kind == "interfered") {
    if (parts.size() != 3 && parts.size() != 4)
      throw Error("family: interfered needs 'n,m:complete' or 'n,m:random:SEED'");
    auto sides = split(parts[1], ',');
    if (sides.size() != 2) throw Error("family: interfered needs 'n,m'");
    int n = parse_int(sides[0], "left side"), m = parse_int(sides[1], "tree count");
    SubdividedBiclique b;
    if (parts[2] == "complete") {
      want(3);
      b = make_biclique(n, m, InterferenceMode::Complete);
    } else if (parts[2] == "random") {
      want(4);
      b = make_biclique(n, m, InterferenceMode::Random, parse_seed(parts[3]));
    } else {
      throw Error("family: unknown interference mode '" + parts[2] + "'");
    }
    out.graph = b.graph();
    out.biclique = std::move(b);
  } else {
    throw Error("family: unknown kind '" + kind + "'");
  }
  return out;
}

}  // namespace vmc
