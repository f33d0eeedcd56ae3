#include "vmc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "vmc/graph6.hpp"

namespace vmc {

namespace {

struct SearchNode {
  Graph rep;           // the labeled representative first reaching this class
  std::string parent;  // canonical key of its predecessor, empty at the root
  TraceStep step{};    // step applied to the parent's representative
};

OracleResult minor_search(const Graph& host, const Graph& pattern, bool use_pivots,
                          const SolverLimits& lim) {
  const char* who = use_pivots ? "contains_pivot_minor" : "contains_vertex_minor";
  if (host.n() > lim.oracle)
    throw Error(std::string(who) + ": host has n=" + std::to_string(host.n()) +
                ", limit is " + std::to_string(lim.oracle));
  if (pattern.n() > host.n()) return {};

  const std::string target = canonical_graph6(pattern);
  std::unordered_map<std::string, SearchNode> seen;

  auto reconstruct = [&](std::string key) {
    std::vector<TraceStep> rev;
    while (true) {
      const SearchNode& node = seen.at(key);
      if (node.parent.empty()) break;
      rev.push_back(node.step);
      key = node.parent;
    }
    OracleResult out;
    out.contained = true;
    out.trace.steps.assign(rev.rbegin(), rev.rend());
    return out;
  };

  std::string root = canonical_graph6(host);
  seen.emplace(root, SearchNode{host, "", {}});
  if (host.n() == pattern.n() && root == target) return reconstruct(root);

  std::deque<std::string> queue = {root};
  while (!queue.empty()) {
    std::string key = queue.front();
    queue.pop_front();
    Graph g = seen.at(key).rep;  // copy: `seen` rehashes while we expand

    auto visit = [&](const Graph& next, TraceStep step) {
      std::string nk = canonical_graph6(next);
      if (!seen.emplace(nk, SearchNode{next, key, step}).second) return false;
      if (next.n() == pattern.n() && nk == target) return true;
      queue.push_back(nk);
      return false;
    };

    if (g.n() > pattern.n()) {
      for (int v : g.vertices())
        if (visit(g.minus_vertex(v), {StepKind::Del, -1, v})) return reconstruct(target);
    }
    if (use_pivots) {
      for (auto [u, v] : g.edge_list())
        if (visit(pivot(g, u, v), {StepKind::Pivot, u, v})) return reconstruct(target);
    } else {
      for (int v : g.vertices()) {
        // complementing inside a neighborhood of size < 2 does nothing
        if (g.degree(v) < 2) continue;
        if (visit(local_complement(g, v), {StepKind::LC, -1, v})) return reconstruct(target);
      }
    }
  }
  return {};
}

}  // namespace

OracleResult contains_vertex_minor(const Graph& host, const Graph& pattern,
                                   const SolverLimits& lim) {
  return minor_search(host, pattern, false, lim);
}

OracleResult contains_pivot_minor(const Graph& host, const Graph& pattern,
                                  const SolverLimits& lim) {
  return minor_search(host, pattern, true, lim);
}

}  // namespace vmc
