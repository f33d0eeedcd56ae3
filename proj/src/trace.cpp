#include "vmc/trace.hpp"

#include <sstream>

#include <json.hpp>

namespace vmc {

std::string Trace::to_jsonl() const {
  std::string out;
  for (const TraceStep& s : steps) {
    nlohmann::json j;
    switch (s.kind) {
      case StepKind::LC:
        j = {{"op", "lc"}, {"v", s.v}};
        break;
      case StepKind::Pivot:
        j = {{"op", "pivot"}, {"u", s.u}, {"v", s.v}};
        break;
      case StepKind::Del:
        j = {{"op", "del"}, {"v", s.v}};
        break;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

Trace Trace::from_jsonl(const std::string& text) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
      throw Error("trace line " + std::to_string(lineno) + ": missing op");
    std::string op = j["op"];
    auto field = [&](const char* key) -> int {
      if (!j.contains(key) || !j[key].is_number_integer())
        throw Error("trace line " + std::to_string(lineno) + ": missing " + key);
      return j[key].get<int>();
    };
    if (op == "lc") {
      t.lc(field("v"));
    } else if (op == "pivot") {
      t.pivot(field("u"), field("v"));
    } else if (op == "del") {
      t.del(field("v"));
    } else {
      throw Error("trace line " + std::to_string(lineno) + ": unknown op '" + op + "'");
    }
  }
  return t;
}

Graph local_complement(const Graph& g, int v) {
  if (!g.has_vertex(v))
    throw Error("local_complement: no vertex " + std::to_string(v));
  return g.complement_on(g.neighbors(v));
}

PivotSets pivot_sets(const Graph& g, int u, int v) {
  if (u == v || !g.has_vertex(u) || !g.has_vertex(v) || !g.adjacent(u, v))
    throw Error("pivot: {" + std::to_string(u) + "," + std::to_string(v) +
                "} is not an edge");
  std::vector<int> nu = g.neighbors(u), nv = g.neighbors(v);
  std::vector<int> closed_u = sorted_union(nu, {u});
  std::vector<int> closed_v = sorted_union(nv, {v});
  return {sorted_minus(nu, closed_v), sorted_minus(nv, closed_u),
          sorted_intersect(nu, nv)};
}

Graph pivot(const Graph& g, int u, int v) {
  PivotSets s = pivot_sets(g, u, v);
  Graph out = g.complement_between(s.only_u, s.only_v);
  out = out.complement_between(s.only_v, s.both);
  out = out.complement_between(s.only_u, s.both);
  return relabel(out, {{u, v}, {v, u}});
}

Graph smooth(const Graph& g, int v) {
  if (!g.has_vertex(v)) throw Error("smooth: no vertex " + std::to_string(v));
  std::vector<int> nb = g.neighbors(v);
  if (nb.size() != 2)
    throw Error("smooth: vertex " + std::to_string(v) + " has degree " +
                std::to_string(nb.size()) + ", need 2");
  if (g.adjacent(nb[0], nb[1]))
    throw Error("smooth: neighbors of " + std::to_string(v) + " are adjacent");
  return local_complement(g, v).minus_vertex(v);
}

Graph apply_step(const Graph& g, const TraceStep& s) {
  switch (s.kind) {
    case StepKind::LC:
      return local_complement(g, s.v);
    case StepKind::Pivot:
      return pivot(g, s.u, s.v);
    case StepKind::Del:
      if (!g.has_vertex(s.v)) throw Error("del: no vertex " + std::to_string(s.v));
      return g.minus_vertex(s.v);
  }
  throw Error("apply_step: corrupt step");
}

Graph apply_trace(const Graph& g, const Trace& t) {
  Graph cur = g;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    try {
      cur = apply_step(cur, t.steps[i]);
    } catch (const Error& e) {
      throw Error("apply_trace: step " + std::to_string(i) + ": " + e.what());
    }
  }
  return cur;
}

}  // namespace vmc
