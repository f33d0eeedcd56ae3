#pragma once

#include <string>
#include <vector>

#include "vmc/graph.hpp"

namespace vmc {

enum class StepKind { LC, Pivot, Del };

struct TraceStep {
  StepKind kind;
  int u = -1;  // pivot only
  int v = -1;
  bool operator==(const TraceStep&) const = default;
};

// A replayable sequence of local complementations, pivots and deletions.
// Steps name vertices by label, so a trace recorded while transforming a
// graph replays verbatim on a fresh copy of the same graph.
struct Trace {
  std::vector<TraceStep> steps;

  void lc(int v) { steps.push_back({StepKind::LC, -1, v}); }
  void pivot(int u, int v) { steps.push_back({StepKind::Pivot, u, v}); }
  void del(int v) { steps.push_back({StepKind::Del, -1, v}); }

  // Smoothing is not a primitive on the wire: it expands right here.
  void smooth(int v) {
    lc(v);
    del(v);
  }

  void append(const Trace& t) {
    steps.insert(steps.end(), t.steps.begin(), t.steps.end());
  }

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  bool operator==(const Trace&) const = default;

  // One JSON object per line:
  //   {"op":"lc","v":3}
  //   {"op":"pivot","u":1,"v":4}
  //   {"op":"del","v":3}
  std::string to_jsonl() const;
  static Trace from_jsonl(const std::string& text);
};

// Complement the induced subgraph on the neighborhood of v.
Graph local_complement(const Graph& g, int v);

// Pivot on an edge uv: complement between the three sets that N(u) and N(v)
// carve out of each other, then exchange the labels u and v.  Equal to
// applying local complementation at u, v, u in sequence; the test suites
// lean on that identity rather than trusting this shortcut.
Graph pivot(const Graph& g, int u, int v);

struct PivotSets {
  std::vector<int> only_u;  // N(u) - N[v]
  std::vector<int> only_v;  // N(v) - N[u]
  std::vector<int> both;    // N(u) * N(v)
};
PivotSets pivot_sets(const Graph& g, int u, int v);

// Remove a degree-2 vertex whose neighbors are non-adjacent, joining them.
Graph smooth(const Graph& g, int v);

Graph apply_step(const Graph& g, const TraceStep& s);

// Replays the whole trace; a failing step raises Error naming its position.
Graph apply_trace(const Graph& g, const Trace& t);

}  // namespace vmc
