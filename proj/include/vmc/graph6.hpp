#pragma once

#include <string>

#include "vmc/graph.hpp"

namespace vmc {

// Standard graph6 encoding of a graph whose labels are exactly 0..n-1.
// Anything else is rejected: silently compacting labels here would hide
// the label-stability bugs the rest of the code is careful about.
std::string graph6_encode(const Graph& g);

// Inverse of graph6_encode; the result is labelled 0..n-1.  Malformed input
// raises Error with the byte offset of the first offending byte.
Graph graph6_decode(const std::string& s);

// Isomorphism-invariant key: the lexicographically smallest graph6 string
// over all relabellings.  Exponential in the worst case, intended for the
// small graphs the search layers deal in.
std::string canonical_graph6(const Graph& g);

}  // namespace vmc
