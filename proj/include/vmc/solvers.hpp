#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vmc/graph.hpp"

namespace vmc {

// Hard ceilings for the exact solvers.  These are not tuning knobs to raise
// until the machine groans: the structural drivers consult them to decide
// which chromatic claims get verified outright and which are carried as
// explicit assumptions in the emitted certificates.
struct SolverLimits {
  int chi_exact = 14;    // chromatic_number, and chi_at_most for any target
  int chi_bounded = 40;  // chi_at_most when the target is at most 3
  int iso = 12;          // are_isomorphic
  int clique = 64;       // clique_number
  int oracle = 9;        // host size in the containment search (oracle.hpp)
};

bool chromatic_feasible(const Graph& g, const SolverLimits& lim = {});
bool chi_decision_feasible(const Graph& g, int k, const SolverLimits& lim = {});

// Exact chromatic number; the witness (colors 0..chi-1) lands in *coloring
// when requested.
int chromatic_number(const Graph& g, std::map<int, int>* coloring = nullptr,
                     const SolverLimits& lim = {});

// Decision form: chi(g) <= k?  Tolerates larger graphs when k <= 3, which is
// the regime the bounded-color drivers actually run in.
bool chi_at_most(const Graph& g, int k, std::map<int, int>* coloring = nullptr,
                 const SolverLimits& lim = {});

// Largest chromatic number over all balls of the given radius; *argmax (if
// given) receives the smallest center attaining it.
int chi_ball(const Graph& g, int radius, int* argmax = nullptr,
             const SolverLimits& lim = {});

int clique_number(const Graph& g, std::vector<int>* witness = nullptr,
                  const SolverLimits& lim = {});

bool are_isomorphic(const Graph& g, const Graph& h,
                    std::map<int, int>* mapping = nullptr,
                    const SolverLimits& lim = {});

// Lexicographically first stable set / clique of exactly the given size.
// These back every "pick the canonical witness" step, so firstness is part
// of the contract, not a nicety.
std::optional<std::vector<int>> find_stable_set(const Graph& g, int size);
std::optional<std::vector<int>> find_clique(const Graph& g, int size);

}  // namespace vmc
