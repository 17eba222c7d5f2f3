#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regsub/graph.hpp"
#include "regsub/rng.hpp"

namespace regsub {

struct SearchResult {
  std::uint64_t subset = 0;   // bit v set = vertex v chosen
  int size = 0;
  int r = 0;                  // induced degree of every chosen vertex
  bool optimal = false;       // exact search finished within budget
  std::uint64_t nodes = 0;    // nodes expanded / iterations spent

  std::vector<int> vertices() const;
  std::string to_json() const;
};

constexpr std::uint64_t search_default_node_budget = 20'000'000;
constexpr std::uint64_t heuristic_default_budget = 2'000;

// Largest vertex subset inducing a regular subgraph, by branch and bound
// over (size, degree) targets: sizes descending, degrees ascending within a
// size, vertices decided high-to-low with exclusion first, so the first hit
// is the maximum size with the smallest degree and the numerically smallest
// subset mask. Budget exhaustion returns the best found with optimal=false;
// any graph with a vertex yields size >= 1 (a single vertex is 0-regular).
SearchResult max_induced_regular_exact(
    const Graph& g, std::uint64_t node_budget = search_default_node_budget);

// Seeded local search: per target degree r, restarts from greedy kernels
// (restart count = budget/100) followed by add/remove/swap moves scored by
// the number of degree violations, plateau ties broken by the derived
// stream. Deterministic in (g, seed, budget); reported size never decreases
// within a run. budget = 0 returns the single-vertex fallback.
SearchResult max_induced_regular_heuristic(
    const Graph& g, Seed seed, std::uint64_t budget = heuristic_default_budget);

}  // namespace regsub
