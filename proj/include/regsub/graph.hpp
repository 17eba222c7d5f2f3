#pragma once

#include <cstdint>
#include <vector>

#include "regsub/rng.hpp"

namespace regsub {

using DegreeSequence = std::vector<int>;

// Simple undirected graph on labeled vertices 0..n-1, one 64-bit adjacency
// row per vertex. The row cap (n <= 64) is enforced on construction, never
// silently truncated; everything downstream relies on rows being symmetric
// with a zero diagonal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Rows must already be symmetric, zero-diagonal, and masked to n bits;
  // throws otherwise.
  Graph(int n, std::vector<std::uint64_t> rows);

  static constexpr int max_vertices = 64;

  int n() const { return n_; }
  bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1u; }
  std::uint64_t neighbors(int v) const { return rows_[v]; }
  int degree(int v) const;
  long edge_count() const;

  void add_edge(int u, int v);  // u != v, both in range

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// G(n,p) with a fixed draw order: one unit draw per pair (u,v), u < v, pairs
// in lexicographic order. Same (n,p,seed) gives the same graph everywhere.
Graph sample_gnp(int n, double p, Seed seed);

DegreeSequence degree_sequence(const Graph& g);

// Subgraph induced by `vertices` (distinct labels, any order); vertex i of
// the result is vertices[i].
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// Erdos-Gallai test: some simple graph realizes d. Entries may appear in any
// order; negative entries or entries >= length make it non-graphical.
bool is_graphical(const DegreeSequence& d);

// Graph from the low choose(n,2) bits of `mask`, bit order = lexicographic
// pair order (0,1),(0,2),...,(1,2),... Shared by the brute-force scans so a
// mask means the same graph in every oracle.
Graph graph_from_mask(int n, std::uint64_t mask);

}  // namespace regsub
