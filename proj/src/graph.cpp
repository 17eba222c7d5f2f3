#include "regsub/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace regsub {

Graph::Graph(int n) : n_(n), rows_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0 || n > max_vertices)
    throw std::invalid_argument("graph order must be in [0," +
                                std::to_string(max_vertices) + "], got " +
                                std::to_string(n));
}

Graph::Graph(int n, std::vector<std::uint64_t> rows) : Graph(n) {
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("row count does not match graph order");
  const std::uint64_t valid =
      n == 64 ? ~0ull : ((1ull << n) - 1);
  for (int u = 0; u < n; ++u) {
    if (rows[u] & ~valid)
      throw std::invalid_argument("adjacency row has bits beyond n");
    if ((rows[u] >> u) & 1u)
      throw std::invalid_argument("nonzero diagonal at vertex " +
                                  std::to_string(u));
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (((rows[u] >> v) & 1u) != ((rows[v] >> u) & 1u))
        throw std::invalid_argument("asymmetric adjacency at (" +
                                    std::to_string(u) + "," +
                                    std::to_string(v) + ")");
  rows_ = std::move(rows);
}

int Graph::degree(int v) const { return std::popcount(rows_[v]); }

long Graph::edge_count() const {
  long total = 0;
  for (int v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

void Graph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::invalid_argument("bad edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");
  rows_[u] |= 1ull << v;
  rows_[v] |= 1ull << u;
}

Graph sample_gnp(int n, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0,1]");
  Graph g(n);
  SplitMix64 rng(seed.value);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_unit() < p) g.add_edge(u, v);
  return g;
}

DegreeSequence degree_sequence(const Graph& g) {
  DegreeSequence d(g.n());
  for (int v = 0; v < g.n(); ++v) d[v] = g.degree(v);
  return d;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  const int m = static_cast<int>(vertices.size());
  Graph sub(m);
  for (int a = 0; a < m; ++a) {
    if (vertices[a] < 0 || vertices[a] >= g.n())
      throw std::invalid_argument("induced subgraph vertex out of range: " +
                                  std::to_string(vertices[a]));
    for (int b = a + 1; b < m; ++b) {
      if (vertices[a] == vertices[b])
        throw std::invalid_argument("induced subgraph vertices not distinct");
      if (g.has_edge(vertices[a], vertices[b])) sub.add_edge(a, b);
    }
  }
  return sub;
}

bool is_graphical(const DegreeSequence& d) {
  const int n = static_cast<int>(d.size());
  for (int x : d)
    if (x < 0 || x >= n) return false;
  DegreeSequence s(d);
  std::sort(s.begin(), s.end(), std::greater<int>());
  long long sum = std::accumulate(s.begin(), s.end(), 0ll);
  if (sum % 2 != 0) return false;
  // Erdos-Gallai: for every prefix length r,
  // sum_{j<=r} d_j <= r(r-1) + sum_{j>r} min(d_j, r).
  long long prefix = 0;
  for (int r = 1; r <= n; ++r) {
    prefix += s[r - 1];
    long long rhs = static_cast<long long>(r) * (r - 1);
    for (int j = r; j < n; ++j) rhs += std::min(s[j], r);
    if (prefix > rhs) return false;
  }
  return true;
}

Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1u) g.add_edge(u, v);
  return g;
}

}  // namespace regsub
