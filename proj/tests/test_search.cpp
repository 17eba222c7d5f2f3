#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "regsub/graph.hpp"
#include "regsub/search.hpp"

using namespace regsub;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spoke
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

// Induced regularity of a subset mask: common degree, or -1 if not regular.
int subset_regularity(const Graph& g, std::uint64_t mask) {
  int r = -2;
  for (int v = 0; v < g.n(); ++v) {
    if (!((mask >> v) & 1)) continue;
    const int d = std::popcount(g.neighbors(v) & mask);
    if (r == -2) r = d;
    if (d != r) return -1;
  }
  return r;
}

// Full scan over all subsets with the documented tie-break: maximum size,
// then smallest degree, then smallest mask.
SearchResult oracle_best(const Graph& g) {
  SearchResult best;
  for (std::uint64_t mask = 1; mask < (1ull << g.n()); ++mask) {
    const int r = subset_regularity(g, mask);
    if (r < 0) continue;
    const int size = std::popcount(mask);
    if (size > best.size || (size == best.size && r < best.r)) {
      best.subset = mask;
      best.size = size;
      best.r = r;
    }
  }
  best.optimal = true;
  return best;
}

void require_valid(const Graph& g, const SearchResult& res) {
  REQUIRE(res.size >= 1);
  REQUIRE(res.size == std::popcount(res.subset));
  REQUIRE(subset_regularity(g, res.subset) == res.r);
  const std::vector<int> vs = res.vertices();
  REQUIRE(static_cast<int>(vs.size()) == res.size);
  for (int v : vs) REQUIRE(((res.subset >> v) & 1) == 1);
}

}  // namespace

TEST_CASE("complete graphs are their own largest regular subgraph") {
  for (int n = 1; n <= 10; ++n) {
    const SearchResult res = max_induced_regular_exact(complete(n));
    CHECK(res.optimal);
    CHECK(res.size == n);
    CHECK(res.r == n - 1);
    CHECK(res.subset == (n == 64 ? ~0ull : (1ull << n) - 1));
  }
}

TEST_CASE("path tie-break prefers the smaller degree") {
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  const SearchResult res = max_induced_regular_exact(p3);
  CHECK(res.optimal);
  CHECK(res.size == 2);
  // Both edges are 1-regular pairs, but the endpoint pair {0,2} is
  // 0-regular and degree ties break low.
  CHECK(res.r == 0);
  CHECK(res.subset == 0b101ull);
}

TEST_CASE("named regular graphs come back whole") {
  const SearchResult pet = max_induced_regular_exact(petersen());
  CHECK(pet.optimal);
  CHECK(pet.size == 10);
  CHECK(pet.r == 3);

  const SearchResult c9 = max_induced_regular_heuristic(cycle(9), Seed{7});
  require_valid(cycle(9), c9);
  CHECK_FALSE(c9.optimal);  // heuristic never claims optimality
  CHECK(c9.size == 9);
  CHECK(c9.r == 2);

  const SearchResult empty5 = max_induced_regular_exact(Graph(5));
  CHECK(empty5.size == 5);
  CHECK(empty5.r == 0);
  CHECK(empty5.subset == 0b11111ull);
}

TEST_CASE("exact search equals full subset enumeration on seeded graphs") {
  const Seed base{20260819};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 8 + trial % 5;
    const Graph g = sample_gnp(n, 0.5, derive_seed(base, trial));
    const SearchResult got = max_induced_regular_exact(g);
    const SearchResult want = oracle_best(g);
    REQUIRE(got.optimal);
    CHECK(got.size == want.size);
    CHECK(got.r == want.r);
    CHECK(got.subset == want.subset);
    require_valid(g, got);
  }
}

TEST_CASE("budget exhaustion is explicit and still valid") {
  const Graph g = sample_gnp(20, 0.5, Seed{99});
  const SearchResult res = max_induced_regular_exact(g, 1);
  CHECK_FALSE(res.optimal);
  require_valid(g, res);

  const SearchResult h0 = max_induced_regular_heuristic(g, Seed{3}, 0);
  CHECK(h0.size >= 1);
  require_valid(g, h0);
}

TEST_CASE("heuristic never beats exact and usually matches it") {
  const Seed base{424242};
  int matches = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = sample_gnp(12, 0.5, derive_seed(base, trial));
    const SearchResult ex = max_induced_regular_exact(g);
    REQUIRE(ex.optimal);
    const SearchResult h =
        max_induced_regular_heuristic(g, derive_seed(base, trial, 1));
    require_valid(g, h);
    CHECK_FALSE(h.optimal);
    CHECK(h.size <= ex.size);
    if (h.size == ex.size) ++matches;
  }
  CHECK(matches >= 24);  // >= 80% at the default budget
}

TEST_CASE("search results are deterministic in graph, seed and budget") {
  const Graph g = sample_gnp(18, 0.5, Seed{5150});

  const SearchResult e1 = max_induced_regular_exact(g);
  const SearchResult e2 = max_induced_regular_exact(g);
  CHECK(e1.subset == e2.subset);
  CHECK(e1.nodes == e2.nodes);

  const SearchResult h1 = max_induced_regular_heuristic(g, Seed{11}, 500);
  const SearchResult h2 = max_induced_regular_heuristic(g, Seed{11}, 500);
  CHECK(h1.subset == h2.subset);
  CHECK(h1.size == h2.size);
  CHECK(h1.r == h2.r);
  CHECK(h1.nodes == h2.nodes);
  require_valid(g, h1);
}
