#include "regsub/search.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace regsub {

std::vector<int> SearchResult::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < 64; ++v)
    if ((subset >> v) & 1u) out.push_back(v);
  return out;
}

std::string SearchResult::to_json() const {
  nlohmann::json j;
  j["vertices"] = vertices();
  j["size"] = size;
  j["r"] = r;
  j["optimal"] = optimal;
  j["nodes"] = nodes;
  return j.dump();
}

namespace {

struct BudgetExhausted {};

// DFS deciding vertices n-1..0, exclusion branch first: complete solutions
// appear in increasing order of the subset mask, so the first hit is the
// numerically smallest witness for this (k,r).
class FixedTargetSearch {
 public:
  FixedTargetSearch(const Graph& g, int k, int r, std::uint64_t budget,
                    std::uint64_t& nodes)
      : g_(g), k_(k), r_(r), budget_(budget), nodes_(nodes) {}

  bool run(std::uint64_t& witness) {
    std::uint64_t undecided = g_.n() == 64 ? ~0ull : (1ull << g_.n()) - 1;
    // Vertices of graph-degree < r can never reach induced degree r.
    for (int v = 0; v < g_.n(); ++v)
      if (g_.degree(v) < r_) undecided &= ~(1ull << v);
    found_ = 0;
    if (!dfs(g_.n() - 1, 0ull, undecided)) return false;
    witness = found_;
    return true;
  }

 private:
  bool feasible(std::uint64_t chosen, std::uint64_t undecided) const {
    if (std::popcount(chosen) + std::popcount(undecided) < k_) return false;
    const std::uint64_t reach = chosen | undecided;
    for (std::uint64_t rest = chosen; rest;) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint64_t nb = g_.neighbors(v);
      if (std::popcount(nb & chosen) > r_) return false;
      if (std::popcount(nb & reach) < r_) return false;
    }
    return true;
  }

  bool dfs(int v, std::uint64_t chosen, std::uint64_t undecided) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    if (std::popcount(chosen) == k_) {
      for (std::uint64_t rest = chosen; rest;) {
        const int u = std::countr_zero(rest);
        rest &= rest - 1;
        if (std::popcount(g_.neighbors(u) & chosen) != r_) return false;
      }
      found_ = chosen;
      return true;
    }
    if (v < 0) return false;
    if (!feasible(chosen, undecided)) return false;
    const std::uint64_t bit = 1ull << v;
    if (!(undecided & bit)) return dfs(v - 1, chosen, undecided);
    if (dfs(v - 1, chosen, undecided & ~bit)) return true;
    return dfs(v - 1, chosen | bit, undecided & ~bit);
  }

  const Graph& g_;
  int k_, r_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::uint64_t found_ = 0;
};

SearchResult single_vertex_result(const Graph& g) {
  SearchResult res;
  if (g.n() > 0) {
    res.subset = 1ull;  // vertex 0: a one-vertex subgraph is 0-regular
    res.size = 1;
    res.r = 0;
  }
  return res;
}

}  // namespace

SearchResult max_induced_regular_exact(const Graph& g,
                                       std::uint64_t node_budget) {
  SearchResult best = single_vertex_result(g);
  best.optimal = true;
  if (g.n() == 0) return best;

  std::uint64_t nodes = 0;
  try {
    // Sizes descending: the first size with any witness is the maximum.
    // Within a size, degrees ascending and the DFS's mask order implement
    // the (smallest r, then smallest mask) tie-break.
    for (int k = g.n(); k > best.size; --k) {
      for (int r = 0; r < k; ++r) {
        if (k % 2 == 1 && r % 2 == 1) continue;  // kr must be even
        std::uint64_t witness = 0;
        FixedTargetSearch search(g, k, r, node_budget, nodes);
        if (search.run(witness)) {
          best.subset = witness;
          best.size = k;
          best.r = r;
          break;
        }
      }
      if (best.size == k) break;
    }
  } catch (const BudgetExhausted&) {
    best.optimal = false;
  }
  best.nodes = nodes;
  return best;
}

namespace {

// Local-search state for one target degree r: S plus per-vertex induced
// degrees and the masks of members sitting at degree r-1, r, r+1. Violations
// = |S| - |members at degree r|.
struct LocalState {
  const Graph& g;
  int r;
  std::uint64_t S = 0;
  int deg[64] = {0};
  std::uint64_t at_rm1 = 0, at_r = 0, at_rp1 = 0;

  explicit LocalState(const Graph& gg, int rr) : g(gg), r(rr) {}

  void reclassify(int v) {
    const std::uint64_t bit = 1ull << v;
    at_rm1 &= ~bit;
    at_r &= ~bit;
    at_rp1 &= ~bit;
    if (!(S & bit)) return;
    if (deg[v] == r - 1) at_rm1 |= bit;
    else if (deg[v] == r) at_r |= bit;
    else if (deg[v] == r + 1) at_rp1 |= bit;
  }

  void add(int v) {
    S |= 1ull << v;
    deg[v] = std::popcount(g.neighbors(v) & S);
    for (std::uint64_t nb = g.neighbors(v) & S; nb;) {
      const int w = std::countr_zero(nb);
      nb &= nb - 1;
      if (w != v) {
        ++deg[w];
        reclassify(w);
      }
    }
    reclassify(v);
  }

  void remove(int v) {
    S &= ~(1ull << v);
    for (std::uint64_t nb = g.neighbors(v) & S; nb;) {
      const int w = std::countr_zero(nb);
      nb &= nb - 1;
      --deg[w];
      reclassify(w);
    }
    reclassify(v);
  }

  int violations() const { return std::popcount(S) - std::popcount(at_r); }

  // Score deltas; exact for add/remove, additive approximation for swaps
  // (the move is re-scored exactly once applied).
  int add_delta(int v) const {
    const std::uint64_t nb = g.neighbors(v) & S;
    int d = std::popcount(nb) == r ? 0 : 1;
    d += std::popcount(nb & at_r);
    d -= std::popcount(nb & at_rm1);
    return d;
  }

  int remove_delta(int v) const {
    const std::uint64_t nb = g.neighbors(v) & S;
    int d = deg[v] == r ? 0 : -1;  // a violating member leaves
    d += std::popcount(nb & at_r);
    d -= std::popcount(nb & at_rp1);
    return d;
  }
};

}  // namespace

SearchResult max_induced_regular_heuristic(const Graph& g, Seed seed,
                                           std::uint64_t budget) {
  SearchResult best = single_vertex_result(g);
  best.optimal = false;
  const int n = g.n();
  if (n == 0 || budget == 0) return best;

  const std::uint64_t restarts = std::max<std::uint64_t>(1, budget / 100);
  const std::uint64_t iters = std::max<std::uint64_t>(1, budget / restarts);
  std::uint64_t spent = 0;

  for (int r = 0; r < n; ++r) {
    for (std::uint64_t restart = 0; restart < restarts; ++restart) {
      SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r), restart)
                         .value);
      LocalState st(g, r);

      // Greedy kernel: random order, add while no member exceeds degree r.
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[v] = v;
      for (int v = n - 1; v > 0; --v)
        std::swap(order[v], order[rng.next() % (v + 1)]);
      for (int v : order) {
        const std::uint64_t nb = g.neighbors(v) & st.S;
        if (std::popcount(nb) > r) continue;
        if (std::popcount(nb & st.at_r)) continue;  // would push one past r
        st.add(v);
      }

      int last_moved = -1;
      for (std::uint64_t it = 0; it < iters; ++it) {
        ++spent;
        const int v_count = std::popcount(st.S);
        if (st.violations() == 0 && v_count > 0) {
          if (v_count > best.size) {
            best.subset = st.S;
            best.size = v_count;
            best.r = r;
          }
          if (v_count == n) break;
        }

        // Gather the best add/remove by score delta.
        int best_delta = 1 << 20;
        std::vector<std::pair<int, int>> ties;  // (vertex, +1 add / -1 rem)
        for (int v = 0; v < n; ++v) {
          const std::uint64_t bit = 1ull << v;
          if (st.S & bit) {
            if (v == last_moved) continue;
            const int delta = st.remove_delta(v);
            if (delta < best_delta) ties.clear(), best_delta = delta;
            if (delta == best_delta) ties.emplace_back(v, -1);
          } else {
            if (v == last_moved || g.degree(v) < r) continue;
            const int delta = st.add_delta(v);
            // Prefer growth: an add never loses to an equal remove.
            if (delta < best_delta) ties.clear(), best_delta = delta;
            if (delta == best_delta) ties.emplace_back(v, +1);
          }
        }
        if (ties.empty()) break;
        // On a strict plateau or worse, also consider swapping a violating
        // member for an outsider, scored additively.
        if (best_delta >= 0 && st.violations() > 0) {
          for (std::uint64_t viol = st.S & ~st.at_r; viol;) {
            const int u = std::countr_zero(viol);
            viol &= viol - 1;
            const int rem = st.remove_delta(u);
            for (int w = 0; w < n; ++w)
              if (!(st.S & (1ull << w)) && g.degree(w) >= r) {
                const int delta = rem + st.add_delta(w);
                if (delta < best_delta) {
                  best_delta = delta;
                  ties.clear();
                  ties.emplace_back(u, -(w + 2));  // encode swap partner
                }
              }
          }
        }
        const auto [v, kind] = ties[rng.next() % ties.size()];
        if (kind == +1) {
          st.add(v);
          last_moved = v;
        } else if (kind == -1) {
          st.remove(v);
          last_moved = v;
        } else {
          st.remove(v);
          st.add(-kind - 2);
          last_moved = -kind - 2;
        }
      }

      // Final state may be valid and bigger than anything seen mid-run.
      if (st.violations() == 0 && std::popcount(st.S) > best.size) {
        best.subset = st.S;
        best.size = std::popcount(st.S);
        best.r = r;
      }
    }
  }
  best.nodes = spent;
  return best;
}

}  // namespace regsub
