#include "regsub/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace regsub {

namespace {

// Binomials up to C(64,32) fit in 64 bits.
std::uint64_t small_choose(int n, int k) {
  static const auto table = [] {
    std::vector<std::array<std::uint64_t, 65>> t(65);
    for (int i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (k < 0 || k > n) return 0;
  return table[n][k];
}

std::string state_key(const std::vector<std::uint8_t>& v) {
  return std::string(v.begin(), v.end());
}

// Erdos-Gallai on a descending vector; cheap infeasibility cut for the DP.
bool graphical_desc(const std::vector<std::uint8_t>& s) {
  const int n = static_cast<int>(s.size());
  long long sum = 0;
  for (auto x : s) sum += x;
  if (sum % 2 != 0) return false;
  long long prefix = 0;
  for (int r = 1; r <= n; ++r) {
    prefix += s[r - 1];
    long long rhs = static_cast<long long>(r) * (r - 1);
    for (int j = r; j < n; ++j) rhs += std::min<int>(s[j], r);
    if (prefix > rhs) return false;
  }
  return true;
}

struct DegreeClass {
  int value = 0;
  int count = 0;
};

std::vector<DegreeClass> classes_of(const std::vector<std::uint8_t>& sorted) {
  std::vector<DegreeClass> cls;
  for (auto v : sorted) {
    if (!cls.empty() && cls.back().value == v)
      ++cls.back().count;
    else
      cls.push_back({v, 1});
  }
  return cls;
}

// Residual vector after taking take[j] neighbors from each class, descending
// order restored, zeros dropped (a vertex with no capacity left never takes
// another edge, so it cannot influence the count).
std::vector<std::uint8_t> apply_takes(const std::vector<DegreeClass>& cls,
                                      const std::vector<int>& take) {
  std::vector<std::uint8_t> next;
  for (std::size_t j = 0; j < cls.size(); ++j) {
    for (int c = 0; c < cls[j].count - take[j]; ++c)
      next.push_back(static_cast<std::uint8_t>(cls[j].value));
    for (int c = 0; c < take[j]; ++c)
      if (cls[j].value > 1)
        next.push_back(static_cast<std::uint8_t>(cls[j].value - 1));
  }
  std::sort(next.begin(), next.end(), std::greater<std::uint8_t>());
  return next;
}

}  // namespace

BigCount big_choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (int j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

long double log_big(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log of a nonpositive count");
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64)
    return std::log(static_cast<long double>(x.convert_to<std::uint64_t>()));
  const unsigned shift = bits - 64;
  const std::uint64_t top = BigCount(x >> shift).convert_to<std::uint64_t>();
  return std::log(static_cast<long double>(top)) +
         static_cast<long double>(shift) * 0.693147180559945309417232L;
}

long double ExactProbability::value() const {
  if (numerator == 0) return 0.0L;
  const unsigned bits = boost::multiprecision::msb(numerator) + 1;
  if (bits <= 64)
    return std::ldexp(
        static_cast<long double>(numerator.convert_to<std::uint64_t>()),
        -exponent);
  const unsigned shift = bits - 64;
  const std::uint64_t top =
      BigCount(numerator >> shift).convert_to<std::uint64_t>();
  return std::ldexp(static_cast<long double>(top),
                    static_cast<int>(shift) - exponent);
}

std::string ExactProbability::to_string() const {
  return numerator.str() + "/2^" + std::to_string(exponent);
}

BigCount DegreeCounter::count(const DegreeSequence& d) {
  const int n = static_cast<int>(d.size());
  std::vector<std::uint8_t> sorted;
  sorted.reserve(d.size());
  for (int x : d) {
    if (x < 0)
      throw std::domain_error("negative degree " + std::to_string(x));
    if (x >= std::max(n, 1)) return 0;  // no simple graph can realize it
    if (x > 0) sorted.push_back(static_cast<std::uint8_t>(x));
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<std::uint8_t>());
  return count_sorted(sorted);
}

// Eliminate one max-degree vertex: it picks its whole neighborhood among the
// remaining vertices, C(class size, picks) ways per residual class. The
// count below a state depends only on the residual multiset, which keeps the
// memo small.
BigCount DegreeCounter::count_sorted(std::vector<std::uint8_t>& d) {
  if (d.empty() || d[0] == 0) return 1;
  const int m = static_cast<int>(d.size());
  if (d[0] > m - 1) return 0;

  const std::string key = state_key(d);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (!graphical_desc(d)) {
    memo_.emplace(key, 0);
    return 0;
  }

  const int r = d[0];
  std::vector<std::uint8_t> rest(d.begin() + 1, d.end());
  const auto cls = classes_of(rest);
  std::vector<int> take(cls.size(), 0);
  BigCount total = 0;

  // DFS over how many neighbors come from each class.
  auto rec = [&](auto&& self, std::size_t j, int left, BigCount ways) -> void {
    if (j == cls.size()) {
      if (left != 0) return;
      auto next = apply_takes(cls, take);
      total += ways * count_sorted(next);
      return;
    }
    const int cap = std::min(cls[j].count, left);
    for (int t = 0; t <= cap; ++t) {
      take[j] = t;
      self(self, j + 1, left - t, ways * small_choose(cls[j].count, t));
    }
    take[j] = 0;
  };
  rec(rec, 0, r, BigCount(1));

  memo_.emplace(key, total);
  return total;
}

BigCount DegreeCounter::count_constrained(const ConstrainedProfile& profile) {
  const int k = profile.k;
  const int i = static_cast<int>(profile.core.size());
  if (k < 1 || k % 2 == 0)
    throw std::domain_error(
        "constrained counting needs odd k (degree (k-1)/2 must be integral), "
        "got k=" + std::to_string(k));
  if (i > k) throw std::domain_error("core larger than the graph");
  const int d = (k - 1) / 2;
  std::vector<std::uint8_t> core;
  for (int dj : profile.core) {
    if (dj < 0 || dj > std::max(i - 1, 0))
      throw std::domain_error("core degree " + std::to_string(dj) +
                              " outside [0," + std::to_string(i - 1) + "]");
    if (d - dj < 0) return 0;  // vertex cannot reach total degree d
    if (d - dj > 0) core.push_back(static_cast<std::uint8_t>(d - dj));
  }
  std::sort(core.begin(), core.end(), std::greater<std::uint8_t>());
  std::vector<std::uint8_t> free_deg;
  if (d > 0) free_deg.assign(k - i, static_cast<std::uint8_t>(d));
  return count_constrained_rec(core, free_deg);
}

// Core vertices may only attach to free vertices (the induced core is fixed
// and accounted for outside this count), so eliminate them first; what is
// left is an unconstrained count on the free residuals.
BigCount DegreeCounter::count_constrained_rec(
    std::vector<std::uint8_t>& core, std::vector<std::uint8_t>& free_deg) {
  if (core.empty() || core[0] == 0) return count_sorted(free_deg);
  long long sum = 0;
  for (auto x : core) sum += x;
  for (auto x : free_deg) sum += x;
  if (sum % 2 != 0) return 0;
  if (core[0] > static_cast<int>(free_deg.size())) return 0;

  const std::string key =
      state_key(core) + '\xff' + state_key(free_deg);
  if (auto it = memo_constrained_.find(key); it != memo_constrained_.end())
    return it->second;

  const int r = core[0];
  std::vector<std::uint8_t> core_rest(core.begin() + 1, core.end());
  const auto cls = classes_of(free_deg);
  std::vector<int> take(cls.size(), 0);
  BigCount total = 0;

  auto rec = [&](auto&& self, std::size_t j, int left, BigCount ways) -> void {
    if (j == cls.size()) {
      if (left != 0) return;
      auto next_free = apply_takes(cls, take);
      total += ways * count_constrained_rec(core_rest, next_free);
      return;
    }
    const int cap = std::min(cls[j].count, left);
    for (int t = 0; t <= cap; ++t) {
      take[j] = t;
      self(self, j + 1, left - t, ways * small_choose(cls[j].count, t));
    }
    take[j] = 0;
  };
  rec(rec, 0, r, BigCount(1));

  memo_constrained_.emplace(key, total);
  return total;
}

BigCount count_by_degree_sequence(const DegreeSequence& d) {
  DegreeCounter counter;
  return counter.count(d);
}

BigCount count_constrained(const ConstrainedProfile& profile) {
  DegreeCounter counter;
  return counter.count_constrained(profile);
}

ExactProbability exact_pk(int k, DegreeCounter* counter) {
  if (k < 1) throw std::domain_error("k must be positive");
  DegreeCounter local;
  DegreeCounter& c = counter ? *counter : local;
  DegreeSequence d(k, (k - 1) / 2);
  return ExactProbability{c.count(d), k * (k - 1) / 2};
}

namespace {

// All multisets in D_i as nondecreasing vectors, lexicographic order.
void enumerate_cores(int i, int max_entry, std::vector<int>& cur,
                     const std::function<void(const DegreeSequence&)>& emit) {
  if (static_cast<int>(cur.size()) == i) {
    long long sum = std::accumulate(cur.begin(), cur.end(), 0ll);
    if (sum % 2 == 0) emit(cur);
    return;
  }
  const int lo = cur.empty() ? 0 : cur.back();
  for (int v = lo; v <= max_entry; ++v) {
    cur.push_back(v);
    enumerate_cores(i, max_entry, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

PkiResult exact_pki(int k, int i, DegreeCounter* counter) {
  if (i < 2 || i > k - 1)
    throw std::domain_error("need 2 <= i <= k-1, got i=" + std::to_string(i));
  DegreeCounter local;
  DegreeCounter& c = counter ? *counter : local;

  BigCount best = -1;
  DegreeSequence best_core;
  std::vector<int> cur;
  enumerate_cores(i, i - 1, cur, [&](const DegreeSequence& core) {
    if (!is_graphical(core)) return;  // conditioning event must be a graph
    BigCount n = c.count_constrained(ConstrainedProfile{k, core});
    if (n > best) {
      best = n;
      best_core = core;
    }
  });
  // D_i always contains the graphical all-zero core, so best was set.
  const int exponent = k * (k - 1) / 2 - i * (i - 1) / 2;
  return PkiResult{ExactProbability{best, exponent}, best_core};
}

namespace {

// rank-th m-subset of labels (ascending), lexicographic by element list.
std::vector<int> unrank_combination(const std::vector<int>& labels, int m,
                                    BigCount rank) {
  std::vector<int> out;
  int n = static_cast<int>(labels.size());
  int start = 0;
  while (m > 0) {
    for (int p = start; p < n; ++p) {
      const BigCount below = big_choose(n - p - 1, m - 1);
      if (rank < below) {
        out.push_back(labels[p]);
        start = p + 1;
        --m;
        break;
      }
      rank -= below;
    }
  }
  return out;
}

BigCount draw_index(SplitMix64& rng, const BigCount& total, int bits) {
  for (;;) {
    BigCount idx = 0;
    int left = bits;
    while (left > 0) {
      const int chunk = std::min(left, 64);
      idx <<= chunk;
      idx += rng.next_bits(chunk);
      left -= chunk;
    }
    if (idx < total) return idx;
  }
}

}  // namespace

std::vector<Graph> sample_regular_exact(int k, Seed seed, int count,
                                        DegreeCounter* counter) {
  if (k < 1 || k % 2 == 0)
    throw std::domain_error("k must be odd, got " + std::to_string(k));
  if (k > exact_budget_max_k)
    throw std::domain_error("k=" + std::to_string(k) +
                            " exceeds the exact enumeration budget (k <= " +
                            std::to_string(exact_budget_max_k) + ")");
  DegreeCounter local;
  DegreeCounter& c = counter ? *counter : local;
  const int d = (k - 1) / 2;
  const BigCount total = c.count(DegreeSequence(k, d));
  if (total == 0)
    throw std::domain_error(
        "no " + std::to_string(d) + "-regular graph on " + std::to_string(k) +
        " vertices: degree sum " + std::to_string(static_cast<long long>(k) * d) +
        " is odd");
  const int bits =
      total == 1 ? 0
                 : static_cast<int>(boost::multiprecision::msb(total - 1)) + 1;

  std::vector<Graph> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)).value);
    BigCount idx = bits == 0 ? BigCount(0) : draw_index(rng, total, bits);

    Graph g(k);
    std::vector<int> residual(k, d);
    std::vector<bool> alive(k, true);
    for (;;) {
      // Eliminate the max-residual vertex, smallest label on ties. The
      // subtree count only depends on the residual multiset, so any fixed
      // rule agrees with the counting DP.
      int v = -1;
      for (int u = 0; u < k; ++u)
        if (alive[u] && (v == -1 || residual[u] > residual[v])) v = u;
      if (v == -1 || residual[v] == 0) break;
      alive[v] = false;
      const int r = residual[v];

      // Group the remaining labels by residual, descending.
      std::vector<std::pair<int, std::vector<int>>> groups;  // value -> labels
      for (int val = d; val >= 1; --val) {
        std::vector<int> labels;
        for (int u = 0; u < k; ++u)
          if (alive[u] && residual[u] == val) labels.push_back(u);
        if (!labels.empty()) groups.emplace_back(val, std::move(labels));
      }

      std::vector<int> take(groups.size(), 0);
      bool descended = false;
      auto rec = [&](auto&& self, std::size_t j, int left,
                     const BigCount& ways) -> bool {
        if (j == groups.size()) {
          if (left != 0) return false;
          DegreeSequence next;
          for (std::size_t q = 0; q < groups.size(); ++q) {
            const int val = groups[q].first;
            const int cnt = static_cast<int>(groups[q].second.size());
            for (int t = 0; t < cnt - take[q]; ++t) next.push_back(val);
            for (int t = 0; t < take[q]; ++t) next.push_back(val - 1);
          }
          const BigCount sub = c.count(next);
          const BigCount block = ways * sub;
          if (idx >= block) {
            idx -= block;
            return false;
          }
          // Land inside this block: split into (which members) x (subgraph).
          BigCount choice = idx / sub;
          idx %= sub;
          for (std::size_t q = 0; q < groups.size(); ++q) {
            const BigCount radix =
                big_choose(static_cast<int>(groups[q].second.size()), take[q]);
            const BigCount cq = choice % radix;
            choice /= radix;
            for (int w : unrank_combination(groups[q].second, take[q], cq)) {
              g.add_edge(v, w);
              --residual[w];
            }
          }
          return true;
        }
        const int cap =
            std::min(static_cast<int>(groups[j].second.size()), left);
        for (int t = 0; t <= cap; ++t) {
          take[j] = t;
          if (self(self, j + 1, left - t,
                   ways * small_choose(
                              static_cast<int>(groups[j].second.size()), t)))
            return true;
        }
        take[j] = 0;
        return false;
      };
      descended = rec(rec, 0, r, BigCount(1));
      if (!descended)
        throw std::logic_error("unranking index escaped the state count");
    }
    out.push_back(std::move(g));
  }
  return out;
}

BigCount brute_force_count(int k, const std::function<bool(const Graph&)>& pred,
                           std::uint64_t budget) {
  if (k < 0) throw std::domain_error("negative vertex count");
  const int pair_bits = k * (k - 1) / 2;
  if (pair_bits >= 63 || (1ull << pair_bits) > budget)
    throw std::domain_error(
        "exhaustive scan of 2^" + std::to_string(pair_bits) +
        " graphs exceeds the scan budget of " + std::to_string(budget) +
        "; raise the budget explicitly to force it");
  std::uint64_t hits = 0;
  const std::uint64_t end = 1ull << pair_bits;
  for (std::uint64_t mask = 0; mask < end; ++mask)
    if (pred(graph_from_mask(k, mask))) ++hits;
  return BigCount(hits);
}

MostLikelyRatio most_likely_degree_ratio(int k, DegreeCounter* counter) {
  if (k < 1) throw std::domain_error("k must be positive");
  DegreeCounter local;
  DegreeCounter& c = counter ? *counter : local;

  MostLikelyRatio out;
  out.max_count = -1;
  std::vector<int> cur;
  // Every degree vector, as multisets (counts are permutation invariant).
  std::function<void(int)> gen = [&](int lo) {
    if (static_cast<int>(cur.size()) == k) {
      BigCount n = c.count(cur);
      if (n > out.max_count) {
        out.max_count = n;
        out.argmax = cur;
      }
      return;
    }
    for (int v = lo; v <= k - 1; ++v) {
      cur.push_back(v);
      gen(v);
      cur.pop_back();
    }
  };
  gen(0);

  out.regular_count = 0;
  for (int r = 0; r <= k - 1; ++r)
    out.regular_count = std::max(out.regular_count,
                                 c.count(DegreeSequence(k, r)));
  out.ratio = std::exp(log_big(out.max_count) - log_big(out.regular_count));
  return out;
}

}  // namespace regsub
