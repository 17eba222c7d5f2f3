#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regsub/graph.hpp"
#include "regsub/rng.hpp"

namespace regsub {

using BigCount = boost::multiprecision::cpp_int;

BigCount big_choose(int n, int k);
long double log_big(const BigCount& x);  // natural log, x > 0

// Largest k for which the exact machinery (counting DP at d ~ k/2 and the
// unranking sampler's index budget) is supported. Callers wanting larger k
// are told to use the asymptotic evaluators instead.
constexpr int exact_budget_max_k = 13;

// Default cap on exhaustive scans: 2^21 graphs (choose(7,2) edge bits).
constexpr std::uint64_t brute_force_default_budget = 1ull << 21;

// Dyadic probability num / 2^exp with a rounded float view. Always in [0,1].
struct ExactProbability {
  BigCount numerator;
  int exponent = 0;
  long double value() const;
  std::string to_string() const;  // "num/2^exp"
};

// Core of a conditioning event: the first core.size() vertices of a graph on
// k vertices induce a fixed graph with degree sequence `core` (entries in
// [0, core.size()-1]); every vertex has total degree (k-1)/2, k odd.
struct ConstrainedProfile {
  int k = 0;
  DegreeSequence core;
};

// Exact counting by vertex elimination, memoized on the sorted residual
// degree multiset. One instance is single-threaded; independent instances
// may run in parallel. Keeping an instance alive across queries shares the
// memo (the k=13 states dominate the acceptance-suite runtime).
class DegreeCounter {
 public:
  // Labeled simple graphs on d.size() vertices with degree vector d.
  BigCount count(const DegreeSequence& d);

  // Labeled graphs on profile.k vertices where the first i = core.size()
  // vertices induce no edges at all, vertex j < i has degree (k-1)/2 -
  // core[j], and the rest have degree (k-1)/2. Summed over the placements of
  // a fixed core graph this counts regular graphs inducing it. k even or
  // core entries out of [0, i-1] are domain errors; parity-infeasible
  // profiles count 0.
  BigCount count_constrained(const ConstrainedProfile& profile);

 private:
  BigCount count_sorted(std::vector<std::uint8_t>& d);
  BigCount count_constrained_rec(std::vector<std::uint8_t>& core,
                                 std::vector<std::uint8_t>& free_deg);
  std::unordered_map<std::string, BigCount> memo_;
  std::unordered_map<std::string, BigCount> memo_constrained_;
};

BigCount count_by_degree_sequence(const DegreeSequence& d);
BigCount count_constrained(const ConstrainedProfile& profile);

// P[G(k,1/2) is floor((k-1)/2)-regular], exact. Zero when parity forbids it
// (k ≡ 3 mod 4: degree sum k(k-1)/2 is odd).
ExactProbability exact_pk(int k, DegreeCounter* counter = nullptr);

struct PkiResult {
  ExactProbability p;       // max over graphical cores in D_i
  DegreeSequence argmax;    // lexicographically smallest sorted maximizer
};

// p_{k,i}: the worst-case conditional probability that G(k,1/2) is
// (k-1)/2-regular given its first i vertices induce a fixed graph H,
// maximized over H. Conditioning only sees the degree sequence of H, so the
// max runs over graphical vectors in D_i. k odd, 2 <= i <= k-1.
PkiResult exact_pki(int k, int i, DegreeCounter* counter = nullptr);

// Exactly uniform (k-1)/2-regular graphs on k labeled vertices by unranking
// the counting DP: each sample consumes ceil(log2(total)) random bits,
// rejecting overshoots. k odd, k <= exact_budget_max_k; throws with the
// parity obstruction named when no such graph exists.
std::vector<Graph> sample_regular_exact(int k, Seed seed, int count,
                                        DegreeCounter* counter = nullptr);

// Exhaustive scan of all 2^choose(k,2) graphs on k labeled vertices; the
// independent oracle for everything above. Refuses (throws) rather than
// truncating when the scan exceeds `budget` graphs.
BigCount brute_force_count(int k, const std::function<bool(const Graph&)>& pred,
                           std::uint64_t budget = brute_force_default_budget);

// Diagnostic for "no degree sequence is much more likely than the regular
// one": max over all degree sequences d of G(d), divided by the count of the
// most popular regular class max_r G(r,...,r). The denominator equals the
// floor((k-1)/2)-regular count whenever that count is nonzero; at k ≡ 3
// mod 4 that class is empty (odd degree sum) and the most popular feasible
// class stands in for it.
struct MostLikelyRatio {
  DegreeSequence argmax;
  BigCount max_count;
  BigCount regular_count;
  long double ratio;
};
MostLikelyRatio most_likely_degree_ratio(int k, DegreeCounter* counter = nullptr);

}  // namespace regsub
