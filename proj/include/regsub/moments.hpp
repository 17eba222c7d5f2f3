#pragma once

#include <string>
#include <vector>

#include "regsub/enumeration.hpp"

namespace regsub {

// Second-moment bookkeeping for X = number of k-subsets of G(n,1/2) inducing
// a (k-1)/2-regular graph. Everything is in the natural-log domain.

enum class PkMode { exact, asymptotic };
enum class PkiMode { exact, lemma_bound };

// log E[X] = log C(n,k) + log p_k. Exact mode keeps both factors exact
// before the final log and requires k within the exact budget and p_k > 0
// (k ≡ 3 mod 4 has p_k = 0 and is rejected with the parity named).
long double log_expected_count(long long n, int k, PkMode mode,
                               DegreeCounter* counter = nullptr);

// Overlap threshold splitting "essentially independent" pairs from the
// bounded cases: t = ceil(sqrt(max(k^2/n, 1) * sqrt(k))), clamped to
// [2, k-1]. Geometric mean of the fences k^2/n and sqrt(k); errors when the
// fences cross (k^2/n >= sqrt(k), i.e. k beyond the n^{2/3} scale).
int choose_threshold(long long n, int k);

enum class OverlapCase {
  band,   // i <= t: vanishing covariance band
  case1,  // t < i <= k/2
  case2,  // k/2 < i <= k - k/log k
  case3,  // i > k - k/log k: trivial p_{k,i} <= 1
};

std::string to_string(OverlapCase c);

struct OverlapRow {
  int i = 0;
  long double log_binom_ratio = 0;    // log [C(k,i) C(n-k,k-i) / C(n,k)]
  long double log_ratio_used = 0;     // log of the p_{k,i}/p_k factor used
  long double log_g = 0;              // log contribution to the variance sum
  long double log_g_minus = 0;        // subtracted form, exact mode only
  bool has_g_minus = false;
  OverlapCase overlap_case = OverlapCase::band;
};

struct MomentReport {
  long long n = 0;
  int k = 0;
  PkMode pk_mode = PkMode::exact;
  PkiMode pki_mode = PkiMode::exact;
  long double log_ex = 0;
  int t = 0;
  long double log_total = 0;          // log(1/E[X] + sum_i g(i))
  long double log_n_over_log_k = 0;   // reported for judging the case-3 close
  std::vector<OverlapRow> rows;       // i = 2..k-1, exactly once each

  std::string to_json() const;
  std::string to_csv() const;  // header + one row per i
};

// Var[X]/E[X]^2 <= 1/E[X] + sum_{i=2}^{k-1} g(i), row by row.
// g(i) = [C(k,i)C(n-k,k-i)/C(n,k)] * (p_{k,i}/p_k factor). Exact mode
// measures p_{k,i} by enumeration (small k); lemma mode uses the
// e^{k log(k/(k-i))} bound. Rows with i <= t form the vanishing band: exact
// mode substitutes the measured |p_{k,i}/p_k - 1|, lemma mode treats the
// factor as vanishing (contribution 0, logged as -inf).
MomentReport variance_bound_profile(long long n, int k, PkiMode pki_mode,
                                    DegreeCounter* counter = nullptr);

// log of sum_{k >= k0} (en/k)^k * k * (pi k/2)^{-k/2}: union bound on the
// existence of an induced regular subgraph on k0 or more vertices. Terms are
// accumulated in the log domain until below 1e-30 of the running sum (past
// the peak). Negative log means the union bound is already below 1.
long double upper_bound_tail(long long n, int k0);

}  // namespace regsub
