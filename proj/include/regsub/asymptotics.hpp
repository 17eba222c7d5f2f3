#pragma once

#include <string>
#include <vector>

#include "regsub/enumeration.hpp"
#include "regsub/graph.hpp"

namespace regsub {

// All estimates live in the natural-log domain and are evaluated in long
// double. Dropped lower-order factors are reported, never silently folded in.

enum class FRegime {
  sharp,         // lambda in (1/3,2/3) and max_deviation <= k^0.49
  bounded,       // lambda in (1/3,2/3), deviations too large for the sharp
                 // constant; the bounded-factor form is used with f = 1
  out_of_range,  // lambda outside (1/3,2/3); value still returned, flagged
};

std::string to_string(FRegime r);

// lgamma-based log C(n,k); -inf outside 0 <= k <= n.
long double log_choose_real(long double n, long double k);

struct LogEstimate {
  long double log_value = 0;
  long double lambda = 0;
  long double max_deviation = 0;   // max_j |lambda*k - d_j| (or |delta_j|)
  FRegime f_regime = FRegime::sharp;
  long double error_driver = 0;    // magnitude of the dropped term's driver
};

struct LambdaResult {
  long double lambda = 0;
  long double dbar = 0;  // mean residual degree toward the core
};

// Edge density of the free part of a constrained profile:
// dbar = (k-i)^{-1} * sum_j ((k-1)/2 - core[j]), lambda = (d - dbar)/(k-i-1).
LambdaResult lambda_of(const ConstrainedProfile& profile);

// Count of labeled graphs with degree vector d, estimated as
// f * (lambda^lambda (1-lambda)^(1-lambda))^choose(k,2) * prod C(k-1, d_j)
// with lambda = sum(d) / (k(k-1)); f = sqrt(2) e^{1/4} in the sharp regime,
// 1 otherwise. sum(d) must be even.
LogEstimate estimate_count(const DegreeSequence& d);

// log p_k ~ -(k/2) log(pi k / 2). Parity-blind: for k ≡ 3 mod 4 the exact
// probability is 0 while this tracks the feasible neighborhood scale, which
// is what the bounds downstream need. k >= 3.
LogEstimate estimate_pk(int k);

struct PkiBounds {
  long double log_a;  // log of C(k-i, floor((k-i)/2))^i 2^{-(k-i)i} p_{k-i}
  long double log_b;  // k log(k/(k-i)), bound on log(p_{k,i}/p_k)
  bool a_used_exact_tail;  // p_{k-i} taken exactly rather than estimated
};

// Two upper bounds on the conditional regularity probability: A bounds
// p_{k,i} itself, B bounds the ratio p_{k,i}/p_k (constants reported as 1).
// Exact p_{k-i} is used when it is within budget and nonzero.
PkiBounds bound_pki(int k, int i, DegreeCounter* counter = nullptr);

struct RatioSpec {
  int k = 0;             // odd
  int i = 0;
  DegreeSequence d;      // in D_i: entries in [0,i-1], even sum
  std::vector<int> s;    // shift; d - s must also lie in D_i
};

// N(d)/N(d-s) ~ exp{(1/dhat) sum_j (-2 delta_j s_j + s_j^2)}, dhat = (k-i)/2,
// delta_j = d_j - (i-1)/2. Valid while sum |s_j| <= k^{3/4}; violations and
// malformed specs are domain errors. Exactly multiplicative under composing
// shifts.
long double ratio_estimate(const RatioSpec& spec);

// P[the first i vertices of a uniform (k-1)/2-regular graph induce H] ~
// 2^{-choose(i,2)} exp(-(2/(k-i)) sum delta_j^2), delta_j = deg_H(j)-(i-1)/2.
// The dropped factor's driver sum |delta_j| is reported in error_driver.
// Requires k odd, H graphical, i <= k^{0.49}.
LogEstimate prob_induced(int k, const DegreeSequence& h_degrees);

// log C(a, a/2 + x) ~ log C(a, floor(a/2)) - 2x^2/a, |x| <= sqrt(a); the
// dropped term is O(x^3/a^2).
long double log_central_binomial_offset(int a, long double x);

}  // namespace regsub
