#include "regsub/asymptotics.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace regsub {

namespace {

constexpr long double ln2 = 0.693147180559945309417232L;
constexpr long double pi = 3.141592653589793238462643L;

long double xlogx(long double x) { return x > 0 ? x * std::log(x) : 0.0L; }

FRegime regime_of(long double lambda, long double max_dev, int k) {
  if (!(lambda > 1.0L / 3 && lambda < 2.0L / 3)) return FRegime::out_of_range;
  return max_dev <= std::pow(static_cast<long double>(k), 0.49L)
             ? FRegime::sharp
             : FRegime::bounded;
}

}  // namespace

std::string to_string(FRegime r) {
  switch (r) {
    case FRegime::sharp: return "sharp";
    case FRegime::bounded: return "bounded";
    default: return "out-of-range";
  }
}

long double log_choose_real(long double n, long double k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

LambdaResult lambda_of(const ConstrainedProfile& profile) {
  const int k = profile.k;
  const int i = static_cast<int>(profile.core.size());
  if (k < 3 || k % 2 == 0)
    throw std::domain_error("k must be odd and >= 3, got " +
                            std::to_string(k));
  if (i > k - 2)
    throw std::domain_error("core too large: need i <= k-2 so the free part "
                            "has a density");
  const int d = (k - 1) / 2;
  long double sum_residual = 0;
  for (int dj : profile.core) {
    if (dj < 0 || dj > d)
      throw std::domain_error("core degree " + std::to_string(dj) +
                              " outside [0," + std::to_string(d) + "]");
    sum_residual += d - dj;
  }
  LambdaResult out;
  out.dbar = sum_residual / (k - i);
  out.lambda = (d - out.dbar) / (k - i - 1);
  return out;
}

LogEstimate estimate_count(const DegreeSequence& d) {
  const int k = static_cast<int>(d.size());
  if (k < 2) throw std::domain_error("need at least two vertices");
  long long sum = 0;
  for (int x : d) {
    if (x < 0 || x > k - 1)
      throw std::domain_error("degree " + std::to_string(x) +
                              " outside [0," + std::to_string(k - 1) + "]");
    sum += x;
  }
  if (sum % 2 != 0)
    throw std::domain_error("odd degree sum " + std::to_string(sum) +
                            " admits no graph");

  LogEstimate est;
  est.lambda = static_cast<long double>(sum) /
               (static_cast<long double>(k) * (k - 1));
  est.max_deviation = 0;
  for (int x : d)
    est.max_deviation =
        std::max(est.max_deviation, std::fabs(est.lambda * k - x));
  est.f_regime = regime_of(est.lambda, est.max_deviation, k);
  est.error_driver =
      est.max_deviation / std::sqrt(static_cast<long double>(k));

  const long double log_f =
      est.f_regime == FRegime::sharp ? 0.5L * ln2 + 0.25L : 0.0L;
  long double log_products = 0;
  for (int x : d) log_products += log_choose_real(k - 1, x);
  est.log_value = log_f +
                  (static_cast<long double>(k) * (k - 1) / 2) *
                      (xlogx(est.lambda) + xlogx(1 - est.lambda)) +
                  log_products;
  return est;
}

LogEstimate estimate_pk(int k) {
  if (k < 3) throw std::domain_error("need k >= 3");
  LogEstimate est;
  est.log_value = -(static_cast<long double>(k) / 2) *
                  std::log(pi * static_cast<long double>(k) / 2);
  est.lambda = 0.5L;
  est.max_deviation = std::fabs(0.5L * k - (k - 1) / 2);
  est.f_regime = FRegime::sharp;
  est.error_driver = 1.0L / k;  // the per-factor 1+o(1) slack
  return est;
}

PkiBounds bound_pki(int k, int i, DegreeCounter* counter) {
  if (i < 1 || i > k - 1)
    throw std::domain_error("need 1 <= i <= k-1");
  const int m = k - i;
  PkiBounds out;
  out.a_used_exact_tail = false;
  long double log_pm;
  if (m <= exact_budget_max_k) {
    const ExactProbability pm = exact_pk(m, counter);
    if (pm.numerator > 0) {
      log_pm = log_big(pm.numerator) - pm.exponent * ln2;
      out.a_used_exact_tail = true;
    } else {
      // Parity kills the exact tail class (m ≡ 3 mod 4); the parity-blind
      // asymptotic stands in, since A is about the scale of the bound.
      log_pm = estimate_pk(m).log_value;
    }
  } else {
    log_pm = estimate_pk(m).log_value;
  }
  out.log_a = i * log_choose_real(m, m / 2) - static_cast<long double>(m) * i * ln2 + log_pm;
  out.log_b = k * (std::log(static_cast<long double>(k)) -
                   std::log(static_cast<long double>(m)));
  return out;
}

namespace {

void check_in_di(const DegreeSequence& d, int i, const char* name) {
  long long sum = 0;
  for (int x : d) {
    if (x < 0 || x > i - 1)
      throw std::domain_error(std::string(name) + " entry " +
                              std::to_string(x) + " outside [0," +
                              std::to_string(i - 1) + "]");
    sum += x;
  }
  if (sum % 2 != 0)
    throw std::domain_error(std::string(name) +
                            " has odd sum; not in the profile family");
}

}  // namespace

long double ratio_estimate(const RatioSpec& spec) {
  const int k = spec.k;
  const int i = spec.i;
  if (k < 3 || k % 2 == 0) throw std::domain_error("k must be odd and >= 3");
  if (i < 1 || i > k - 1) throw std::domain_error("need 1 <= i <= k-1");
  if (static_cast<int>(spec.d.size()) != i ||
      static_cast<int>(spec.s.size()) != i)
    throw std::domain_error("d and s must both have length i");
  check_in_di(spec.d, i, "d");
  DegreeSequence shifted(i);
  long double total_shift = 0;
  for (int j = 0; j < i; ++j) {
    shifted[j] = spec.d[j] - spec.s[j];
    total_shift += std::abs(spec.s[j]);
  }
  check_in_di(shifted, i, "d-s");
  if (total_shift > std::pow(static_cast<long double>(k), 0.75L))
    throw std::domain_error(
        "total shift " + std::to_string(static_cast<long long>(total_shift)) +
        " exceeds the k^(3/4) validity window");

  const long double dhat = static_cast<long double>(k - i) / 2;
  long double expo = 0;
  for (int j = 0; j < i; ++j) {
    const long double delta = spec.d[j] - static_cast<long double>(i - 1) / 2;
    expo += -2 * delta * spec.s[j] +
            static_cast<long double>(spec.s[j]) * spec.s[j];
  }
  return std::exp(expo / dhat);
}

LogEstimate prob_induced(int k, const DegreeSequence& h_degrees) {
  const int i = static_cast<int>(h_degrees.size());
  if (k < 3 || k % 2 == 0) throw std::domain_error("k must be odd and >= 3");
  if (i < 1) throw std::domain_error("the induced graph needs a vertex");
  if (static_cast<long double>(i) >
      std::pow(static_cast<long double>(k), 0.49L))
    throw std::domain_error("i=" + std::to_string(i) +
                            " exceeds the k^0.49 small-core window");
  if (!is_graphical(h_degrees))
    throw std::domain_error("degree sequence is not graphical; no induced "
                            "graph realizes it");

  LogEstimate est;
  long double sum_sq = 0, sum_abs = 0, max_abs = 0;
  for (int dj : h_degrees) {
    const long double delta = dj - static_cast<long double>(i - 1) / 2;
    sum_sq += delta * delta;
    sum_abs += std::fabs(delta);
    max_abs = std::max(max_abs, std::fabs(delta));
  }
  est.log_value = -(static_cast<long double>(i) * (i - 1) / 2) * ln2 -
                  (2.0L / (k - i)) * sum_sq;
  est.lambda = lambda_of(ConstrainedProfile{k, h_degrees}).lambda;
  est.max_deviation = max_abs;
  est.f_regime = regime_of(est.lambda, est.max_deviation, k);
  est.error_driver = sum_abs;  // drives the dropped o(k^{-3/4}) factor
  return est;
}

long double log_central_binomial_offset(int a, long double x) {
  if (a < 1) throw std::domain_error("need a >= 1");
  if (std::fabs(x) > std::sqrt(static_cast<long double>(a)))
    throw std::domain_error("|x| exceeds sqrt(a); expansion invalid");
  return log_choose_real(a, a / 2) - 2 * x * x / a;
}

}  // namespace regsub
