#include "regsub/moments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "regsub/asymptotics.hpp"

namespace regsub {

namespace {

constexpr long double ln2 = 0.693147180559945309417232L;

long double log_add_exp(long double a, long double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const long double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

long double log_prob(const ExactProbability& p) {
  return log_big(p.numerator) - p.exponent * ln2;
}

// Exact log of C(k,i) C(n-k,k-i) / C(n,k) when the integers are cheap,
// lgamma otherwise; same quantity either way, the exact path just carries
// no cancellation error for the desk-size reports.
long double log_binom_ratio(long long n, int k, int i) {
  if (n <= 100000) {
    return log_big(big_choose(static_cast<int>(n) - k, k - i)) +
           log_big(big_choose(k, i)) - log_big(big_choose(static_cast<int>(n), k));
  }
  return log_choose_real(static_cast<long double>(k), i) +
         log_choose_real(static_cast<long double>(n - k), k - i) -
         log_choose_real(static_cast<long double>(n), k);
}

double finite_or(double v, double fallback) {
  return std::isfinite(v) ? v : fallback;
}

void put_log(nlohmann::json& j, const char* key, long double v) {
  // nlohmann serializes non-finite numbers as null; make the sentinel
  // explicit instead so consumers see the convention.
  if (v == -INFINITY)
    j[key] = "-inf";
  else
    j[key] = static_cast<double>(v);
}

std::string csv_double(long double v) {
  if (v == -INFINITY) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

}  // namespace

std::string to_string(OverlapCase c) {
  switch (c) {
    case OverlapCase::band: return "band";
    case OverlapCase::case1: return "case1";
    case OverlapCase::case2: return "case2";
    default: return "case3";
  }
}

long double log_expected_count(long long n, int k, PkMode mode,
                               DegreeCounter* counter) {
  if (k < 1 || n < k) throw std::domain_error("need 1 <= k <= n");
  if (mode == PkMode::exact) {
    if (k > exact_budget_max_k)
      throw std::domain_error(
          "k=" + std::to_string(k) + " exceeds the exact budget (k <= " +
          std::to_string(exact_budget_max_k) + "); use asymptotic mode");
    const ExactProbability pk = exact_pk(k, counter);
    if (pk.numerator == 0)
      throw std::domain_error(
          "p_k = 0 at k=" + std::to_string(k) +
          " (k ≡ 3 mod 4: degree sum k(k-1)/2 is odd); exact mode undefined");
    // n may be large; C(n,k) stays exact since k is small.
    BigCount binom = 1;
    for (int j = 0; j < k; ++j) {
      binom *= n - j;
      binom /= j + 1;
    }
    return log_big(binom) + log_prob(pk);
  }
  return log_choose_real(static_cast<long double>(n), k) +
         estimate_pk(k).log_value;
}

int choose_threshold(long long n, int k) {
  if (k < 2 || n < k) throw std::domain_error("need 2 <= k <= n");
  const long double lower =
      static_cast<long double>(k) * k / static_cast<long double>(n);
  const long double upper = std::sqrt(static_cast<long double>(k));
  if (lower >= upper)
    throw std::domain_error(
        "k^2/n = " + std::to_string(static_cast<double>(lower)) +
        " >= sqrt(k) = " + std::to_string(static_cast<double>(upper)) +
        ": k is at or beyond the n^(2/3) scale, no overlap threshold exists");
  const long double raw = std::sqrt(std::max(lower, 1.0L) * upper);
  int t = static_cast<int>(std::ceil(raw));
  return std::max(2, std::min(t, k - 1));
}

MomentReport variance_bound_profile(long long n, int k, PkiMode pki_mode,
                                    DegreeCounter* counter) {
  if (k < 3 || n <= k) throw std::domain_error("need 3 <= k < n");
  DegreeCounter local;
  DegreeCounter& c = counter ? *counter : local;

  MomentReport rep;
  rep.n = n;
  rep.k = k;
  rep.pki_mode = pki_mode;
  rep.pk_mode =
      pki_mode == PkiMode::exact ? PkMode::exact : PkMode::asymptotic;
  rep.log_ex = log_expected_count(n, k, rep.pk_mode,
                                  pki_mode == PkiMode::exact ? &c : nullptr);
  rep.log_n_over_log_k =
      std::log(static_cast<long double>(n)) /
      std::log(static_cast<long double>(k));

  // Band threshold; when k sits at/beyond the n^(2/3) fence there is no
  // vanishing band and every row is bounded directly.
  const long double fence =
      static_cast<long double>(k) * k / static_cast<long double>(n);
  rep.t = fence < std::sqrt(static_cast<long double>(k))
              ? choose_threshold(n, k)
              : 1;

  ExactProbability pk;
  if (pki_mode == PkiMode::exact) pk = exact_pk(k, &c);

  const int case1_end = k / 2;                       // i <= floor(k/2)
  const int case2_end = static_cast<int>(std::ceil(  // i <= ceil(k - k/log k)
      k - static_cast<long double>(k) /
              std::log(static_cast<long double>(k))));

  long double total = -rep.log_ex;  // the 1/E[X] term
  for (int i = 2; i <= k - 1; ++i) {
    OverlapRow row;
    row.i = i;
    row.log_binom_ratio = log_binom_ratio(n, k, i);
    row.overlap_case = i <= rep.t        ? OverlapCase::band
                       : i <= case1_end  ? OverlapCase::case1
                       : i <= case2_end  ? OverlapCase::case2
                                         : OverlapCase::case3;

    if (pki_mode == PkiMode::exact) {
      const PkiResult pki = exact_pki(k, i, &c);
      // p_{k,i}/p_k = N * 2^{C(i,2)} / G, exactly.
      const BigCount scaled = pki.p.numerator << (i * (i - 1) / 2);
      const long double log_ratio =
          scaled > 0 ? log_big(scaled) - log_big(pk.numerator) : -INFINITY;
      const BigCount diff = scaled - pk.numerator;  // >= 0: worst H beats avg
      const long double log_ratio_minus =
          diff > 0 ? log_big(diff) - log_big(pk.numerator) : -INFINITY;
      if (row.overlap_case == OverlapCase::band) {
        row.log_ratio_used = log_ratio_minus;
      } else {
        row.log_ratio_used = log_ratio;
      }
      row.log_g = row.log_binom_ratio + row.log_ratio_used;
      row.log_g_minus = row.log_binom_ratio + log_ratio_minus;
      row.has_g_minus = true;
    } else {
      if (row.overlap_case == OverlapCase::band) {
        // Vanishing covariance band: the measured factor would be o(1); the
        // bound chain charges it nothing and the row records the sentinel.
        row.log_ratio_used = -INFINITY;
      } else if (row.overlap_case == OverlapCase::case3) {
        // Trivial p_{k,i} <= 1, so the ratio bound is 1/p_k.
        row.log_ratio_used = -estimate_pk(k).log_value;
      } else {
        row.log_ratio_used =
            k * (std::log(static_cast<long double>(k)) -
                 std::log(static_cast<long double>(k - i)));
      }
      row.log_g = row.log_binom_ratio + row.log_ratio_used;
    }
    total = log_add_exp(total, row.log_g);
    rep.rows.push_back(row);
  }
  rep.log_total = total;
  return rep;
}

std::string MomentReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["k"] = k;
  j["pk_mode"] = pk_mode == PkMode::exact ? "exact" : "asymptotic";
  j["pki_mode"] = pki_mode == PkiMode::exact ? "exact" : "lemma-bound";
  j["log_ex"] = finite_or(static_cast<double>(log_ex), 0);
  j["t"] = t;
  put_log(j, "log_total", log_total);
  j["log_n_over_log_k"] = static_cast<double>(log_n_over_log_k);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r;
    r["i"] = row.i;
    r["case"] = to_string(row.overlap_case);
    put_log(r, "log_binom_ratio", row.log_binom_ratio);
    put_log(r, "log_ratio_used", row.log_ratio_used);
    put_log(r, "log_g", row.log_g);
    if (row.has_g_minus) put_log(r, "log_g_minus", row.log_g_minus);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2);
}

std::string MomentReport::to_csv() const {
  std::ostringstream out;
  out << "i,case,log_binom_ratio,log_ratio_used,log_g,log_g_minus\n";
  for (const auto& row : rows) {
    out << row.i << ',' << to_string(row.overlap_case) << ','
        << csv_double(row.log_binom_ratio) << ','
        << csv_double(row.log_ratio_used) << ',' << csv_double(row.log_g)
        << ',' << (row.has_g_minus ? csv_double(row.log_g_minus) : "") << '\n';
  }
  return out.str();
}

long double upper_bound_tail(long long n, int k0) {
  if (n < 1 || k0 < 3) throw std::domain_error("need n >= 1 and k0 >= 3");
  const long double pi = 3.141592653589793238462643L;
  const long double logn = std::log(static_cast<long double>(n));
  auto log_term = [&](long long k) {
    const long double kk = static_cast<long double>(k);
    return kk * (1 + logn - std::log(kk)) + std::log(kk) -
           (kk / 2) * std::log(pi * kk / 2);
  };
  long double sum = -INFINITY;
  long double prev = INFINITY;
  // Terms rise to a single peak then decay superexponentially; stop once
  // past the peak and 30 orders below the accumulated sum.
  for (long long k = k0;; ++k) {
    const long double lt = log_term(k);
    sum = log_add_exp(sum, lt);
    if (lt < prev && lt < sum - 69.1L) break;
    prev = lt;
    if (k > k0 + 100000000ll)
      throw std::runtime_error("tail sum failed to converge");
  }
  return sum;
}

}  // namespace regsub
