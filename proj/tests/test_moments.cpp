#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "regsub/enumeration.hpp"
#include "regsub/moments.hpp"

using namespace regsub;

namespace {

long double lse(std::initializer_list<long double> xs) {
  long double s = -INFINITY;
  for (long double x : xs) {
    if (x == -INFINITY) continue;
    if (s == -INFINITY) {
      s = x;
    } else {
      const long double m = std::max(s, x);
      s = m + std::log1p(std::exp(std::min(s, x) - m));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("expected count at the pinned profiles") {
  CHECK(log_expected_count(10, 5, PkMode::exact) ==
        doctest::Approx(std::log(252.0L * 12 / 1024)).epsilon(1e-12));
  // n = k: the single subset, so just log p_k.
  CHECK(log_expected_count(5, 5, PkMode::exact) ==
        doctest::Approx(std::log(12.0L / 1024)).epsilon(1e-12));
  // Deep inside the regime E[X] is astronomically large.
  CHECK(log_expected_count(1000000, 1000, PkMode::asymptotic) > 1000);
}

TEST_CASE("expected count refusals") {
  CHECK_THROWS_WITH_AS(log_expected_count(10, 7, PkMode::exact),
                       doctest::Contains("3 mod 4"), std::domain_error);
  CHECK_THROWS_WITH_AS(log_expected_count(100, 17, PkMode::exact),
                       doctest::Contains("asymptotic"), std::domain_error);
  CHECK_THROWS_AS(log_expected_count(5, 7, PkMode::exact), std::domain_error);
  CHECK_THROWS_AS(log_expected_count(10, 0, PkMode::exact), std::domain_error);
  // Asymptotic mode is parity-blind, so k=7 is fine there.
  CHECK(std::isfinite(double(log_expected_count(10, 7, PkMode::asymptotic))));
}

TEST_CASE("overlap threshold at the pinned profile") {
  CHECK(choose_threshold(1000000, 1000) == 6);
  CHECK_THROWS_WITH_AS(choose_threshold(1000000, 10000),
                       doctest::Contains("no overlap threshold"),
                       std::domain_error);
  CHECK_THROWS_AS(choose_threshold(100, 0), std::domain_error);
}

TEST_CASE("overlap threshold sits between the fences inside the regime") {
  // Interior points only: near the k ~ n^(2/3) boundary the two fences can
  // pinch so tightly that no integer lies strictly between them.
  const std::pair<long long, int> pts[] = {
      {1000000, 10}, {1000000, 101},   {1000000, 401}, {1000000, 1001},
      {1000000000, 100}, {1000000000, 10000}, {1000000000000LL, 10}};
  for (auto [n, k] : pts) {
    const int t = choose_threshold(n, k);
    CHECK(static_cast<long double>(k) * k / n < t);
    CHECK(t < std::sqrt(static_cast<long double>(k)));
    CHECK(t >= 2);
    CHECK(t <= k - 1);
  }
}

TEST_CASE("variance profile at the desk size, every cell recomputed") {
  DegreeCounter c;
  const MomentReport rep = variance_bound_profile(10, 5, PkiMode::exact, &c);

  CHECK(rep.log_ex ==
        doctest::Approx(std::log(252.0L * 12 / 1024)).epsilon(1e-12));
  CHECK(rep.t == 1);  // fences cross at (10,5): no vanishing band
  CHECK(rep.log_n_over_log_k ==
        doctest::Approx(std::log(10.0L) / std::log(5.0L)).epsilon(1e-12));
  REQUIRE(rep.rows.size() == 3);
  for (int j = 0; j < 3; ++j) REQUIRE(rep.rows[j].i == j + 2);

  // i=2: C(5,2)C(5,3)/C(10,5) = 100/252; p_{5,2} = p_5 so the ratio is 1
  // and the subtracted form vanishes entirely.
  const OverlapRow& r2 = rep.rows[0];
  CHECK(r2.overlap_case == OverlapCase::case1);
  CHECK(r2.log_binom_ratio ==
        doctest::Approx(std::log(100.0L / 252)).epsilon(1e-12));
  CHECK(r2.log_ratio_used == 0.0L);
  CHECK(r2.log_g == doctest::Approx(std::log(100.0L / 252)).epsilon(1e-12));
  CHECK(r2.has_g_minus);
  CHECK(r2.log_g_minus == -INFINITY);

  // i=3: worst core H has 2 completions, so p_{5,3}/p_5 = 2*2^3/12 = 4/3.
  const OverlapRow& r3 = rep.rows[1];
  CHECK(r3.overlap_case == OverlapCase::case3);  // case2 band is empty at k=5
  CHECK(r3.log_binom_ratio ==
        doctest::Approx(std::log(100.0L / 252)).epsilon(1e-12));
  CHECK(r3.log_ratio_used == doctest::Approx(std::log(4.0L / 3)).epsilon(1e-12));
  CHECK(r3.log_g ==
        doctest::Approx(std::log(100.0L / 252 * 4 / 3)).epsilon(1e-12));
  CHECK(r3.log_g_minus ==
        doctest::Approx(std::log(100.0L / 252 / 3)).epsilon(1e-12));

  // i=4: one completion per worst core, ratio 1*2^6/12 = 16/3.
  const OverlapRow& r4 = rep.rows[2];
  CHECK(r4.overlap_case == OverlapCase::case3);
  CHECK(r4.log_binom_ratio ==
        doctest::Approx(std::log(25.0L / 252)).epsilon(1e-12));
  CHECK(r4.log_ratio_used ==
        doctest::Approx(std::log(16.0L / 3)).epsilon(1e-12));
  CHECK(r4.log_g_minus ==
        doctest::Approx(std::log(25.0L / 252 * 52 / 12)).epsilon(1e-12));

  const long double total = lse(
      {-rep.log_ex, rep.rows[0].log_g, rep.rows[1].log_g, rep.rows[2].log_g});
  CHECK(rep.log_total == doctest::Approx(total).epsilon(1e-12));
  CHECK(rep.log_total ==
        doctest::Approx(0.58425309232080788).epsilon(1e-9));

  for (const OverlapRow& row : rep.rows) {
    CHECK(rep.log_total >= row.log_g);  // sum dominates every term
    CHECK(row.has_g_minus);
    CHECK(row.log_g >= row.log_g_minus);
  }
  CHECK(rep.log_total >= -rep.log_ex);
}

TEST_CASE("conditional band is exactly flat at overlap two") {
  DegreeCounter c;
  for (int k : {5, 9, 13}) {
    const ExactProbability pk = exact_pk(k, &c);
    const PkiResult pki = exact_pki(k, 2, &c);
    CHECK(pki.p.numerator * 2 == pk.numerator);  // p_{k,2} = p_k exactly
  }
}

TEST_CASE("variance profile in the lemma regime") {
  const MomentReport rep =
      variance_bound_profile(1000000, 1001, PkiMode::lemma_bound);
  const long double k = 1001;

  CHECK(rep.t == 6);
  CHECK(rep.log_total == doctest::Approx(-2.1274414079038451).epsilon(1e-9));
  CHECK(rep.log_total < 0);  // the bound closes in the valid regime
  REQUIRE(rep.rows.size() == 999);
  for (int j = 0; j < 999; ++j) REQUIRE(rep.rows[j].i == j + 2);

  // Case labels flip exactly at the documented integer fences.
  CHECK(rep.rows[6 - 2].overlap_case == OverlapCase::band);
  CHECK(rep.rows[7 - 2].overlap_case == OverlapCase::case1);
  CHECK(rep.rows[500 - 2].overlap_case == OverlapCase::case1);
  CHECK(rep.rows[501 - 2].overlap_case == OverlapCase::case2);
  CHECK(rep.rows[857 - 2].overlap_case == OverlapCase::case2);
  CHECK(rep.rows[858 - 2].overlap_case == OverlapCase::case3);
  CHECK(rep.rows[1000 - 2].overlap_case == OverlapCase::case3);

  const long double case3_ratio = rep.rows.back().log_ratio_used;
  for (const OverlapRow& row : rep.rows) {
    CHECK_FALSE(row.has_g_minus);
    CHECK(rep.log_total >= row.log_g);
    switch (row.overlap_case) {
      case OverlapCase::band:
        CHECK(row.log_ratio_used == -INFINITY);
        CHECK(row.log_g == -INFINITY);
        break;
      case OverlapCase::case1: {
        CHECK(row.log_ratio_used ==
              doctest::Approx(k * std::log(k / (k - row.i))).epsilon(1e-12));
        // Case-1 envelope: g(i) <= (3 e^2 k^2 / (i n))^i.
        const long double shape =
            row.i * std::log(3 * std::exp(2.0L) * k * k / (row.i * 1e6L));
        CHECK(row.log_g <= shape);
        break;
      }
      case OverlapCase::case2:
        CHECK(row.log_ratio_used ==
              doctest::Approx(k * std::log(k / (k - row.i))).epsilon(1e-12));
        break;
      case OverlapCase::case3:
        CHECK(row.log_ratio_used == case3_ratio);  // trivial 1/p_k bound
        break;
    }
  }

  // Lemma mode never touches exact parity, so even k works too.
  CHECK(variance_bound_profile(1000000, 1000, PkiMode::lemma_bound).log_total <
        0);
  CHECK_THROWS_AS(variance_bound_profile(5, 5, PkiMode::lemma_bound),
                  std::domain_error);
}

TEST_CASE("variance bound strengthens deeper inside the regime") {
  long double prev = -INFINITY;
  for (int k = 101; k <= 1001; k += 100) {
    const long double total =
        variance_bound_profile(1000000, k, PkiMode::lemma_bound).log_total;
    CHECK(total > prev);
    CHECK(total < 0);
    prev = total;
  }
}

TEST_CASE("moment report serialization shape") {
  DegreeCounter c;
  const MomentReport rep = variance_bound_profile(10, 5, PkiMode::exact, &c);

  const std::string csv = rep.to_csv();
  CHECK(csv.substr(0, csv.find('\n')) ==
        "i,case,log_binom_ratio,log_ratio_used,log_g,log_g_minus");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("2,case1,") != std::string::npos);
  CHECK(csv.find(",-inf\n") != std::string::npos);  // vanished g-minus cell

  const nlohmann::json j = nlohmann::json::parse(rep.to_json());
  CHECK(j["n"] == 10);
  CHECK(j["k"] == 5);
  CHECK(j["t"] == 1);
  CHECK(j["pki_mode"] == "exact");
  CHECK(j["log_total"].get<double>() ==
        doctest::Approx(0.58425309232080788).epsilon(1e-9));
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["case"] == "case1");
  CHECK(j["rows"][0]["log_g_minus"] == "-inf");
  CHECK(j["rows"][1]["log_g_minus"].get<double>() ==
        doctest::Approx(std::log(100.0 / 252 / 3)).epsilon(1e-9));

  const nlohmann::json jl = nlohmann::json::parse(
      variance_bound_profile(1000000, 101, PkiMode::lemma_bound).to_json());
  CHECK(jl["pki_mode"] == "lemma-bound");
  CHECK(jl["rows"][0]["log_ratio_used"] == "-inf");  // band row sentinel
  CHECK_FALSE(jl["rows"][0].contains("log_g_minus"));
}

TEST_CASE("union bound tail at the pinned scales") {
  // k0 = ceil(2 n^(2/3)) at n = 10^4 is 929; above it the union bound is
  // already vanishing, far below it the bound is vacuous.
  CHECK(upper_bound_tail(10000, 929) < 0);
  CHECK(upper_bound_tail(10000, 10) > 0);
  // Dropping positive terms only shrinks the sum; below the peak the dropped
  // terms sit under long-double resolution, so the chain is non-strict there.
  long double prev = INFINITY;
  for (int k0 : {10, 100, 464, 929, 1500}) {
    const long double tail = upper_bound_tail(10000, k0);
    CHECK(tail <= prev);
    prev = tail;
  }
  CHECK(upper_bound_tail(10000, 464) > upper_bound_tail(10000, 929));
  CHECK_THROWS_AS(upper_bound_tail(0, 10), std::domain_error);
  CHECK_THROWS_AS(upper_bound_tail(100, 2), std::domain_error);
}
