#include "regsub/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "regsub/graph.hpp"
#include "regsub/moments.hpp"
#include "regsub/search.hpp"

namespace regsub {

const char* const sweep_csv_header =
    "n,trial,seed,observed_max_size,observed_r,optimal,bound_2n23,log_ex";

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["n_range"] = n_range;
  j["k_range"] = k_range;
  j["trials"] = trials;
  j["seed"] = seed.value;
  j["search_mode"] = search_mode;
  j["pk_mode"] = pk_mode;
  j["exact_search_cap"] = exact_search_cap;
  j["node_budget"] = node_budget;
  j["heuristic_budget"] = heuristic_budget;
  j["output_path"] = output_path;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.command = j.value("command", c.command);
  c.n_range = j.value("n_range", c.n_range);
  c.k_range = j.value("k_range", c.k_range);
  c.trials = j.value("trials", c.trials);
  c.seed.value = j.value("seed", c.seed.value);
  c.search_mode = j.value("search_mode", c.search_mode);
  c.pk_mode = j.value("pk_mode", c.pk_mode);
  c.exact_search_cap = j.value("exact_search_cap", c.exact_search_cap);
  c.node_budget = j.value("node_budget", c.node_budget);
  c.heuristic_budget = j.value("heuristic_budget", c.heuristic_budget);
  c.output_path = j.value("output_path", c.output_path);
  return c;
}

int nearest_feasible_k(int size) {
  if (size < 1) return 1;
  const int below = size - (size - 1) % 4;  // largest k ≡ 1 mod 4, k <= size
  return (size - below <= 2) ? below : below + 4;
}

namespace {

SweepRow run_one(const ExperimentConfig& cfg, int n, int trial) {
  SweepRow row;
  row.n = n;
  row.trial = trial;
  const Seed trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(trial));
  row.derived_seed = trial_seed.value;
  const Graph g = sample_gnp(n, 0.5, trial_seed);

  const bool exact = cfg.search_mode == "exact" ||
                     (cfg.search_mode == "auto" && n <= cfg.exact_search_cap);
  SearchResult res;
  if (exact) {
    res = max_induced_regular_exact(
        g, cfg.node_budget ? cfg.node_budget : search_default_node_budget);
  } else {
    res = max_induced_regular_heuristic(
        g, derive_seed(trial_seed, 1),
        cfg.heuristic_budget ? cfg.heuristic_budget
                             : heuristic_default_budget);
  }
  row.observed_max_size = res.size;
  row.observed_r = res.r;
  row.optimal = res.optimal;
  row.bound_2n23 = 2.0 * std::pow(static_cast<double>(n), 2.0 / 3.0);

  int k = nearest_feasible_k(res.size);
  while (k > n) k -= 4;  // E[X] is over k-subsets of [n]
  const bool use_exact_pk =
      cfg.pk_mode == "exact" ||
      (cfg.pk_mode == "auto" && k <= exact_budget_max_k);
  row.log_ex = static_cast<double>(log_expected_count(
      n, k, use_exact_pk ? PkMode::exact : PkMode::asymptotic));
  return row;
}

int worker_count() {
  if (const char* env = std::getenv("REGSUB_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(std::min(hw, 8u)) : 1;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  if (config.command != "sweep")
    throw std::domain_error("config.command must be \"sweep\", got \"" +
                            config.command + "\"");
  if (config.trials < 1)
    throw std::domain_error("config.trials must be >= 1, got " +
                            std::to_string(config.trials));
  if (config.n_range.empty())
    throw std::domain_error("config.n_range must be non-empty");
  for (int n : config.n_range)
    if (n < 1 || n > Graph::max_vertices)
      throw std::domain_error(
          "config.n_range entry out of [1, " +
          std::to_string(Graph::max_vertices) + "]: " + std::to_string(n));
  if (config.search_mode != "auto" && config.search_mode != "exact" &&
      config.search_mode != "heuristic")
    throw std::domain_error("config.search_mode must be auto, exact or "
                            "heuristic, got \"" + config.search_mode + "\"");
  if (config.pk_mode != "auto" && config.pk_mode != "exact" &&
      config.pk_mode != "asymptotic")
    throw std::domain_error("config.pk_mode must be auto, exact or "
                            "asymptotic, got \"" + config.pk_mode + "\"");

  std::vector<std::pair<int, int>> tasks;
  for (int n : config.n_range)
    for (int t = 0; t < config.trials; ++t) tasks.emplace_back(n, t);

  // Rows are written into their slot, so output order is (n, trial)
  // regardless of how many workers run.
  std::vector<SweepRow> rows(tasks.size());
  const int workers =
      std::max(1, std::min<int>(worker_count(), static_cast<int>(tasks.size())));
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= tasks.size()) return;
        try {
          rows[idx] = run_one(config, tasks[idx].first, tasks[idx].second);
        } catch (...) {
          std::lock_guard<std::mutex> hold(error_lock);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << sweep_csv_header << '\n';
  char buf[64];
  for (const auto& row : rows) {
    out << row.n << ',' << row.trial << ',' << row.derived_seed << ','
        << row.observed_max_size << ',' << row.observed_r << ','
        << (row.optimal ? "true" : "false") << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.bound_2n23);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.log_ex);
    out << buf << '\n';
  }
  return out.str();
}

}  // namespace regsub
