#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regsub/rng.hpp"

namespace regsub {

// One reproducible experiment description. Round-trips through JSON without
// loss; the same config always produces byte-identical output.
struct ExperimentConfig {
  std::string command = "sweep";
  std::vector<int> n_range;            // graph orders
  std::vector<int> k_range;            // reserved for report grids
  int trials = 1;
  Seed seed;
  std::string search_mode = "auto";    // auto | exact | heuristic
  std::string pk_mode = "auto";        // auto | exact | asymptotic
  int exact_search_cap = 26;           // auto: exact up to here, heuristic past
  std::uint64_t node_budget = 0;       // 0 = library default
  std::uint64_t heuristic_budget = 0;  // 0 = library default
  std::string output_path;             // empty = stdout

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

struct SweepRow {
  int n = 0;
  int trial = 0;
  std::uint64_t derived_seed = 0;
  int observed_max_size = 0;
  int observed_r = 0;
  bool optimal = false;
  double bound_2n23 = 0;   // 2 n^{2/3}
  double log_ex = 0;       // log E[X] at the nearest feasible k (k ≡ 1 mod 4)
};

extern const char* const sweep_csv_header;  // "n,trial,seed,..." line

// Nearest k ≡ 1 (mod 4) to `size` (ties toward smaller): the closest k whose
// regular class is parity-feasible, where E[X] is meaningful.
int nearest_feasible_k(int size);

std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

// Header + one line per row in (n, trial) order, floats with 17 significant
// digits, locale-independent. Byte-identical across reruns and worker counts
// (REGSUB_WORKERS only changes scheduling; rows are buffered and ordered).
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace regsub
