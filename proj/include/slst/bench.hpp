#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slst/solver.hpp"

namespace slst {

struct BenchParams {
  int t_lo = 2;
  int t_hi = 6;
  int trials = 3;
  std::uint64_t seed = 1;
  int nodes = 12;
  int edges = 24;
  Delay bound = 10;
  Cost max_cost = 9;
  Delay max_delay = 3;
};

struct BenchRow {
  int t = 0;              // instance terminals, root included
  int k = 0;              // DP universe size: t - 1
  std::uint64_t submask_pairs = 0;
  std::uint64_t analytic = 0;  // 3^k - 2^(k+1) + 1
  bool match = false;
  std::uint64_t median_states = 0;
  double median_ms = 0;
};

// Closed-form count of (mask, proper nonempty submask) pairs over a k-bit
// universe; what one exact solve enumerates.
std::uint64_t analytic_submask_pairs(int k);

std::vector<BenchRow> run_bench(const BenchParams& params);

// Deterministic table for stdout; timing is reported separately.
std::string render_bench_table(const std::vector<BenchRow>& rows);
std::string render_bench_times(const std::vector<BenchRow>& rows);

}  // namespace slst
