#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "slst/error.hpp"

namespace slst {

struct DstArc {
  int tail = 0;
  int head = 0;
  std::int64_t cost = 0;
};

struct DstLimits {
  int terminal_cap = 20;
  std::uint64_t state_budget = 50'000'000;  // (mask, vertex) table cells
};

struct DstStats {
  std::uint64_t submask_pairs = 0;   // (mask, proper nonempty submask) enumerations
  std::uint64_t states_touched = 0;  // table cells that ended up finite
  std::uint64_t relax_pops = 0;
};

struct DstResult {
  std::vector<int> arc_ids;  // sorted; an arborescence at root covering all terminals
  std::int64_t cost = 0;
  DstStats stats;
};

// Backtrace entry: merge_submask > 0 means the state split into
// (merge_submask, rest) at the same vertex; otherwise extend_arc >= 0 walks
// one arc towards the already-solved remainder.
struct DstBack {
  std::uint32_t merge_submask = 0;
  std::int32_t extend_arc = -1;
};

// Exposed for table-level tests; cost[mask][v] is the cheapest arborescence
// rooted at v spanning the terminals selected by mask.
struct DstTable {
  std::vector<int> terminal_order;  // distinct non-root terminals, bit i = terminal_order[i]
  std::vector<std::vector<std::int64_t>> cost;
  std::vector<std::vector<DstBack>> back;
};

inline constexpr std::int64_t kDstInf = std::numeric_limits<std::int64_t>::max() / 4;

// Minimum-cost arborescence rooted at `root` covering `terminals`, by subset
// dynamic programming over the terminal set:
//   W({s}, v) = dist(v -> s)
//   W(X, v)   = min( min over nonempty X' < X of W(X', v) + W(X \ X', v),
//                    min over u of dist(v, u) + merged(X, u) )
// The distance term is realized as one multi-source Dijkstra sweep per
// subset seeded with the merge values, so no all-pairs matrix is ever built.
// Fully deterministic: merge ties pick the smallest submask, relaxation ties
// keep the earliest settled predecessor.
DstResult solve_dst(int num_vertices, std::span<const DstArc> arcs, int root,
                    std::span<const int> terminals, const DstLimits& limits = {},
                    DstTable* table_out = nullptr);

// Exhaustive arc-subset search, tie-broken to the lexicographically smallest
// arc-id set. Test oracle only; shares nothing with solve_dst.
DstResult dst_bruteforce(int num_vertices, std::span<const DstArc> arcs, int root,
                         std::span<const int> terminals);

}  // namespace slst
