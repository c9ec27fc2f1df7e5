#include "slst/dst.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <queue>
#include <set>
#include <string>

namespace slst {

namespace {

std::vector<int> terminal_universe(int num_vertices, int root, std::span<const int> terminals) {
  std::vector<char> seen(static_cast<std::size_t>(num_vertices), 0);
  std::vector<int> uni;
  for (int t : terminals) {
    if (t < 0 || t >= num_vertices)
      throw Error(ErrorKind::InvalidInstance, "terminal " + std::to_string(t) + " out of range");
    if (t == root || seen[static_cast<std::size_t>(t)]) continue;
    seen[static_cast<std::size_t>(t)] = 1;
    uni.push_back(t);
  }
  return uni;
}

// Turns a reachability subgraph into an arborescence: keep the first in-arc
// found by a root DFS (arc ids ascending), then drop branches that reach no
// terminal. Needed because with zero-cost arcs an optimal backtrace may
// collect overlapping branches; cost is unchanged at the optimum.
std::vector<int> canonical_arborescence(std::span<const DstArc> arcs, int num_vertices, int root,
                                        const std::set<int>& collected, std::span<const int> required) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(num_vertices));
  for (int id : collected) out[static_cast<std::size_t>(arcs[static_cast<std::size_t>(id)].tail)].push_back(id);

  std::vector<int> in_arc(static_cast<std::size_t>(num_vertices), -1);
  std::vector<char> visited(static_cast<std::size_t>(num_vertices), 0);
  visited[static_cast<std::size_t>(root)] = 1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int id : out[static_cast<std::size_t>(u)]) {
      int v = arcs[static_cast<std::size_t>(id)].head;
      if (!visited[static_cast<std::size_t>(v)]) {
        visited[static_cast<std::size_t>(v)] = 1;
        in_arc[static_cast<std::size_t>(v)] = id;
        stack.push_back(v);
      }
    }
  }

  std::vector<char> keep(static_cast<std::size_t>(num_vertices), 0);
  keep[static_cast<std::size_t>(root)] = 1;
  for (int t : required) {
    int v = t;
    while (v != root && !keep[static_cast<std::size_t>(v)]) {
      keep[static_cast<std::size_t>(v)] = 1;
      assert(in_arc[static_cast<std::size_t>(v)] >= 0);
      v = arcs[static_cast<std::size_t>(in_arc[static_cast<std::size_t>(v)])].tail;
    }
  }
  std::vector<int> result;
  for (int v = 0; v < num_vertices; ++v)
    if (keep[static_cast<std::size_t>(v)] && v != root && in_arc[static_cast<std::size_t>(v)] >= 0)
      result.push_back(in_arc[static_cast<std::size_t>(v)]);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

DstResult solve_dst(int num_vertices, std::span<const DstArc> arcs, int root,
                    std::span<const int> terminals, const DstLimits& limits, DstTable* table_out) {
  if (root < 0 || root >= num_vertices)
    throw Error(ErrorKind::InvalidRoot, "root " + std::to_string(root) + " out of range");
  for (const DstArc& a : arcs)
    if (a.cost < 0) throw Error(ErrorKind::NonPositiveWeight, "negative arc cost");

  std::vector<int> uni = terminal_universe(num_vertices, root, terminals);
  const int k = static_cast<int>(uni.size());
  DstResult result;
  if (k == 0) return result;
  if (k > limits.terminal_cap)
    throw Error(ErrorKind::CapExceeded, std::to_string(k) + " terminals over the cap of " +
                                            std::to_string(limits.terminal_cap));
  const std::uint32_t full = (1u << k) - 1;
  const std::uint64_t cells = (static_cast<std::uint64_t>(full) + 1) * static_cast<std::uint64_t>(num_vertices);
  if (cells > limits.state_budget)
    throw Error(ErrorKind::CapExceeded, "DP needs " + std::to_string(cells) + " states, budget is " +
                                            std::to_string(limits.state_budget));

  // In-adjacency, arc ids ascending per head: relaxing from a settled vertex
  // u improves its predecessors.
  std::vector<std::vector<int>> in_arcs(static_cast<std::size_t>(num_vertices));
  for (int id = 0; id < static_cast<int>(arcs.size()); ++id)
    in_arcs[static_cast<std::size_t>(arcs[static_cast<std::size_t>(id)].head)].push_back(id);

  std::vector<std::vector<std::int64_t>> dp(full + 1);
  std::vector<std::vector<DstBack>> back(full + 1);

  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  std::vector<char> settled(static_cast<std::size_t>(num_vertices));

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto& cur = dp[mask];
    auto& curb = back[mask];
    cur.assign(static_cast<std::size_t>(num_vertices), kDstInf);
    curb.assign(static_cast<std::size_t>(num_vertices), DstBack{});

    if (std::popcount(mask) == 1) {
      cur[static_cast<std::size_t>(uni[static_cast<std::size_t>(std::countr_zero(mask))])] = 0;
    } else {
      // Merge phase. Submasks are enumerated descending, and ties replace,
      // so the smallest minimizing submask is the one recorded.
      for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
        ++result.stats.submask_pairs;
        const auto& lo = dp[sub];
        const auto& hi = dp[mask ^ sub];
        for (int v = 0; v < num_vertices; ++v) {
          if (lo[static_cast<std::size_t>(v)] >= kDstInf || hi[static_cast<std::size_t>(v)] >= kDstInf)
            continue;
          std::int64_t cand = lo[static_cast<std::size_t>(v)] + hi[static_cast<std::size_t>(v)];
          if (cand <= cur[static_cast<std::size_t>(v)]) {
            cur[static_cast<std::size_t>(v)] = cand;
            curb[static_cast<std::size_t>(v)] = {sub, -1};
          }
        }
      }
    }

    // Relaxation sweep: cur[v] = min over u of dist(v -> u) + merged[u].
    std::fill(settled.begin(), settled.end(), 0);
    for (int v = 0; v < num_vertices; ++v)
      if (cur[static_cast<std::size_t>(v)] < kDstInf) pq.push({cur[static_cast<std::size_t>(v)], v});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (settled[static_cast<std::size_t>(u)] || d > cur[static_cast<std::size_t>(u)]) continue;
      settled[static_cast<std::size_t>(u)] = 1;
      ++result.stats.relax_pops;
      for (int id : in_arcs[static_cast<std::size_t>(u)]) {
        const DstArc& a = arcs[static_cast<std::size_t>(id)];
        std::int64_t cand = d + a.cost;
        if (cand < cur[static_cast<std::size_t>(a.tail)]) {
          cur[static_cast<std::size_t>(a.tail)] = cand;
          curb[static_cast<std::size_t>(a.tail)] = {0, id};
          pq.push({cand, a.tail});
        }
      }
    }

    for (int v = 0; v < num_vertices; ++v)
      if (cur[static_cast<std::size_t>(v)] < kDstInf) ++result.stats.states_touched;

    if (std::popcount(mask) == 1 && cur[static_cast<std::size_t>(root)] >= kDstInf) {
      int t = uni[static_cast<std::size_t>(std::countr_zero(mask))];
      throw Error(ErrorKind::Infeasible, "terminal " + std::to_string(t) + " unreachable from the root", {t});
    }
  }

  if (dp[full][static_cast<std::size_t>(root)] >= kDstInf)
    throw Error(ErrorKind::Infeasible, "no arborescence covers all terminals");
  result.cost = dp[full][static_cast<std::size_t>(root)];

  // Walk the backtrace. Merge entries fork the mask at a fixed vertex;
  // extend entries follow one arc with the mask unchanged.
  std::set<int> collected;
  std::vector<std::pair<std::uint32_t, int>> work{{full, root}};
  while (!work.empty()) {
    auto [mask, v] = work.back();
    work.pop_back();
    const DstBack& b = back[mask][static_cast<std::size_t>(v)];
    if (b.extend_arc >= 0) {
      collected.insert(b.extend_arc);
      work.push_back({mask, arcs[static_cast<std::size_t>(b.extend_arc)].head});
    } else if (b.merge_submask) {
      work.push_back({b.merge_submask, v});
      work.push_back({mask ^ b.merge_submask, v});
    } else {
      assert(std::popcount(mask) == 1 && uni[static_cast<std::size_t>(std::countr_zero(mask))] == v);
    }
  }

  result.arc_ids = canonical_arborescence(arcs, num_vertices, root, collected, uni);
  std::int64_t rebuilt = 0;
  for (int id : result.arc_ids) rebuilt += arcs[static_cast<std::size_t>(id)].cost;
  assert(rebuilt == result.cost);
  (void)rebuilt;

  if (table_out) {
    table_out->terminal_order = uni;
    table_out->cost = std::move(dp);
    table_out->back = std::move(back);
  }
  return result;
}

DstResult dst_bruteforce(int num_vertices, std::span<const DstArc> arcs, int root,
                         std::span<const int> terminals) {
  if (arcs.size() > 20)
    throw Error(ErrorKind::TooLarge, "brute force handles at most 20 arcs, got " +
                                         std::to_string(arcs.size()));
  std::vector<int> uni = terminal_universe(num_vertices, root, terminals);
  DstResult best;
  if (uni.empty()) return best;

  const std::uint32_t subsets = 1u << arcs.size();
  std::int64_t best_cost = kDstInf;
  std::vector<int> best_ids;
  std::vector<int> indeg(static_cast<std::size_t>(num_vertices));
  std::vector<char> visited(static_cast<std::size_t>(num_vertices));
  for (std::uint32_t sub = 0; sub < subsets; ++sub) {
    std::fill(indeg.begin(), indeg.end(), 0);
    std::fill(visited.begin(), visited.end(), 0);
    std::int64_t cost = 0;
    bool ok = true;
    for (std::uint32_t b = sub; b && ok; b &= b - 1) {
      const DstArc& a = arcs[static_cast<std::size_t>(std::countr_zero(b))];
      if (a.head == root || ++indeg[static_cast<std::size_t>(a.head)] > 1) ok = false;
      cost += a.cost;
    }
    if (!ok || cost > best_cost) continue;

    visited[static_cast<std::size_t>(root)] = 1;
    bool grew = true;  // tiny inputs; repeated sweeps beat building adjacency
    while (grew) {
      grew = false;
      for (std::uint32_t b = sub; b; b &= b - 1) {
        const DstArc& a = arcs[static_cast<std::size_t>(std::countr_zero(b))];
        if (visited[static_cast<std::size_t>(a.tail)] && !visited[static_cast<std::size_t>(a.head)]) {
          visited[static_cast<std::size_t>(a.head)] = 1;
          grew = true;
        }
      }
    }
    for (std::uint32_t b = sub; b && ok; b &= b - 1) {
      const DstArc& a = arcs[static_cast<std::size_t>(std::countr_zero(b))];
      if (!visited[static_cast<std::size_t>(a.tail)]) ok = false;  // floating arc
    }
    for (int t : uni)
      if (!visited[static_cast<std::size_t>(t)]) ok = false;
    if (!ok) continue;

    std::vector<int> ids;
    for (std::uint32_t b = sub; b; b &= b - 1) ids.push_back(std::countr_zero(b));
    if (cost < best_cost || (cost == best_cost && ids < best_ids)) {
      best_cost = cost;
      best_ids = std::move(ids);
    }
  }
  if (best_cost >= kDstInf) throw Error(ErrorKind::Infeasible, "no arborescence covers all terminals");
  best.cost = best_cost;
  best.arc_ids = std::move(best_ids);
  return best;
}

}  // namespace slst
