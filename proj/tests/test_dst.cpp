#include <algorithm>
#include <numeric>
#include <queue>

#include "doctest.h"
#include "helpers.hpp"
#include "slst/bench.hpp"
#include "slst/dst.hpp"

using namespace slst;

namespace {

struct RandomDigraph {
  int n = 0;
  std::vector<DstArc> arcs;
  std::vector<int> terminals;
};

RandomDigraph random_digraph(Rng& rng) {
  RandomDigraph g;
  g.n = static_cast<int>(rng.range(2, 8));
  int m = static_cast<int>(rng.range(1, 14));
  if (rng.below(2) == 0) {
    // plant connectivity half the time, so both outcomes are exercised
    for (int v = 1; v < g.n && static_cast<int>(g.arcs.size()) < m; ++v)
      g.arcs.push_back({static_cast<int>(rng.below(v)), v, rng.range(1, 9)});
  }
  int draws = m - static_cast<int>(g.arcs.size());
  for (int i = 0; i < draws; ++i) {
    int u = static_cast<int>(rng.below(g.n));
    int v = static_cast<int>(rng.below(g.n));
    if (u == v) continue;
    g.arcs.push_back({u, v, rng.range(1, 9)});
  }
  int k = static_cast<int>(rng.range(1, std::min(4, g.n - 1)));
  for (int i = 0; i < k; ++i) g.terminals.push_back(1 + static_cast<int>(rng.below(g.n - 1)));
  return g;
}

// Structural arborescence check, independent of the solver internals.
bool is_arborescence(const RandomDigraph& g, const std::vector<int>& arc_ids) {
  std::vector<int> indeg(g.n, 0);
  std::vector<std::vector<int>> out(g.n);
  for (int id : arc_ids) {
    const DstArc& a = g.arcs[id];
    if (a.head == 0) return false;
    if (++indeg[a.head] > 1) return false;
    out[a.tail].push_back(a.head);
  }
  std::vector<char> vis(g.n, 0);
  vis[0] = 1;
  std::vector<int> stack{0};
  int reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : out[u])
      if (!vis[v]) {
        vis[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  if (reached != static_cast<int>(arc_ids.size())) return false;
  for (int t : g.terminals)
    if (!vis[t] && t != 0) return false;
  return true;
}

std::vector<std::int64_t> dijkstra_from(const RandomDigraph& g, int src) {
  std::vector<std::int64_t> dist(g.n, kDstInf);
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(g.n);
  for (const DstArc& a : g.arcs) adj[a.tail].push_back({a.head, a.cost});
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
  }
  return dist;
}

}  // namespace

TEST_CASE("two-hop path beats the direct arc") {
  std::vector<DstArc> arcs{{0, 1, 1}, {1, 2, 1}, {0, 2, 3}};
  std::vector<int> terms{2};
  DstResult r = solve_dst(3, arcs, 0, terms);
  CHECK(r.cost == 2);
  CHECK(r.arc_ids == std::vector<int>{0, 1});
  DstResult b = dst_bruteforce(3, arcs, 0, terms);
  CHECK(b.cost == 2);
}

TEST_CASE("root-only terminal set solves to the empty tree") {
  std::vector<DstArc> arcs{{0, 1, 1}};
  std::vector<int> terms{0};
  DstResult r = solve_dst(2, arcs, 0, terms);
  CHECK(r.cost == 0);
  CHECK(r.arc_ids.empty());
  CHECK(dst_bruteforce(2, arcs, 0, terms).cost == 0);
}

TEST_CASE("star digraph needs all three spokes") {
  std::vector<DstArc> arcs{{0, 1, 1}, {0, 2, 2}, {0, 3, 3}};
  std::vector<int> terms{1, 2, 3};
  DstResult r = solve_dst(4, arcs, 0, terms);
  CHECK(r.cost == 6);
  CHECK(r.arc_ids == std::vector<int>{0, 1, 2});
  CHECK(dst_bruteforce(4, arcs, 0, terms).cost == 6);
}

TEST_CASE("unreachable terminal is infeasible and named") {
  std::vector<DstArc> arcs{{0, 1, 1}};
  std::vector<int> terms{2};
  try {
    solve_dst(3, arcs, 0, terms);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
    CHECK(e.vertices() == std::vector<int>{2});
  }
  CHECK_THROWS_AS(dst_bruteforce(3, arcs, 0, terms), Error);
}

TEST_CASE("terminal cap is enforced") {
  std::vector<DstArc> arcs{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  std::vector<int> terms{1, 2, 3};
  DstLimits limits;
  limits.terminal_cap = 2;
  try {
    solve_dst(4, arcs, 0, terms, limits);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("state budget is enforced") {
  std::vector<DstArc> arcs{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  std::vector<int> terms{1, 2, 3};
  DstLimits limits;
  limits.state_budget = 8;  // needs 2^3 * 4 = 32 cells
  try {
    solve_dst(4, arcs, 0, terms, limits);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("bruteforce refuses oversized inputs") {
  std::vector<DstArc> arcs(21, DstArc{0, 1, 1});
  try {
    dst_bruteforce(2, arcs, 0, std::vector<int>{1});
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("zero-cost arcs are handled") {
  std::vector<DstArc> arcs{{0, 1, 0}, {1, 2, 0}, {2, 1, 0}, {1, 3, 5}};
  std::vector<int> terms{3};
  DstResult r = solve_dst(4, arcs, 0, terms);
  CHECK(r.cost == 5);
  CHECK(dst_bruteforce(4, arcs, 0, terms).cost == 5);
}

TEST_CASE("matches the brute force on random digraphs") {
  Rng rng(61);
  int solved = 0;
  for (int i = 0; i < 150; ++i) {
    RandomDigraph g = random_digraph(rng);
    DstResult fast, slow;
    bool fast_ok = true, slow_ok = true;
    try {
      fast = solve_dst(g.n, g.arcs, 0, g.terminals);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Infeasible);
      fast_ok = false;
    }
    try {
      slow = dst_bruteforce(g.n, g.arcs, 0, g.terminals);
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::Infeasible);
      slow_ok = false;
    }
    REQUIRE(fast_ok == slow_ok);
    if (!fast_ok) continue;
    CHECK(fast.cost == slow.cost);
    CHECK(is_arborescence(g, fast.arc_ids));

    // optimum can never undercut the best single terminal distance
    auto dist = dijkstra_from(g, 0);
    std::int64_t lb = 0;
    for (int t : g.terminals) lb = std::max(lb, dist[t]);
    CHECK(fast.cost >= lb);
    ++solved;
  }
  CHECK(solved > 30);
}

TEST_CASE("identical inputs yield identical outputs") {
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    RandomDigraph g = random_digraph(rng);
    DstResult a, b;
    bool ok = true;
    try {
      a = solve_dst(g.n, g.arcs, 0, g.terminals);
      b = solve_dst(g.n, g.arcs, 0, g.terminals);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) continue;
    CHECK(a.arc_ids == b.arc_ids);
    CHECK(a.cost == b.cost);
    CHECK(a.stats.submask_pairs == b.stats.submask_pairs);
  }
}

TEST_CASE("table invariants: singleton base and union monotonicity") {
  Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    RandomDigraph g = random_digraph(rng);
    DstTable table;
    try {
      solve_dst(g.n, g.arcs, 0, g.terminals, DstLimits{}, &table);
    } catch (const Error&) {
      continue;
    }
    const int k = static_cast<int>(table.terminal_order.size());
    for (int b = 0; b < k; ++b) {
      std::uint32_t mask = 1u << b;
      CHECK(table.cost[mask][table.terminal_order[b]] == 0);
    }
    const std::uint32_t full = (1u << k) - 1;
    for (int s = 0; s < 30; ++s) {
      std::uint32_t x = static_cast<std::uint32_t>(rng.below(full + 1));
      std::uint32_t y = static_cast<std::uint32_t>(rng.below(full + 1)) & ~x;
      if (!x || !y) continue;
      int v = static_cast<int>(rng.below(g.n));
      if (table.cost[x][v] >= kDstInf || table.cost[y][v] >= kDstInf) continue;
      CHECK(table.cost[x | y][v] <= table.cost[x][v] + table.cost[y][v]);
    }
  }
}

TEST_CASE("soft benchmark: adding a terminal costs at most ~4x wall time") {
  // warn-only; timing noise must never fail the suite
  BenchParams bp;
  bp.t_lo = 5;
  bp.t_hi = 9;
  bp.trials = 3;
  bp.seed = 99;
  bp.nodes = 24;
  bp.edges = 70;
  bp.bound = 12;
  bp.max_delay = 3;
  auto rows = run_bench(bp);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double prev = rows[i - 1].median_ms + 0.25;  // floor out sub-ms noise
    double curr = rows[i].median_ms;
    WARN_MESSAGE(curr <= 4 * prev, "median wall time grew over 4x from t=" << rows[i - 1].t << " to t="
                                                                           << rows[i].t);
  }
}
