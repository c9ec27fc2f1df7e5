#include "slst/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "slst/dst.hpp"
#include "slst/layer_graph.hpp"

namespace slst {

namespace {

std::int64_t floor_div(__int128 num, __int128 den) {
  assert(den > 0 && num >= 0);
  __int128 q = num / den;
  if (q > std::numeric_limits<std::int64_t>::max() / 2)
    throw Error(ErrorKind::CapExceeded, "scaled delay does not fit the delay type");
  return static_cast<std::int64_t>(q);
}

struct PipelineOut {
  SteinerTree tree;
  SolveStats stats;
  Cost h_cost = 0;
};

// Shared core of both solve paths: build H over `delays` at `bound`, find the
// optimal Steiner arborescence of the sinks, project, clean up.
PipelineOut run_pipeline(const Instance& inst, Delay bound, std::span<const Delay> delays,
                         const SolverLimits& limits) {
  PipelineOut out;
  LayerOptions lopts;
  lopts.vertex_budget = limits.h_vertex_budget;
  lopts.arc_budget = limits.h_arc_budget;
  LayeredGraph h = build_layered(inst, bound, delays, lopts);
  out.stats.h_vertices = h.num_vertices();
  out.stats.h_arcs = static_cast<std::int64_t>(h.arcs.size());
  out.stats.h_vertices_full = h.full_vertex_count;
  out.stats.h_arcs_full = h.full_arc_count;

  std::vector<DstArc> darcs;
  darcs.reserve(h.arcs.size());
  for (const LayeredArc& a : h.arcs) darcs.push_back({a.tail, a.head, a.cost});
  std::vector<int> sh = h.steiner_terminals();
  DstLimits dlim{limits.terminal_cap, limits.dp_state_budget};
  DstResult dst = solve_dst(h.num_vertices(), darcs, h.root, sh, dlim);
  out.stats.dp_states = dst.stats.states_touched;
  out.stats.dp_submask_pairs = dst.stats.submask_pairs;
  out.h_cost = dst.cost;

  std::vector<int> edge_ids = project_tree(h, dst.arc_ids, inst);
  out.tree = prune_to_tree(inst, edge_ids, delays, bound);
  return out;
}

void check_terminal_cap(const Instance& inst, const SolverLimits& limits) {
  if (static_cast<int>(inst.terminals.size()) > limits.terminal_cap)
    throw Error(ErrorKind::CapExceeded,
                std::to_string(inst.terminals.size()) + " terminals over the cap of " +
                    std::to_string(limits.terminal_cap));
}

}  // namespace

ScaledInstance scale_instance(const Instance& inst, const Rational& epsilon) {
  if (!epsilon.positive()) throw Error(ErrorKind::BadEpsilon, "epsilon must be > 0, got " + epsilon.str());
  ScaledInstance sc;
  sc.base = validate_instance(inst);
  sc.epsilon = epsilon;
  const __int128 n = sc.base.vertex_count;
  const __int128 p = epsilon.num;
  const __int128 q = epsilon.den;
  const __int128 d_bound = sc.base.delay_bound;
  sc.scaled_delays.reserve(sc.base.edges.size());
  for (const Edge& e : sc.base.edges)
    sc.scaled_delays.push_back(floor_div(n * e.delay * q, p * d_bound));
  sc.scaled_bound = floor_div(n * q, p);
  return sc;
}

SteinerTree prune_to_tree(const Instance& inst, std::span<const int> edge_ids) {
  std::vector<Delay> delays;
  delays.reserve(inst.edges.size());
  for (const Edge& e : inst.edges) delays.push_back(e.delay);
  return prune_to_tree(inst, edge_ids, delays, inst.delay_bound);
}

SteinerTree prune_to_tree(const Instance& inst, std::span<const int> edge_ids,
                          std::span<const Delay> delays, Delay bound) {
  struct SubArc {
    int head;
    Cost cost;
    Delay delay;
    int edge_id;
  };
  std::vector<std::vector<SubArc>> adj(inst.vertex_count);
  for (int id : edge_ids) {
    if (id < 0 || id >= static_cast<int>(inst.edges.size()))
      throw Error(ErrorKind::UnknownEdge, "edge id " + std::to_string(id) + " out of range");
    const Edge& e = inst.edges[static_cast<std::size_t>(id)];
    Delay d = delays.empty() ? e.delay : delays[static_cast<std::size_t>(id)];
    adj[e.tail].push_back({e.head, e.cost, d, id});
    if (!inst.directed) adj[e.head].push_back({e.tail, e.cost, d, id});
  }

  constexpr Delay kInf = std::numeric_limits<Delay>::max() / 4;
  std::vector<Delay> dist(inst.vertex_count, kInf);
  std::vector<Cost> dcost(inst.vertex_count, kInf);
  std::vector<int> parent(inst.vertex_count, -1);
  std::vector<int> parent_edge(inst.vertex_count, -1);
  using Item = std::tuple<Delay, Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[inst.root] = 0;
  dcost[inst.root] = 0;
  pq.push({0, 0, inst.root});
  while (!pq.empty()) {
    auto [d, c, u] = pq.top();
    pq.pop();
    if (d > dist[u] || (d == dist[u] && c > dcost[u])) continue;
    for (const SubArc& a : adj[u]) {
      Delay nd = d + a.delay;
      Cost nc = c + a.cost;
      if (nd < dist[a.head] || (nd == dist[a.head] && nc < dcost[a.head])) {
        dist[a.head] = nd;
        dcost[a.head] = nc;
        parent[a.head] = u;
        parent_edge[a.head] = a.edge_id;
        pq.push({nd, nc, a.head});
      }
    }
  }

  for (int t : inst.terminals) {
    if (dist[t] >= kInf)
      throw Error(ErrorKind::Disconnected,
                  "projection does not connect terminal " + std::to_string(t) + " (solver bug)", {t});
    if (dist[t] > bound)
      throw Error(ErrorKind::Disconnected,
                  "projection exceeds the delay bound at terminal " + std::to_string(t) + " (solver bug)",
                  {t});
  }

  // Keep exactly the union of root paths of the terminals; everything else
  // is a terminal-free branch.
  std::vector<char> keep(inst.vertex_count, 0);
  keep[inst.root] = 1;
  for (int t : inst.terminals) {
    int v = t;
    while (!keep[v]) {
      keep[v] = 1;
      v = parent[v];
    }
  }
  SteinerTree tree;
  tree.root = inst.root;
  for (int v = 0; v < inst.vertex_count; ++v)
    if (keep[v] && v != inst.root) tree.edges.push_back({parent[v], v});
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

SolveReport solve_exact(const Instance& raw, const SolverLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  Instance inst = validate_instance(raw);
  check_terminal_cap(inst, limits);

  std::vector<Delay> delays;
  delays.reserve(inst.edges.size());
  for (const Edge& e : inst.edges) delays.push_back(e.delay);

  PipelineOut out = run_pipeline(inst, inst.delay_bound, delays, limits);
  SolveReport rep;
  rep.tree = std::move(out.tree);
  rep.evaluation = evaluate_tree(inst, rep.tree);
  rep.mode = SolveMode::Exact;
  rep.delay_certificate = Rational(inst.delay_bound, 1);
  rep.stats = out.stats;
  assert(rep.evaluation.feasible);
  assert(rep.evaluation.total_cost <= out.h_cost);
  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SolveReport solve_approx(const Instance& raw, const Rational& epsilon, const SolverLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  if (!epsilon.positive()) throw Error(ErrorKind::BadEpsilon, "epsilon must be > 0, got " + epsilon.str());
  Instance inst = validate_instance(raw);
  check_terminal_cap(inst, limits);

  // epsilon > n would shrink the scaled bound to 0; solving with
  // min(epsilon, n) only strengthens both guarantees.
  Rational eff = epsilon;
  Rational n_rat(inst.vertex_count, 1);
  if (n_rat < eff) eff = n_rat;

  ScaledInstance sc = scale_instance(inst, eff);
  PipelineOut out = run_pipeline(sc.base, sc.scaled_bound, sc.scaled_delays, limits);

  SolveReport rep;
  rep.tree = std::move(out.tree);
  rep.evaluation = evaluate_tree(inst, rep.tree);
  rep.mode = SolveMode::Approx;
  rep.epsilon = epsilon;
  // (1+eps) * D, exactly.
  __int128 cert_num = (static_cast<__int128>(epsilon.num) + epsilon.den) * inst.delay_bound;
  if (cert_num > std::numeric_limits<std::int64_t>::max())
    throw Error(ErrorKind::CapExceeded, "delay certificate does not fit");
  rep.delay_certificate = Rational(static_cast<std::int64_t>(cert_num), epsilon.den);
  rep.stats = out.stats;
  assert(int_less_than(rep.evaluation.max_terminal_delay, rep.delay_certificate));
  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace slst
