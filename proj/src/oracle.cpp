#include "slst/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

namespace slst {

namespace {

void check_caps(const Instance& inst, const OracleLimits& limits) {
  if (inst.vertex_count > limits.max_vertices)
    throw Error(ErrorKind::TooLarge, "oracle handles at most " + std::to_string(limits.max_vertices) +
                                         " vertices, got " + std::to_string(inst.vertex_count));
  if (static_cast<int>(inst.edges.size()) > limits.max_edges)
    throw Error(ErrorKind::TooLarge, "oracle handles at most " + std::to_string(limits.max_edges) +
                                         " edges, got " + std::to_string(inst.edges.size()));
}

struct Candidate {
  SteinerTree tree;
  Cost cost = 0;
  Delay max_vertex_delay = 0;
  Delay max_terminal_delay = 0;
  std::vector<int> edge_ids;
};

// Orients a candidate edge subset away from the root and checks tree-ness.
// Directed subsets must already be arborescences; undirected subsets must be
// a connected acyclic set hanging off the root.
bool subset_to_tree(const Instance& inst, std::uint32_t sub, Candidate& out) {
  const int n = inst.vertex_count;
  std::vector<int> ids;
  for (std::uint32_t b = sub; b; b &= b - 1) ids.push_back(std::countr_zero(b));

  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other endpoint, edge id)
  for (int id : ids) {
    const Edge& e = inst.edges[static_cast<std::size_t>(id)];
    adj[e.tail].push_back({e.head, id});
    if (!inst.directed) adj[e.head].push_back({e.tail, id});
  }

  constexpr Delay kUnset = -1;
  std::vector<Delay> delay_to(n, kUnset);
  std::vector<char> edge_used(inst.edges.size(), 0);
  out.tree = SteinerTree{inst.root, {}};
  out.cost = 0;
  out.max_vertex_delay = 0;
  delay_to[inst.root] = 0;
  std::vector<int> stack{inst.root};
  std::size_t used = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, id] : adj[u]) {
      if (edge_used[static_cast<std::size_t>(id)]) continue;
      if (delay_to[v] != kUnset) return false;  // second path into v, or a cycle
      const Edge& e = inst.edges[static_cast<std::size_t>(id)];
      edge_used[static_cast<std::size_t>(id)] = 1;
      ++used;
      delay_to[v] = delay_to[u] + e.delay;
      out.max_vertex_delay = std::max(out.max_vertex_delay, delay_to[v]);
      out.cost += e.cost;
      out.tree.edges.push_back({u, v});
      stack.push_back(v);
    }
  }
  if (used != ids.size()) return false;  // some edge never reached from the root

  out.max_terminal_delay = 0;
  for (int t : inst.terminals) {
    if (delay_to[t] == kUnset) return false;
    out.max_terminal_delay = std::max(out.max_terminal_delay, delay_to[t]);
  }
  std::sort(out.tree.edges.begin(), out.tree.edges.end());
  out.edge_ids = std::move(ids);
  return true;
}

}  // namespace

std::pair<SteinerTree, Cost> slst_bruteforce(const Instance& raw, const OracleLimits& limits) {
  Instance inst = validate_instance(raw);
  check_caps(inst, limits);

  const std::uint32_t subsets = 1u << inst.edges.size();
  Cost best_cost = std::numeric_limits<Cost>::max();
  std::vector<int> best_ids;
  SteinerTree best_tree{inst.root, {}};
  bool found = false;
  Candidate cand;
  for (std::uint32_t sub = 0; sub < subsets; ++sub) {
    if (!subset_to_tree(inst, sub, cand)) continue;
    if (cand.max_terminal_delay > inst.delay_bound) continue;
    if (cand.cost < best_cost || (cand.cost == best_cost && cand.edge_ids < best_ids)) {
      best_cost = cand.cost;
      best_ids = cand.edge_ids;
      best_tree = cand.tree;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::Infeasible, "no tree meets the delay bound");
  return {best_tree, best_cost};
}

std::vector<SteinerTree> enumerate_feasible_trees(const Instance& raw, std::size_t limit,
                                                  const OracleLimits& limits) {
  Instance inst;
  try {
    inst = validate_instance(raw);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Infeasible) return {};  // no feasible tree exists at all
    throw;
  }
  check_caps(inst, limits);

  std::vector<SteinerTree> out;
  const std::uint32_t subsets = 1u << inst.edges.size();
  Candidate cand;
  for (std::uint32_t sub = 0; sub < subsets && out.size() < limit; ++sub) {
    if (!subset_to_tree(inst, sub, cand)) continue;
    // Every vertex within the bound, so each tree also lifts into H.
    if (cand.max_vertex_delay > inst.delay_bound) continue;
    out.push_back(cand.tree);
  }
  return out;
}

}  // namespace slst
