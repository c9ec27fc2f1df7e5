#include "slst/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <string>

namespace slst {

namespace {

std::string edge_str(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

// Delay-weighted shortest distances from root, ignoring cost. Used as the
// feasibility oracle: a terminal has a D-feasible tree path iff its shortest
// delay is <= D.
std::vector<Delay> delay_dist_from_root(const Instance& inst) {
  constexpr Delay kInf = std::numeric_limits<Delay>::max();
  std::vector<std::vector<std::pair<int, Delay>>> adj(inst.vertex_count);
  for (const Edge& e : inst.edges) {
    adj[e.tail].push_back({e.head, e.delay});
    if (!inst.directed) adj[e.head].push_back({e.tail, e.delay});
  }
  std::vector<Delay> dist(inst.vertex_count, kInf);
  using Item = std::pair<Delay, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[inst.root] = 0;
  pq.push({0, inst.root});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

}  // namespace

Instance validate_instance(const Instance& raw) {
  Instance inst = raw;
  if (inst.vertex_count < 1)
    throw Error(ErrorKind::InvalidInstance, "vertex count must be >= 1");
  if (inst.root < 0 || inst.root >= inst.vertex_count)
    throw Error(ErrorKind::InvalidRoot, "root " + std::to_string(inst.root) + " out of range");
  if (inst.delay_bound < 1)
    throw Error(ErrorKind::NonPositiveWeight, "delay bound must be >= 1");

  // Terminals: in range, duplicates dropped (first occurrence wins), root
  // inserted at the front when missing.
  std::vector<int> terms;
  std::vector<char> seen(inst.vertex_count, 0);
  for (int t : inst.terminals) {
    if (t < 0 || t >= inst.vertex_count)
      throw Error(ErrorKind::InvalidInstance, "terminal " + std::to_string(t) + " out of range");
    if (!seen[t]) {
      seen[t] = 1;
      terms.push_back(t);
    }
  }
  if (!seen[inst.root]) terms.insert(terms.begin(), inst.root);
  inst.terminals = std::move(terms);

  // weights above 1e12 would let path sums overflow 64-bit accumulation
  constexpr std::int64_t kWeightCap = 1'000'000'000'000;
  for (const Edge& e : inst.edges) {
    if (e.tail < 0 || e.tail >= inst.vertex_count || e.head < 0 || e.head >= inst.vertex_count)
      throw Error(ErrorKind::InvalidInstance, "edge endpoint out of range " + edge_str(e.tail, e.head));
    if (e.tail == e.head)
      throw Error(ErrorKind::InvalidInstance, "self-loop at " + std::to_string(e.tail));
    if (e.cost < 1 || e.delay < 1)
      throw Error(ErrorKind::NonPositiveWeight, "edge " + edge_str(e.tail, e.head) + " needs cost >= 1 and delay >= 1");
    if (e.cost > kWeightCap || e.delay > kWeightCap)
      throw Error(ErrorKind::CapExceeded, "edge " + edge_str(e.tail, e.head) + " weight above 1e12");
  }

  // Parallel-edge dominance: keep the min-cost, then min-delay edge per
  // (pair, direction). Undirected edges get a canonical tail < head.
  std::map<std::pair<int, int>, Edge> best;
  for (Edge e : inst.edges) {
    if (!inst.directed && e.tail > e.head) std::swap(e.tail, e.head);
    auto key = std::make_pair(e.tail, e.head);
    auto it = best.find(key);
    if (it == best.end() || e.cost < it->second.cost ||
        (e.cost == it->second.cost && e.delay < it->second.delay)) {
      best[key] = e;
    }
  }
  inst.edges.clear();
  inst.edges.reserve(best.size());
  for (auto& [key, e] : best) inst.edges.push_back(e);

  auto dist = delay_dist_from_root(inst);
  std::vector<int> unreachable;
  for (int t : inst.terminals)
    if (dist[t] > inst.delay_bound) unreachable.push_back(t);
  if (!unreachable.empty()) {
    std::string msg = "terminals not reachable within the delay bound:";
    for (int t : unreachable) msg += " " + std::to_string(t);
    throw Error(ErrorKind::Infeasible, msg, unreachable);
  }
  return inst;
}

EdgeAttrs lookup_edge(const Instance& inst, int tail, int head) {
  EdgeAttrs found{0, 0, -1};
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i) {
    const Edge& e = inst.edges[i];
    bool match = (e.tail == tail && e.head == head) ||
                 (!inst.directed && e.tail == head && e.head == tail);
    if (!match) continue;
    if (found.edge_id < 0 || e.cost < found.cost ||
        (e.cost == found.cost && e.delay < found.delay)) {
      found = {e.cost, e.delay, i};
    }
  }
  if (found.edge_id < 0)
    throw Error(ErrorKind::UnknownEdge, "edge " + edge_str(tail, head) + " not in instance");
  return found;
}

TreeEvaluation evaluate_tree(const Instance& inst, const SteinerTree& tree) {
  if (tree.root != inst.root)
    throw Error(ErrorKind::NotATree, "tree rooted at " + std::to_string(tree.root) +
                                         ", instance root is " + std::to_string(inst.root));

  std::vector<std::vector<std::pair<int, int>>> children(inst.vertex_count);  // (child, tree edge idx)
  std::vector<int> indeg(inst.vertex_count, 0);
  std::vector<EdgeAttrs> attrs;
  attrs.reserve(tree.edges.size());
  for (int i = 0; i < static_cast<int>(tree.edges.size()); ++i) {
    auto [u, v] = tree.edges[i];
    if (u < 0 || u >= inst.vertex_count || v < 0 || v >= inst.vertex_count)
      throw Error(ErrorKind::UnknownEdge, "edge " + edge_str(u, v) + " not in instance");
    attrs.push_back(lookup_edge(inst, u, v));
    if (v == inst.root) throw Error(ErrorKind::NotATree, "edge enters the root " + edge_str(u, v));
    if (++indeg[v] > 1)
      throw Error(ErrorKind::NotATree, "vertex " + std::to_string(v) + " has two incoming tree edges");
    children[u].push_back({v, i});
  }

  TreeEvaluation ev;
  ev.delay_to.assign(inst.vertex_count, -1);
  ev.delay_to[inst.root] = 0;
  std::vector<int> stack{inst.root};
  std::size_t edges_reached = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, idx] : children[u]) {
      ++edges_reached;
      ev.delay_to[v] = ev.delay_to[u] + attrs[idx].delay;
      ev.total_cost += attrs[idx].cost;
      stack.push_back(v);
    }
  }
  if (edges_reached != tree.edges.size())
    throw Error(ErrorKind::NotATree, "edge set is disconnected from the root or cyclic");

  std::vector<int> missing;
  for (int t : inst.terminals)
    if (ev.delay_to[t] < 0) missing.push_back(t);
  if (!missing.empty())
    throw Error(ErrorKind::MissingTerminal, "terminal " + std::to_string(missing.front()) + " not in tree",
                missing);

  ev.max_terminal_delay = 0;
  for (int t : inst.terminals) ev.max_terminal_delay = std::max(ev.max_terminal_delay, ev.delay_to[t]);
  ev.feasible = ev.max_terminal_delay <= inst.delay_bound;
  return ev;
}

}  // namespace slst
