#include "slst/generator.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace slst {

Instance generate_instance(const GenParams& p) {
  if (p.nodes < 1) throw Error(ErrorKind::UnsatisfiableParams, "need at least one node");
  if (p.terminals < 1 || p.terminals > p.nodes)
    throw Error(ErrorKind::UnsatisfiableParams,
                "terminals must be in [1, nodes], got " + std::to_string(p.terminals));
  if (p.max_cost < 1 || p.max_delay < 1 || p.bound < 1)
    throw Error(ErrorKind::UnsatisfiableParams, "max-cost, max-delay and bound must be >= 1");
  if (p.edges < 0) throw Error(ErrorKind::UnsatisfiableParams, "edges must be >= 0");
  if (p.ensure_feasible && p.edges < p.nodes - 1)
    throw Error(ErrorKind::UnsatisfiableParams, "ensure-feasible needs edges >= nodes-1");

  Rng rng(p.seed);
  Instance inst;
  inst.vertex_count = p.nodes;
  inst.root = 0;
  inst.delay_bound = p.bound;
  inst.directed = p.directed;

  std::set<std::pair<int, int>> used;
  auto key_of = [&](int u, int v) {
    return (p.directed || u < v) ? std::make_pair(u, v) : std::make_pair(v, u);
  };
  auto mark_used = [&](int u, int v) { used.insert(key_of(u, v)); };
  auto is_used = [&](int u, int v) { return used.count(key_of(u, v)) > 0; };

  if (p.ensure_feasible && p.nodes > 1) {
    // Attach vertices in random order to parents whose root-path delay still
    // leaves room for one more edge.
    std::vector<int> order;
    for (int v = 1; v < p.nodes; ++v) order.push_back(v);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<Delay> path_delay(p.nodes, -1);
    path_delay[0] = 0;
    std::vector<int> attachable{0};
    for (int v : order) {
      int parent = attachable[rng.below(attachable.size())];
      Delay room = p.bound - path_delay[parent];
      Delay d = rng.range(1, std::min<Delay>(p.max_delay, room));
      inst.edges.push_back({parent, v, rng.range(1, p.max_cost), d});
      mark_used(parent, v);
      path_delay[v] = path_delay[parent] + d;
      if (path_delay[v] < p.bound) attachable.push_back(v);
    }
  }

  int extras = p.edges - static_cast<int>(inst.edges.size());
  int attempts = 0;
  while (extras > 0 && p.nodes > 1 && attempts < 50 * p.edges + 100) {
    ++attempts;
    int u = static_cast<int>(rng.below(p.nodes));
    int v = static_cast<int>(rng.below(p.nodes));
    if (u == v || is_used(u, v)) continue;
    inst.edges.push_back({u, v, rng.range(1, p.max_cost), rng.range(1, p.max_delay)});
    mark_used(u, v);
    --extras;
  }

  inst.terminals.push_back(0);
  std::vector<int> pool;
  for (int v = 1; v < p.nodes; ++v) pool.push_back(v);
  for (int i = 0; i < p.terminals - 1; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    inst.terminals.push_back(pool[i]);
  }
  return inst;
}

}  // namespace slst
