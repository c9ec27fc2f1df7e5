#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slst/error.hpp"

namespace slst {

using Cost = std::int64_t;
using Delay = std::int64_t;

struct Edge {
  int tail = 0;
  int head = 0;
  Cost cost = 1;
  Delay delay = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A delay-bounded Steiner instance. Vertices are dense ids 0..vertex_count-1.
// Undirected instances keep one Edge per pair; algorithms expand them to two
// arcs. Terminal order is meaningful: it fixes subset-bitmask bit positions.
struct Instance {
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<int> terminals;
  int root = 0;
  Delay delay_bound = 1;
  bool directed = false;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Rooted tree as parent->child pairs over instance edges. For undirected
// instances each edge appears in the orientation the tree uses it.
struct SteinerTree {
  int root = 0;
  std::vector<std::pair<int, int>> edges;

  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

struct TreeEvaluation {
  Cost total_cost = 0;
  std::vector<Delay> delay_to;  // -1 where the vertex is not in the tree
  Delay max_terminal_delay = 0;
  bool feasible = true;
};

// Checks all instance invariants, dedups parallel edges (min cost, then min
// delay), canonicalizes undirected edge orientation and edge order, inserts
// the root into the terminal list when missing, and confirms every terminal
// is reachable from the root within delay_bound. Idempotent.
Instance validate_instance(const Instance& raw);

// Exact cost / per-vertex delay / feasibility of a candidate tree. Rejects
// edge sets that are not arborescences or that miss a terminal.
TreeEvaluation evaluate_tree(const Instance& inst, const SteinerTree& tree);

// Cheapest (cost, delay, edge id) for an oriented pair, honoring
// directedness; throws UnknownEdge. Shared by evaluation and embedding.
struct EdgeAttrs {
  Cost cost;
  Delay delay;
  int edge_id;
};
EdgeAttrs lookup_edge(const Instance& inst, int tail, int head);

}  // namespace slst
