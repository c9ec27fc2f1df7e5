#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slst/instance.hpp"

namespace slst {

struct LayerVertex {
  enum class Kind : std::uint8_t { Root, Copy, Sink };
  Kind kind = Kind::Root;
  int original = 0;  // source vertex for Copy, terminal for Sink
  Delay layer = 0;   // Copy only; 0 is reserved for delay-0 arcs out of the root

  friend bool operator==(const LayerVertex&, const LayerVertex&) = default;
};

struct LayeredArc {
  int tail = 0;
  int head = 0;
  Cost cost = 0;
  int origin = -1;  // instance edge id; -1 for the zero-cost terminal connectors
};

// The auxiliary layered digraph: one Copy of every non-root vertex per layer
// (layer index = accumulated delay from the root), a Sink per non-root
// terminal reachable by zero-cost connectors from every layer, and arcs that
// advance the layer by the edge delay. Delay-0 construction delays (scaled
// instances) add layer-0 copies for vertices reachable from the root at
// accumulated delay 0; such arcs may create same-layer cycles, which the
// Steiner solver tolerates.
struct LayeredGraph {
  Delay layer_bound = 0;
  std::vector<LayerVertex> vertices;
  std::vector<LayeredArc> arcs;
  int root = 0;
  std::vector<std::pair<int, int>> terminal_sinks;  // (terminal id, vertex index), non-root terminals in order

  // Counts before unreachable-copy pruning; the size invariants hold on these.
  std::int64_t full_vertex_count = 0;
  std::int64_t full_arc_count = 0;
  bool pruned = false;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int find_copy(int vertex, Delay layer) const;  // -1 when absent (pruned or never built)
  int find_sink(int terminal) const;
  std::vector<int> steiner_terminals() const;  // root plus all sinks

  std::vector<std::vector<std::pair<Delay, int>>> copy_index_;  // per vertex, sorted by layer
};

struct LayerOptions {
  bool prune_unreachable = true;
  std::int64_t vertex_budget = 2'000'000;
  std::int64_t arc_budget = 20'000'000;
};

LayeredGraph build_layered(const Instance& inst, Delay bound, const LayerOptions& opts = {});

// Same construction with per-edge delay overrides (the scaled instances of
// the approximation path; overrides may be 0).
LayeredGraph build_layered(const Instance& inst, Delay bound, std::span<const Delay> delays,
                           const LayerOptions& opts = {});

// H -> G: origin edges of the non-connector arcs, deduplicated and sorted.
std::vector<int> project_tree(const LayeredGraph& h, std::span<const int> arc_ids, const Instance& inst);

// G -> H: lifts a feasible tree into H, one copy-arc per tree edge at its
// accumulated delay plus a connector per non-root terminal. Preserves cost.
// `delays` must match the delays H was built with (empty = instance delays).
std::vector<int> embed_tree(const Instance& inst, const SteinerTree& tree, const LayeredGraph& h,
                            std::span<const Delay> delays = {});

std::optional<std::vector<int>> topological_order(const LayeredGraph& h);
Cost arcs_cost(const LayeredGraph& h, std::span<const int> arc_ids);
std::string layered_to_dot(const LayeredGraph& h);

}  // namespace slst
