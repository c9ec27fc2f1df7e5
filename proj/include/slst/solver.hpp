#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slst/instance.hpp"
#include "slst/rational.hpp"

namespace slst {

// The delay-rescaled instance of the approximation path. All floors are
// computed in integer arithmetic; epsilon is the ratio actually used for
// scaling.
struct ScaledInstance {
  Instance base;  // normalized
  Rational epsilon;
  std::vector<Delay> scaled_delays;  // per base edge id: floor(n*d(e) / (eps*D))
  Delay scaled_bound = 0;            // floor(n / eps)
};

ScaledInstance scale_instance(const Instance& inst, const Rational& epsilon);

struct SolverLimits {
  int terminal_cap = 20;
  std::int64_t h_vertex_budget = 2'000'000;
  std::int64_t h_arc_budget = 20'000'000;
  std::uint64_t dp_state_budget = 50'000'000;
};

enum class SolveMode { Exact, Approx };

struct SolveStats {
  std::int64_t h_vertices = 0;
  std::int64_t h_arcs = 0;
  std::int64_t h_vertices_full = 0;
  std::int64_t h_arcs_full = 0;
  std::uint64_t dp_states = 0;
  std::uint64_t dp_submask_pairs = 0;
  double wall_ms = 0;
};

struct SolveReport {
  SteinerTree tree;
  TreeEvaluation evaluation;  // measured with original delays against the original bound
  SolveMode mode = SolveMode::Exact;
  Rational epsilon{1, 1};               // approx only
  Rational delay_certificate{0, 1};     // D for exact, (1+eps)*D for approx
  SolveStats stats;
};

// Optimal delay-bounded Steiner tree: layer expansion at bound D, subset DP
// in H, projection back to G, cleanup.
SolveReport solve_exact(const Instance& inst, const SolverLimits& limits = {});

// Bicriteria approximation: cost at most the optimum, every root-to-vertex
// delay strictly below (1+eps)*D.
SolveReport solve_approx(const Instance& inst, const Rational& epsilon, const SolverLimits& limits = {});

// Shortest-delay tree inside the projected subgraph (ties by cost, then edge
// id), then branches without terminals are dropped. A no-op when the
// projection is already a tree.
SteinerTree prune_to_tree(const Instance& inst, std::span<const int> edge_ids,
                          std::span<const Delay> delays, Delay bound);
SteinerTree prune_to_tree(const Instance& inst, std::span<const int> edge_ids);

}  // namespace slst
