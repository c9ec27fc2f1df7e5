#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "slst/instance.hpp"

namespace slst {

struct OracleLimits {
  int max_vertices = 10;
  int max_edges = 16;
};

// Ground-truth solver by exhaustive edge-subset enumeration. Deliberately
// shares no machinery with the layered-graph pipeline. Ties go to the
// lexicographically smallest edge-id set.
std::pair<SteinerTree, Cost> slst_bruteforce(const Instance& inst, const OracleLimits& limits = {});

// All delay-feasible trees (every tree vertex within the bound), in
// ascending edge-subset order, up to `limit`.
std::vector<SteinerTree> enumerate_feasible_trees(const Instance& inst, std::size_t limit,
                                                  const OracleLimits& limits = {});

}  // namespace slst
