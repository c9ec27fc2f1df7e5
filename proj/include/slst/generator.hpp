#pragma once

#include <cstdint>

#include "slst/instance.hpp"

namespace slst {

// splitmix64; self-contained so generated instances are byte-identical
// across standard libraries and platforms.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

struct GenParams {
  int nodes = 10;
  int edges = 20;
  int terminals = 3;
  Cost max_cost = 9;
  Delay max_delay = 9;
  Delay bound = 20;
  std::uint64_t seed = 1;
  bool ensure_feasible = false;
  bool directed = false;
};

// Deterministic random instance; with ensure_feasible a spanning tree whose
// root paths respect the bound is planted first, so the instance always has
// a solution. Root is vertex 0.
Instance generate_instance(const GenParams& params);

}  // namespace slst
