#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slst/instance.hpp"
#include "slst/solver.hpp"

namespace slst {

// "slst/1" text format. Rendering is canonical (ASCII, LF, single spaces);
// parsing is faithful: no normalization happens here, so parse(render(x))
// reproduces x exactly.
Instance parse_instance(std::istream& in);
Instance parse_instance_file(const std::string& path);
std::string render_instance(const Instance& inst);

struct SolutionFile {
  SolveMode mode = SolveMode::Exact;
  Rational epsilon{1, 1};
  Cost cost = 0;
  Delay max_terminal_delay = 0;
  Rational delay_certificate{0, 1};
  std::vector<std::pair<int, int>> edges;
  // Deterministic solver stats only; wall time deliberately stays out so
  // solution files are byte-stable.
  std::int64_t h_vertices = 0;
  std::int64_t h_arcs = 0;
  std::int64_t h_vertices_full = 0;
  std::int64_t h_arcs_full = 0;
  std::uint64_t dp_states = 0;
  std::uint64_t dp_submask_pairs = 0;
};

SolutionFile solution_from_report(const SolveReport& report);
std::string render_solution(const SolutionFile& sol);
SolutionFile parse_solution(std::istream& in);
SolutionFile parse_solution_file(const std::string& path);

// Recomputes everything from scratch; returns one message per failed check
// (empty means the solution verifies).
std::vector<std::string> verify_solution(const Instance& inst, const SolutionFile& sol);

std::string tree_to_dot(const Instance& inst, const SteinerTree& tree);

}  // namespace slst
