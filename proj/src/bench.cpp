#include "slst/bench.hpp"

#include <algorithm>
#include <sstream>

#include "slst/generator.hpp"

namespace slst {

std::uint64_t analytic_submask_pairs(int k) {
  std::uint64_t p3 = 1;
  for (int i = 0; i < k; ++i) p3 *= 3;
  return p3 - (2ull << k) + 1;
}

std::vector<BenchRow> run_bench(const BenchParams& p) {
  if (p.trials < 1) throw Error(ErrorKind::UnsatisfiableParams, "trials must be >= 1");
  std::vector<BenchRow> rows;
  for (int t = p.t_lo; t <= p.t_hi; ++t) {
    if (t > p.nodes)
      throw Error(ErrorKind::UnsatisfiableParams,
                  "t-range reaches " + std::to_string(t) + " terminals on " + std::to_string(p.nodes) +
                      " nodes");
    BenchRow row;
    row.t = t;
    row.k = t - 1;
    row.analytic = analytic_submask_pairs(row.k);
    std::vector<double> times;
    std::vector<std::uint64_t> states;
    for (int trial = 0; trial < p.trials; ++trial) {
      GenParams gp;
      gp.nodes = p.nodes;
      gp.edges = p.edges;
      gp.terminals = t;
      gp.max_cost = p.max_cost;
      gp.max_delay = p.max_delay;
      gp.bound = p.bound;
      gp.ensure_feasible = true;
      gp.seed = p.seed + 1000003ull * static_cast<std::uint64_t>(t) + static_cast<std::uint64_t>(trial);
      SolveReport rep = solve_exact(generate_instance(gp));
      row.submask_pairs = rep.stats.dp_submask_pairs;
      times.push_back(rep.stats.wall_ms);
      states.push_back(rep.stats.dp_states);
    }
    std::sort(times.begin(), times.end());
    std::sort(states.begin(), states.end());
    row.median_ms = times[times.size() / 2];
    row.median_states = states[states.size() / 2];
    row.match = row.submask_pairs == row.analytic;
    rows.push_back(row);
  }
  return rows;
}

std::string render_bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "t k submask_pairs analytic match median_states\n";
  for (const BenchRow& r : rows)
    os << r.t << " " << r.k << " " << r.submask_pairs << " " << r.analytic << " "
       << (r.match ? "yes" : "NO") << " " << r.median_states << "\n";
  return os.str();
}

std::string render_bench_times(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  for (const BenchRow& r : rows) os << "t=" << r.t << " median_ms=" << r.median_ms << "\n";
  return os.str();
}

}  // namespace slst
