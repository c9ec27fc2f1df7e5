#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "slst/bench.hpp"
#include "slst/generator.hpp"
#include "slst/io.hpp"
#include "slst/layer_graph.hpp"
#include "slst/oracle.hpp"
#include "slst/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw slst::Error(slst::ErrorKind::Parse, "cannot write '" + path + "'");
  out << content;
}

int run_solve(const std::string& input, bool exact, const std::string& epsilon_text,
              const std::string& out_path, const std::string& dot_path, const std::string& dot_h_path) {
  slst::Instance inst = slst::parse_instance_file(input);
  slst::SolveReport rep;
  if (exact) {
    rep = slst::solve_exact(inst);
  } else {
    rep = slst::solve_approx(inst, slst::Rational::parse(epsilon_text));
  }
  write_file(out_path, slst::render_solution(slst::solution_from_report(rep)));
  if (!dot_path.empty())
    write_file(dot_path, slst::tree_to_dot(slst::validate_instance(inst), rep.tree));
  if (!dot_h_path.empty()) {
    // export the layered graph the run actually solved over
    slst::Instance norm = slst::validate_instance(inst);
    slst::LayeredGraph h;
    if (exact) {
      h = slst::build_layered(norm, norm.delay_bound);
    } else {
      slst::Rational eps = slst::Rational::parse(epsilon_text);
      slst::Rational n_rat(norm.vertex_count, 1);
      if (n_rat < eps) eps = n_rat;  // same clamp solve_approx applies
      slst::ScaledInstance sc = slst::scale_instance(norm, eps);
      h = slst::build_layered(sc.base, sc.scaled_bound, sc.scaled_delays);
    }
    write_file(dot_h_path, slst::layered_to_dot(h));
  }
  std::cerr << "solved: cost=" << rep.evaluation.total_cost
            << " max_terminal_delay=" << rep.evaluation.max_terminal_delay
            << " wall_ms=" << rep.stats.wall_ms << "\n";
  return kExitOk;
}

int run_verify(const std::string& instance_path, const std::string& solution_path) {
  slst::Instance inst = slst::parse_instance_file(instance_path);
  slst::SolutionFile sol = slst::parse_solution_file(solution_path);
  auto failures = slst::verify_solution(inst, sol);
  if (failures.empty()) {
    std::cout << "ok: solution verifies (cost=" << sol.cost
              << ", max_terminal_delay=" << sol.max_terminal_delay << ")\n";
    return kExitOk;
  }
  for (const auto& f : failures) std::cout << "FAIL: " << f << "\n";
  return kExitError;
}

std::pair<int, int> parse_t_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw slst::Error(slst::ErrorKind::Parse, "t-range must look like 'a..b', got '" + text + "'");
  try {
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    return {lo, hi};
  } catch (const std::exception&) {
    throw slst::Error(slst::ErrorKind::Parse, "t-range must look like 'a..b', got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shallow-light Steiner tree solver"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_input, solve_out = "-", solve_dot, solve_dot_h, solve_eps;
  bool flag_exact = false, flag_approx = false;
  solve->add_option("input", solve_input, "instance file (slst/1)")->required();
  solve->add_flag("--exact", flag_exact, "optimal tree within the delay bound");
  solve->add_flag("--approx", flag_approx, "cost-optimal tree within (1+eps)*D");
  solve->add_option("--epsilon", solve_eps, "approximation parameter as a rational p/q");
  solve->add_option("--out,-o", solve_out, "solution output path ('-' = stdout)");
  solve->add_option("--dot", solve_dot, "write the tree as DOT");
  solve->add_option("--dot-h", solve_dot_h, "write the layered graph as DOT");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check a solution file against its instance");
  std::string verify_instance, verify_solution_path;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("solution", verify_solution_path, "solution file")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance on stdout");
  slst::GenParams gp;
  gen->add_option("--nodes", gp.nodes, "vertex count");
  gen->add_option("--edges", gp.edges, "edge count");
  gen->add_option("--terminals", gp.terminals, "terminal count (root included)");
  gen->add_option("--max-cost", gp.max_cost, "edge costs are uniform in [1, max-cost]");
  gen->add_option("--max-delay", gp.max_delay, "edge delays are uniform in [1, max-delay]");
  gen->add_option("--bound", gp.bound, "delay bound D");
  gen->add_option("--seed", gp.seed, "RNG seed");
  gen->add_flag("--ensure-feasible", gp.ensure_feasible, "plant a bound-respecting spanning tree");
  gen->add_flag("--directed", gp.directed, "generate a directed instance");

  // bench
  auto* bench = app.add_subcommand("bench", "exact-solver scaling in the terminal count");
  slst::BenchParams bp;
  std::string t_range = "2..6";
  bench->add_option("--t-range", t_range, "terminal counts to sweep, 'a..b'");
  bench->add_option("--trials", bp.trials, "instances per t");
  bench->add_option("--seed", bp.seed, "RNG seed");
  bench->add_option("--nodes", bp.nodes, "vertex count");
  bench->add_option("--edges", bp.edges, "edge count");
  bench->add_option("--bound", bp.bound, "delay bound D");
  bench->add_option("--max-cost", bp.max_cost, "max edge cost");
  bench->add_option("--max-delay", bp.max_delay, "max edge delay");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (flag_exact == flag_approx) {
        std::cerr << "error: pass exactly one of --exact / --approx\n";
        return kExitError;
      }
      if (flag_approx && solve_eps.empty()) {
        std::cerr << "error: --approx needs --epsilon p/q\n";
        return kExitError;
      }
      return run_solve(solve_input, flag_exact, solve_eps, solve_out, solve_dot, solve_dot_h);
    }
    if (verify->parsed()) return run_verify(verify_instance, verify_solution_path);
    if (gen->parsed()) {
      std::cout << slst::render_instance(slst::generate_instance(gp));
      return kExitOk;
    }
    if (bench->parsed()) {
      std::tie(bp.t_lo, bp.t_hi) = parse_t_range(t_range);
      auto rows = slst::run_bench(bp);
      std::cout << slst::render_bench_table(rows);
      std::cerr << slst::render_bench_times(rows);
      return kExitOk;
    }
  } catch (const slst::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == slst::ErrorKind::Infeasible ? kExitInfeasible : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
