#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "slst/generator.hpp"
#include "slst/instance.hpp"

namespace test_util {

// Triangle from the worked examples: r=0, a=1, b=2; r-a and a-b cost 1
// delay 1, r-b cost 3 delay 1; terminals {r, b}.
inline slst::Instance triangle(slst::Delay bound = 2) {
  slst::Instance inst;
  inst.vertex_count = 3;
  inst.edges = {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 3, 1}};
  inst.terminals = {0, 2};
  inst.root = 0;
  inst.delay_bound = bound;
  return inst;
}

// Oracle-scale random instance; roughly half are planted feasible, the rest
// may or may not admit a tree within the bound.
inline slst::Instance random_small_instance(slst::Rng& rng, bool ensure_feasible) {
  slst::GenParams gp;
  gp.nodes = static_cast<int>(rng.range(4, 8));
  gp.edges = static_cast<int>(rng.range(gp.nodes - 1, 14));
  gp.terminals = static_cast<int>(rng.range(2, std::min(4, gp.nodes)));
  gp.max_cost = 9;
  gp.max_delay = 9;
  gp.bound = rng.range(2, 8);
  gp.seed = rng.next();
  gp.ensure_feasible = ensure_feasible;
  gp.directed = rng.below(4) == 0;
  return slst::generate_instance(gp);
}

// Root-to-vertex delays recomputed by naive repeated path walking, for
// checking evaluate_tree against an implementation-independent route.
inline std::vector<slst::Delay> walk_delays(const slst::Instance& inst, const slst::SteinerTree& tree) {
  std::vector<slst::Delay> out(inst.vertex_count, -1);
  out[tree.root] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : tree.edges) {
      if (out[u] < 0 || out[v] >= 0) continue;
      out[v] = out[u] + slst::lookup_edge(inst, u, v).delay;
      changed = true;
    }
  }
  return out;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::filesystem::path test_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("slst_tests_" + std::to_string(static_cast<long>(::getpid())));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void spit(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

#ifdef SLST_CLI_PATH
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  auto out_path = test_dir() / ("out_" + std::to_string(counter) + ".txt");
  auto err_path = test_dir() / ("err_" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string(SLST_CLI_PATH) + " " + args + " > " + out_path.string() + " 2> " +
                    err_path.string();
  int status = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}
#endif

}  // namespace test_util
