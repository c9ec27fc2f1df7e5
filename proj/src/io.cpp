#include "slst/io.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace slst {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

std::int64_t parse_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) parse_fail(line_no, "bad integer '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    parse_fail(line_no, "bad integer '" + tok + "'");
  } catch (const std::out_of_range&) {
    parse_fail(line_no, "integer out of range '" + tok + "'");
  }
}

// Vertex ids and counts must narrow to int without wrapping.
int parse_int32(const std::string& tok, int line_no) {
  std::int64_t v = parse_int(tok, line_no);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    parse_fail(line_no, "integer out of range '" + tok + "'");
  return static_cast<int>(v);
}

Rational parse_rational_tok(const std::string& tok, int line_no) {
  try {
    return Rational::parse(tok);
  } catch (const Error&) {
    parse_fail(line_no, "bad rational '" + tok + "'");
  }
}

// Line reader that skips blanks and '#' comments and tracks line numbers.
struct LineSource {
  std::istream& in;
  int line_no = 0;

  std::optional<std::pair<int, std::vector<std::string>>> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      auto toks = tokenize(line);
      if (!toks.empty()) return std::make_pair(line_no, toks);
    }
    return std::nullopt;
  }
};

}  // namespace

Instance parse_instance(std::istream& in) {
  LineSource src{in};
  auto first = src.next();
  if (!first || first->second.size() != 2 || first->second[0] != "slst" || first->second[1] != "1")
    parse_fail(first ? first->first : 1, "expected 'slst 1'");

  Instance inst;
  bool have_n = false, have_root = false, have_bound = false;
  bool root_listed_as_terminal = false;
  int root_line = 0;
  std::vector<int> terminal_lines;
  std::vector<int> edge_lines;
  while (auto entry = src.next()) {
    auto& [ln, toks] = *entry;
    const std::string& key = toks[0];
    auto want = [&](std::size_t n_args) {
      if (toks.size() != n_args + 1)
        parse_fail(ln, "'" + key + "' expects " + std::to_string(n_args) + " fields");
    };
    if (key == "n") {
      want(1);
      if (have_n) parse_fail(ln, "duplicate 'n'");
      inst.vertex_count = parse_int32(toks[1], ln);
      have_n = true;
    } else if (key == "directed") {
      want(0);
      inst.directed = true;
    } else if (key == "root") {
      want(1);
      if (have_root) parse_fail(ln, "duplicate 'root'");
      inst.root = parse_int32(toks[1], ln);
      root_line = ln;
      have_root = true;
    } else if (key == "terminal") {
      want(1);
      int t = parse_int32(toks[1], ln);
      inst.terminals.push_back(t);
      terminal_lines.push_back(ln);
    } else if (key == "bound") {
      want(1);
      if (have_bound) parse_fail(ln, "duplicate 'bound'");
      inst.delay_bound = parse_int(toks[1], ln);
      have_bound = true;
    } else if (key == "edge") {
      want(4);
      Edge e;
      e.tail = parse_int32(toks[1], ln);
      e.head = parse_int32(toks[2], ln);
      e.cost = parse_int(toks[3], ln);
      e.delay = parse_int(toks[4], ln);
      inst.edges.push_back(e);
      edge_lines.push_back(ln);
    } else {
      parse_fail(ln, "unknown keyword '" + key + "'");
    }
  }
  if (!have_n) throw Error(ErrorKind::Parse, "missing 'n'");
  if (!have_root) throw Error(ErrorKind::Parse, "missing 'root'");
  if (!have_bound) throw Error(ErrorKind::Parse, "missing 'bound'");

  auto in_range = [&](int id) { return id >= 0 && id < inst.vertex_count; };
  if (!in_range(inst.root)) parse_fail(root_line, "root " + std::to_string(inst.root) + " not below n");
  for (std::size_t i = 0; i < inst.terminals.size(); ++i)
    if (!in_range(inst.terminals[i]))
      parse_fail(terminal_lines[i], "terminal " + std::to_string(inst.terminals[i]) + " not below n");
  for (std::size_t i = 0; i < inst.edges.size(); ++i)
    if (!in_range(inst.edges[i].tail) || !in_range(inst.edges[i].head))
      parse_fail(edge_lines[i], "edge endpoint not below n");

  for (int t : inst.terminals)
    if (t == inst.root) root_listed_as_terminal = true;
  if (!root_listed_as_terminal) inst.terminals.insert(inst.terminals.begin(), inst.root);
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_instance(in);
}

std::string render_instance(const Instance& inst) {
  std::ostringstream os;
  os << "slst 1\n";
  os << "n " << inst.vertex_count << "\n";
  if (inst.directed) os << "directed\n";
  os << "root " << inst.root << "\n";
  for (int t : inst.terminals) os << "terminal " << t << "\n";
  os << "bound " << inst.delay_bound << "\n";
  for (const Edge& e : inst.edges)
    os << "edge " << e.tail << " " << e.head << " " << e.cost << " " << e.delay << "\n";
  return os.str();
}

SolutionFile solution_from_report(const SolveReport& report) {
  SolutionFile sol;
  sol.mode = report.mode;
  sol.epsilon = report.epsilon;
  sol.cost = report.evaluation.total_cost;
  sol.max_terminal_delay = report.evaluation.max_terminal_delay;
  sol.delay_certificate = report.delay_certificate;
  sol.edges = report.tree.edges;
  sol.h_vertices = report.stats.h_vertices;
  sol.h_arcs = report.stats.h_arcs;
  sol.h_vertices_full = report.stats.h_vertices_full;
  sol.h_arcs_full = report.stats.h_arcs_full;
  sol.dp_states = report.stats.dp_states;
  sol.dp_submask_pairs = report.stats.dp_submask_pairs;
  return sol;
}

std::string render_solution(const SolutionFile& sol) {
  std::ostringstream os;
  os << "slst-solution 1\n";
  if (sol.mode == SolveMode::Exact)
    os << "mode exact\n";
  else
    os << "mode approx " << sol.epsilon.str() << "\n";
  os << "cost " << sol.cost << "\n";
  os << "max_terminal_delay " << sol.max_terminal_delay << "\n";
  os << "delay_certificate " << sol.delay_certificate.str() << "\n";
  os << "edges " << sol.edges.size() << "\n";
  for (auto [u, v] : sol.edges) os << "edge " << u << " " << v << "\n";
  os << "stat h_vertices " << sol.h_vertices << "\n";
  os << "stat h_arcs " << sol.h_arcs << "\n";
  os << "stat h_vertices_full " << sol.h_vertices_full << "\n";
  os << "stat h_arcs_full " << sol.h_arcs_full << "\n";
  os << "stat dp_states " << sol.dp_states << "\n";
  os << "stat dp_submask_pairs " << sol.dp_submask_pairs << "\n";
  return os.str();
}

SolutionFile parse_solution(std::istream& in) {
  LineSource src{in};
  auto first = src.next();
  if (!first || first->second.size() != 2 || first->second[0] != "slst-solution" ||
      first->second[1] != "1")
    parse_fail(first ? first->first : 1, "expected 'slst-solution 1'");

  SolutionFile sol;
  bool have_mode = false, have_cost = false, have_delay = false, have_cert = false;
  while (auto entry = src.next()) {
    auto& [ln, toks] = *entry;
    const std::string& key = toks[0];
    if (key == "mode") {
      if (toks.size() < 2) parse_fail(ln, "'mode' expects a value");
      if (toks[1] == "exact" && toks.size() == 2) {
        sol.mode = SolveMode::Exact;
      } else if (toks[1] == "approx" && toks.size() == 3) {
        sol.mode = SolveMode::Approx;
        sol.epsilon = parse_rational_tok(toks[2], ln);
      } else {
        parse_fail(ln, "mode must be 'exact' or 'approx <p/q>'");
      }
      have_mode = true;
    } else if (key == "cost") {
      if (toks.size() != 2) parse_fail(ln, "'cost' expects one value");
      sol.cost = parse_int(toks[1], ln);
      have_cost = true;
    } else if (key == "max_terminal_delay") {
      if (toks.size() != 2) parse_fail(ln, "'max_terminal_delay' expects one value");
      sol.max_terminal_delay = parse_int(toks[1], ln);
      have_delay = true;
    } else if (key == "delay_certificate") {
      if (toks.size() != 2) parse_fail(ln, "'delay_certificate' expects one value");
      sol.delay_certificate = parse_rational_tok(toks[1], ln);
      have_cert = true;
    } else if (key == "edges") {
      if (toks.size() != 2) parse_fail(ln, "'edges' expects a count");
    } else if (key == "edge") {
      if (toks.size() != 3) parse_fail(ln, "'edge' expects two endpoints");
      sol.edges.push_back({parse_int32(toks[1], ln), parse_int32(toks[2], ln)});
    } else if (key == "stat") {
      if (toks.size() != 3) parse_fail(ln, "'stat' expects a key and a value");
      std::int64_t v = parse_int(toks[2], ln);
      if (toks[1] == "h_vertices") sol.h_vertices = v;
      else if (toks[1] == "h_arcs") sol.h_arcs = v;
      else if (toks[1] == "h_vertices_full") sol.h_vertices_full = v;
      else if (toks[1] == "h_arcs_full") sol.h_arcs_full = v;
      else if (toks[1] == "dp_states") sol.dp_states = static_cast<std::uint64_t>(v);
      else if (toks[1] == "dp_submask_pairs") sol.dp_submask_pairs = static_cast<std::uint64_t>(v);
      // unknown stats are tolerated
    } else {
      parse_fail(ln, "unknown keyword '" + key + "'");
    }
  }
  if (!have_mode) throw Error(ErrorKind::Parse, "missing 'mode'");
  if (!have_cost) throw Error(ErrorKind::Parse, "missing 'cost'");
  if (!have_delay) throw Error(ErrorKind::Parse, "missing 'max_terminal_delay'");
  if (!have_cert) throw Error(ErrorKind::Parse, "missing 'delay_certificate'");
  return sol;
}

SolutionFile parse_solution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  return parse_solution(in);
}

std::vector<std::string> verify_solution(const Instance& raw, const SolutionFile& sol) {
  std::vector<std::string> failures;
  Instance inst;
  try {
    inst = validate_instance(raw);
  } catch (const Error& e) {
    failures.push_back(std::string("instance rejected: ") + e.what());
    return failures;
  }

  TreeEvaluation ev;
  try {
    ev = evaluate_tree(inst, SteinerTree{inst.root, sol.edges});
  } catch (const Error& e) {
    failures.push_back(std::string("tree rejected: ") + e.what());
    return failures;
  }

  if (ev.total_cost != sol.cost)
    failures.push_back("cost mismatch: claimed " + std::to_string(sol.cost) + ", recomputed " +
                       std::to_string(ev.total_cost));
  if (ev.max_terminal_delay != sol.max_terminal_delay)
    failures.push_back("max_terminal_delay mismatch: claimed " + std::to_string(sol.max_terminal_delay) +
                       ", recomputed " + std::to_string(ev.max_terminal_delay));
  if (!int_leq(ev.max_terminal_delay, sol.delay_certificate))
    failures.push_back("max terminal delay " + std::to_string(ev.max_terminal_delay) +
                       " exceeds the certificate " + sol.delay_certificate.str());

  Rational expected_cert{0, 1};
  if (sol.mode == SolveMode::Exact) {
    expected_cert = Rational(inst.delay_bound, 1);
  } else {
    if (!sol.epsilon.positive()) {
      failures.push_back("approx solution with non-positive epsilon " + sol.epsilon.str());
      return failures;
    }
    expected_cert =
        Rational((sol.epsilon.num + sol.epsilon.den) * inst.delay_bound, sol.epsilon.den);
  }
  if (!(sol.delay_certificate == expected_cert))
    failures.push_back("delay certificate " + sol.delay_certificate.str() + " does not match the mode (expected " +
                       expected_cert.str() + ")");
  return failures;
}

std::string tree_to_dot(const Instance& inst, const SteinerTree& tree) {
  std::vector<char> is_term(inst.vertex_count, 0);
  for (int t : inst.terminals) is_term[t] = 1;
  std::ostringstream os;
  os << "digraph tree {\n";
  os << "  n" << tree.root << " [label=\"r\" shape=box];\n";
  std::vector<char> declared(inst.vertex_count, 0);
  declared[tree.root] = 1;
  auto declare = [&](int v) {
    if (declared[v]) return;
    declared[v] = 1;
    os << "  n" << v << " [label=\"" << v << "\"";
    if (is_term[v]) os << " shape=doublecircle";
    os << "];\n";
  };
  for (auto [u, v] : tree.edges) {
    declare(u);
    declare(v);
    EdgeAttrs at = lookup_edge(inst, u, v);
    os << "  n" << u << " -> n" << v << " [label=\"c=" << at.cost << ",d=" << at.delay << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace slst
