#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "slst/instance.hpp"
#include "slst/oracle.hpp"

using namespace slst;
using test_util::triangle;

TEST_CASE("validate accepts the triangle and confirms reachability") {
  Instance norm = validate_instance(triangle(2));
  CHECK(norm.vertex_count == 3);
  CHECK(norm.edges.size() == 3);
  CHECK(norm.terminals == std::vector<int>{0, 2});
}

TEST_CASE("validate rejects a non-positive delay bound") {
  Instance bad = triangle(2);
  bad.delay_bound = 0;
  try {
    validate_instance(bad);
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveWeight);
  }
}

TEST_CASE("validate reports unreachable terminals as infeasible") {
  Instance inst;
  inst.vertex_count = 3;
  inst.edges = {{0, 1, 1, 1}};
  inst.terminals = {0, 2};
  inst.root = 0;
  inst.delay_bound = 5;
  try {
    validate_instance(inst);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
    CHECK(e.vertices() == std::vector<int>{2});
  }
}

TEST_CASE("validate rejects bad roots, weights, self-loops") {
  Instance inst = triangle(2);
  inst.root = 7;
  CHECK_THROWS_AS(validate_instance(inst), Error);

  inst = triangle(2);
  inst.edges[0].cost = 0;
  try {
    validate_instance(inst);
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveWeight);
  }

  inst = triangle(2);
  inst.edges.push_back({1, 1, 1, 1});
  CHECK_THROWS_AS(validate_instance(inst), Error);
}

TEST_CASE("validate dedups parallel edges to min cost then min delay") {
  Instance inst = triangle(20);
  inst.edges.push_back({2, 0, 2, 9});  // cheaper reversed parallel of r-b
  inst.edges.push_back({0, 2, 2, 4});  // same cost, lower delay
  Instance norm = validate_instance(inst);
  CHECK(norm.edges.size() == 3);
  EdgeAttrs at = lookup_edge(norm, 0, 2);
  CHECK(at.cost == 2);
  CHECK(at.delay == 4);
}

TEST_CASE("validate inserts a missing root into the terminals") {
  Instance inst = triangle(2);
  inst.terminals = {2};
  Instance norm = validate_instance(inst);
  CHECK(norm.terminals == std::vector<int>{0, 2});
}

TEST_CASE("validate is idempotent") {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    Instance inst = test_util::random_small_instance(rng, true);
    Instance once = validate_instance(inst);
    CHECK(validate_instance(once) == once);
  }
}

TEST_CASE("evaluate: root-only tree on a root-only terminal set") {
  Instance inst = triangle(2);
  inst.terminals = {0};
  Instance norm = validate_instance(inst);
  TreeEvaluation ev = evaluate_tree(norm, SteinerTree{0, {}});
  CHECK(ev.total_cost == 0);
  CHECK(ev.max_terminal_delay == 0);
  CHECK(ev.feasible);
  CHECK(ev.delay_to[0] == 0);
}

TEST_CASE("evaluate: the two-edge path through the triangle") {
  Instance norm = validate_instance(triangle(2));
  SteinerTree tree{0, {{0, 1}, {1, 2}}};
  TreeEvaluation ev = evaluate_tree(norm, tree);
  CHECK(ev.total_cost == 2);
  CHECK(ev.delay_to[2] == 2);
  CHECK(ev.max_terminal_delay == 2);
  CHECK(ev.feasible);

  Instance tight = triangle(1);
  tight.delay_bound = 1;
  TreeEvaluation ev1 = evaluate_tree(tight, tree);
  CHECK(ev1.total_cost == 2);
  CHECK(ev1.delay_to[2] == 2);
  CHECK_FALSE(ev1.feasible);
}

TEST_CASE("evaluate rejects non-trees and missing terminals") {
  Instance norm = validate_instance(triangle(2));

  SUBCASE("in-degree two") {
    SteinerTree t{0, {{0, 1}, {0, 2}, {1, 2}}};
    try {
      evaluate_tree(norm, t);
      FAIL("expected NotATree");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotATree);
    }
  }
  SUBCASE("disconnected edge") {
    SteinerTree t{0, {{1, 2}}};
    try {
      evaluate_tree(norm, t);
      FAIL("expected NotATree");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotATree);
    }
  }
  SUBCASE("missing terminal named") {
    SteinerTree t{0, {{0, 1}}};
    try {
      evaluate_tree(norm, t);
      FAIL("expected MissingTerminal");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingTerminal);
      CHECK(e.vertices() == std::vector<int>{2});
    }
  }
  SUBCASE("edge not in instance") {
    Instance sparse = triangle(5);
    sparse.edges = {{0, 1, 1, 1}, {1, 2, 1, 1}};
    sparse = validate_instance(sparse);
    SteinerTree t{0, {{0, 2}}};
    try {
      evaluate_tree(sparse, t);
      FAIL("expected UnknownEdge");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownEdge);
    }
  }
}

TEST_CASE("evaluate matches an independent path walk on enumerated trees") {
  Rng rng(23);
  int trees_checked = 0;
  for (int i = 0; i < 25; ++i) {
    Instance inst = validate_instance(test_util::random_small_instance(rng, true));
    for (const SteinerTree& tree : enumerate_feasible_trees(inst, 8)) {
      TreeEvaluation ev = evaluate_tree(inst, tree);
      auto walked = test_util::walk_delays(inst, tree);
      CHECK(ev.delay_to == walked);
      ++trees_checked;
    }
  }
  CHECK(trees_checked > 50);
}

TEST_CASE("evaluate cost is invariant under edge-list permutation") {
  Instance norm = validate_instance(triangle(2));
  SteinerTree t{0, {{0, 1}, {1, 2}}};
  Cost base = evaluate_tree(norm, t).total_cost;
  std::reverse(t.edges.begin(), t.edges.end());
  CHECK(evaluate_tree(norm, t).total_cost == base);
}
