#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "mpsched/simplex.hpp"

using namespace mpsched;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("one-variable optimum at a constraint") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  model.add_row("floor", {{x, 1.0}}, RowSense::ge, 3.0);
  model.set_objective({{x, 1.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.objective == doctest::Approx(3.0));
  CHECK(lp.values[x] == doctest::Approx(3.0));
}

TEST_CASE("conflicting constraint and bound is infeasible") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  model.add_row("ceiling", {{x, 1.0}}, RowSense::le, -1.0);
  model.set_objective({{x, 1.0}});
  CHECK(solve_lp(model).status == LpStatus::infeasible);
}

TEST_CASE("missing ceiling is unbounded") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  model.add_row("floor", {{x, 1.0}}, RowSense::ge, 1.0);
  model.set_objective({{x, -1.0}});
  CHECK(solve_lp(model).status == LpStatus::unbounded);
}

TEST_CASE("upper-bounded column solves by a bound flip") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, 1.0, VarType::continuous);
  model.set_objective({{x, -2.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.objective == doctest::Approx(-2.0));
  CHECK(lp.values[x] == doctest::Approx(1.0));
}

TEST_CASE("negative lower bounds and free variables") {
  LinearModel model;
  const int x = model.add_column("x", -5.0, kInf, VarType::continuous);
  const int f = model.add_column("f", -kInf, kInf, VarType::continuous);
  model.add_row("tie", {{x, 1.0}, {f, 1.0}}, RowSense::ge, 2.0);
  model.add_row("cap", {{f, 1.0}}, RowSense::le, 7.0);
  model.set_objective({{x, 1.0}, {f, 0.5}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  // x sits at its lower bound, f picks up the rest: -5 + 0.5 * 7 = -1.5.
  CHECK(lp.values[x] == doctest::Approx(-5.0));
  CHECK(lp.values[f] == doctest::Approx(7.0));
  CHECK(lp.objective == doctest::Approx(-1.5));
}

TEST_CASE("equality rows") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  const int y = model.add_column("y", 0.0, kInf, VarType::continuous);
  model.add_row("sum", {{x, 1.0}, {y, 1.0}}, RowSense::eq, 4.0);
  model.add_row("gap", {{x, 1.0}, {y, -1.0}}, RowSense::le, 1.0);
  model.set_objective({{x, -1.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.values[x] == doctest::Approx(2.5));
  CHECK(lp.values[y] == doctest::Approx(1.5));
}

TEST_CASE("two-phase start with violated equalities") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, 10.0, VarType::continuous);
  const int y = model.add_column("y", 0.0, 10.0, VarType::continuous);
  const int z = model.add_column("z", 0.0, 10.0, VarType::continuous);
  model.add_row("e1", {{x, 1.0}, {y, 2.0}, {z, 1.0}}, RowSense::eq, 8.0);
  model.add_row("e2", {{x, -1.0}, {y, 1.0}}, RowSense::eq, 1.0);
  model.add_row("g1", {{z, 1.0}}, RowSense::ge, 1.0);
  model.set_objective({{x, 1.0}, {y, 1.0}, {z, 2.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  // Optimal at x = 5/3, y = 8/3, z = 1.
  CHECK(lp.objective == doctest::Approx(5.0 / 3.0 + 8.0 / 3.0 + 2.0));
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's classic cycling LP (degenerate under naive Dantzig pricing).
  LinearModel model;
  const int x1 = model.add_column("x1", 0.0, kInf, VarType::continuous);
  const int x2 = model.add_column("x2", 0.0, kInf, VarType::continuous);
  const int x3 = model.add_column("x3", 0.0, kInf, VarType::continuous);
  const int x4 = model.add_column("x4", 0.0, kInf, VarType::continuous);
  model.add_row("r1", {{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}},
                RowSense::le, 0.0);
  model.add_row("r2", {{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}},
                RowSense::le, 0.0);
  model.add_row("r3", {{x3, 1.0}}, RowSense::le, 1.0);
  model.set_objective({{x1, -0.75}, {x2, 150.0}, {x3, -0.02}, {x4, 6.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.objective == doctest::Approx(-0.05));
}

TEST_CASE("redundant rows do not change the optimum") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  const int y = model.add_column("y", 0.0, kInf, VarType::continuous);
  model.add_row("a", {{x, 1.0}, {y, 1.0}}, RowSense::ge, 2.0);
  model.add_row("b", {{x, 2.0}, {y, 2.0}}, RowSense::ge, 4.0);  // same facet
  model.add_row("c", {{x, 1.0}, {y, 1.0}}, RowSense::le, 9.0);
  model.set_objective({{x, 3.0}, {y, 1.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.objective == doctest::Approx(2.0));
  CHECK(lp.values[y] == doctest::Approx(2.0));
}

TEST_CASE("fixed columns are respected") {
  LinearModel model;
  const int w = model.add_column("w", 0.0, 1.0, VarType::binary);
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  model.add_row("link", {{x, 1.0}, {w, -3.0}}, RowSense::ge, 0.0);
  model.set_objective({{x, 1.0}});

  std::vector<double> lower = {1.0, 0.0};
  std::vector<double> upper = {1.0, kInf};
  const LpSolution lp = solve_lp(model, lower, upper);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.values[w] == doctest::Approx(1.0));
  CHECK(lp.values[x] == doctest::Approx(3.0));
}

TEST_CASE("vacuous rows are tolerated") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, 5.0, VarType::continuous);
  model.add_row("nothing", {}, RowSense::ge, 0.0);
  model.set_objective({{x, 1.0}});
  const LpSolution lp = solve_lp(model);
  REQUIRE(lp.status == LpStatus::optimal);
  CHECK(lp.objective == doctest::Approx(0.0));
}
