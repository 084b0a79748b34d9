#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "mpsched/branch_and_bound.hpp"
#include "mpsched/formulations.hpp"
#include "mpsched/instance.hpp"
#include "mpsched/simplex.hpp"

using namespace mpsched;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Instance single_tech_instance() {
  Instance inst;
  inst.num_machines = 1;
  inst.products = {{10.0, {1}}};
  inst.technologies = {{1, {1}, 2.0}};
  inst.setups = {{0.0}};
  return inst;
}

// One product of volume 10, rates 5 and 2 on a shared machine, setups 1.
Instance two_rate_instance() {
  Instance inst;
  inst.num_machines = 1;
  inst.products = {{10.0, {1, 2}}};
  inst.technologies = {{1, {1}, 5.0}, {1, {1}, 2.0}};
  inst.setups = {{0.0, 1.0, 1.0, 0.0}};
  validate_instance(inst);
  return inst;
}

GeneratorConfig shrunk_config(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.k = 2;
  cfg.m = 2;
  cfg.u_max = 2;
  cfg.v_max = 8.0;
  cfg.s_max = 4.0;
  cfg.n_max = 2;
  cfg.seed = seed;
  cfg.triangle_mode = TriangleMode::metric_closure;
  return cfg;
}

}  // namespace

TEST_CASE("tiny general model solves to the run length") {
  const auto built = build_general(single_tech_instance(), {1});
  const MilpSolution sol = solve_milp(built.model);
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(5.0));
  const auto oracle = brute_force_oracle(built.model);
  REQUIRE(oracle.has_value());
  CHECK(*oracle == doctest::Approx(5.0));
}

TEST_CASE("rate choice under a shared machine") {
  const Instance inst = two_rate_instance();
  // Using only the faster technology finishes at 10/5 = 2; bringing in the
  // slower one costs a changeover and can only lose.
  for (Variant variant : {Variant::general, Variant::triangle}) {
    const auto built = variant == Variant::general
                           ? build_general(inst, {2})
                           : build_triangle(inst, {2});
    const MilpSolution sol = solve_milp(built.model);
    REQUIRE(sol.status == MilpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
    const auto oracle = brute_force_oracle(built.model);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == doctest::Approx(sol.objective));
  }
}

TEST_CASE("independent products on disjoint machines run in parallel") {
  Instance inst;
  inst.num_machines = 2;
  inst.products = {{12.0, {1}}, {6.0, {2}}};
  inst.technologies = {{1, {1}, 3.0}, {2, {2}, 1.0}};
  inst.setups = {std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
  validate_instance(inst);
  const auto built = build_general(inst, {1});
  const MilpSolution sol = solve_milp(built.model);
  REQUIRE(sol.status == MilpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(6.0));  // max(12/3, 6/1)
}

TEST_CASE("oracle equals the LP when no binaries exist") {
  LinearModel model;
  const int x = model.add_column("x", 0.0, kInf, VarType::continuous);
  model.add_row("floor", {{x, 1.0}}, RowSense::ge, 3.0);
  model.set_objective({{x, 1.0}});
  const auto oracle = brute_force_oracle(model);
  REQUIRE(oracle.has_value());
  CHECK(*oracle == doctest::Approx(solve_lp(model).objective));
}

TEST_CASE("oracle refuses more than 16 binaries") {
  LinearModel model;
  for (int i = 0; i < 17; ++i)
    model.add_column("b" + std::to_string(i), 0.0, 1.0, VarType::binary);
  CHECK_THROWS_AS((void)brute_force_oracle(model), std::invalid_argument);
}

TEST_CASE("infeasible binary model") {
  LinearModel model;
  const int w = model.add_column("w", 0.0, 1.0, VarType::binary);
  model.add_row("up", {{w, 1.0}}, RowSense::ge, 0.6);
  model.add_row("down", {{w, 1.0}}, RowSense::le, 0.4);
  model.set_objective({{w, 1.0}});
  CHECK(solve_milp(model).status == MilpStatus::infeasible);
  CHECK_FALSE(brute_force_oracle(model).has_value());
}

TEST_CASE("branch and bound matches the oracle on shrunk instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorConfig cfg = shrunk_config(seed);
    // Mix in raw (possibly non-metric) setups: the model-level equivalence
    // between search and enumeration holds regardless of the instance.
    if (seed > 20) cfg.triangle_mode = TriangleMode::raw;
    const Instance inst = generate_instance(cfg);
    for (Variant variant : {Variant::general, Variant::triangle}) {
      const auto built = variant == Variant::general
                             ? build_general(inst, {2})
                             : build_triangle(inst, {2});
      const MilpSolution sol = solve_milp(built.model);
      const auto oracle = brute_force_oracle(built.model);
      REQUIRE(sol.status == MilpStatus::optimal);
      REQUIRE(oracle.has_value());
      CHECK(sol.objective == doctest::Approx(*oracle).epsilon(1e-6));

      // Weak duality of the relaxation.
      const LpSolution root = solve_lp(built.model);
      REQUIRE(root.status == LpStatus::optimal);
      CHECK(root.objective <= sol.objective + 1e-6);
    }
  }
}

TEST_CASE("single-machine sequencing matches the permutation optimum") {
  // Independent schedule-space oracle: with one machine, one technology
  // per product, and metric setups, the optimal makespan is the total run
  // time plus the cheapest changeover order over all permutations
  // (splitting runs only ever adds changeovers under the triangle
  // inequality).
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> volumes(1.0, 9.0);
  std::uniform_real_distribution<double> setups(0.0, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = trial < 8 ? 2 + static_cast<int>(rng() % 2) : 4;
    Instance inst;
    inst.num_machines = 1;
    for (int i = 1; i <= k; ++i) {
      inst.products.push_back({volumes(rng), {i}});
      inst.technologies.push_back({i, {1}, 1.0});
    }
    inst.setups = {std::vector<double>(k * k, 0.0)};
    for (int u = 1; u <= k; ++u)
      for (int q = 1; q <= k; ++q)
        if (u != q) inst.setups[0][(u - 1) * k + (q - 1)] = setups(rng);
    inst = metric_closure(inst);
    validate_instance(inst);

    double run_total = 0.0;
    for (int i = 0; i < k; ++i) run_total += inst.products[i].volume;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 1);
    double best_changeover = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (int i = 0; i + 1 < k; ++i)
        cost += inst.setup(1, order[i], order[i + 1]);
      best_changeover = std::min(best_changeover, cost);
    } while (std::next_permutation(order.begin(), order.end()));
    const double expected = run_total + best_changeover;

    for (Variant variant : {Variant::general, Variant::triangle}) {
      const auto built = variant == Variant::general
                             ? build_general(inst, {k})
                             : build_triangle(inst, {k});
      const MilpSolution sol = solve_milp(built.model);
      REQUIRE(sol.status == MilpStatus::optimal);
      CHECK(sol.objective == doctest::Approx(expected).epsilon(1e-6));
    }
  }
}

TEST_CASE("determinism of objective and node count") {
  const Instance inst = generate_instance(shrunk_config(5));
  const auto built = build_general(inst, {2});
  const MilpSolution a = solve_milp(built.model);
  const MilpSolution b = solve_milp(built.model);
  CHECK(a.objective == b.objective);
  CHECK(a.nodes == b.nodes);
  CHECK(a.values == b.values);
}

TEST_CASE("scaling volumes and setups scales the optimum") {
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    const Instance inst = generate_instance(shrunk_config(seed));
    Instance scaled = inst;
    const double factor = 2.5;
    for (Product& p : scaled.products) p.volume *= factor;
    for (auto& matrix : scaled.setups)
      for (double& s : matrix) s *= factor;
    for (Variant variant : {Variant::general, Variant::triangle}) {
      auto build = variant == Variant::general ? build_general : build_triangle;
      const MilpSolution base = solve_milp(build(inst, {2}).model);
      const MilpSolution big = solve_milp(build(scaled, {2}).model);
      REQUIRE(base.status == MilpStatus::optimal);
      REQUIRE(big.status == MilpStatus::optimal);
      CHECK(big.objective == doctest::Approx(factor * base.objective));
    }
  }
}

TEST_CASE("limits produce honest statuses") {
  const Instance inst = generate_instance(shrunk_config(9));
  const auto built = build_general(inst, {2});

  SolveConfig one_node;
  one_node.node_limit = 1;
  const MilpSolution limited = solve_milp(built.model, one_node);
  CHECK((limited.status == MilpStatus::feasible ||
         limited.status == MilpStatus::limit));
  CHECK(limited.nodes <= 1);

  SolveConfig no_time;
  no_time.time_limit = 1e-9;
  const MilpSolution timed = solve_milp(built.model, no_time);
  CHECK((timed.status == MilpStatus::feasible ||
         timed.status == MilpStatus::limit));

  // The same instance solves to optimality without limits.
  CHECK(solve_milp(built.model).status == MilpStatus::optimal);
}
