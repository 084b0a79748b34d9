#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "mpsched/instance.hpp"
#include "mpsched/json_io.hpp"

using namespace mpsched;

namespace {

// One product, one technology on machine 1.
Instance single_tech(double volume, double rate) {
  Instance inst;
  inst.num_machines = 1;
  inst.products = {{volume, {1}}};
  inst.technologies = {{1, {1}, rate}};
  inst.setups = {{0.0}};
  return inst;
}

// All technologies on one shared machine, one product each.
Instance one_machine_chain(const std::vector<double>& volumes,
                           const std::vector<double>& rates,
                           const std::vector<double>& setup_matrix) {
  Instance inst;
  inst.num_machines = 1;
  const int d = static_cast<int>(volumes.size());
  for (int i = 1; i <= d; ++i) {
    inst.products.push_back({volumes[i - 1], {i}});
    inst.technologies.push_back({i, {1}, rates[i - 1]});
  }
  inst.setups = {setup_matrix};
  return inst;
}

}  // namespace

TEST_CASE("horizon formula") {
  // Single product: H is the slowest technology's duration.
  CHECK(compute_horizon(single_tech(10.0, 2.0)) == doctest::Approx(5.0));

  // Two products with a shared machine and max setup 5: 2 + 2 + 1*5.
  Instance inst;
  inst.num_machines = 1;
  inst.products = {{4.0, {1}}, {6.0, {2}}};
  inst.technologies = {{1, {1}, 2.0}, {2, {1}, 3.0}};
  inst.setups = {{0.0, 5.0, 5.0, 0.0}};
  validate_instance(inst);
  CHECK(compute_horizon(inst) == doctest::Approx(9.0));

  // The max over a product's technologies selects the slower one.
  Instance two_tech;
  two_tech.num_machines = 2;
  two_tech.products = {{10.0, {1, 2}}};
  two_tech.technologies = {{1, {1}, 2.0}, {1, {2}, 5.0}};
  two_tech.setups = {std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
  validate_instance(two_tech);
  CHECK(compute_horizon(two_tech) == doctest::Approx(5.0));
}

TEST_CASE("triangle predicate") {
  Instance zeros = one_machine_chain({1, 1, 1}, {1, 1, 1},
                                     std::vector<double>(9, 0.0));
  CHECK(check_triangle(zeros));

  // s_uq = 1, s_qp = 1, s_up = 3 violates the inequality.
  std::vector<double> s = {0, 1, 3,
                           1, 0, 1,
                           1, 1, 0};
  Instance bad = one_machine_chain({1, 1, 1}, {1, 1, 1}, s);
  validate_instance(bad);
  CHECK_FALSE(check_triangle(bad));

  Instance closed = metric_closure(bad);
  CHECK(check_triangle(closed));
  CHECK(closed.setup(1, 1, 3) == doctest::Approx(2.0));  // via the middle tech
}

TEST_CASE("metric closure against exhaustive path enumeration") {
  // Independent oracle: minimum over all simple paths, all permutations.
  auto best_path = [](const Instance& inst, int from, int to) {
    const int d = inst.num_technologies();
    std::vector<int> middle;
    for (int u = 1; u <= d; ++u)
      if (u != from && u != to) middle.push_back(u);
    double best = inst.setup(1, from, to);
    std::sort(middle.begin(), middle.end());
    for (std::size_t take = 1; take <= middle.size(); ++take) {
      std::vector<int> chosen(middle.begin(), middle.end());
      do {
        double cost = inst.setup(1, from, chosen[0]);
        for (std::size_t i = 0; i + 1 < take; ++i)
          cost += inst.setup(1, chosen[i], chosen[i + 1]);
        cost += inst.setup(1, chosen[take - 1], to);
        best = std::min(best, cost);
      } while (std::next_permutation(chosen.begin(), chosen.end()));
    }
    return best;
  };

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorConfig cfg;
    cfg.k = 4;
    cfg.m = 1;
    cfg.u_max = 1;
    cfg.v_max = 5.0;
    cfg.s_max = 4.0;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const Instance closed = metric_closure(inst);
    for (int u = 1; u <= inst.num_technologies(); ++u) {
      for (int q = 1; q <= inst.num_technologies(); ++q) {
        if (u == q) continue;
        CHECK(closed.setup(1, u, q) ==
              doctest::Approx(best_path(inst, u, q)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("metric closure is idempotent and pointwise non-increasing") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorConfig cfg;
    cfg.k = 3;
    cfg.m = 3;
    cfg.u_max = 3;
    cfg.v_max = 8.0;
    cfg.s_max = 6.0;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const Instance closed = metric_closure(inst);
    CHECK(check_triangle(closed));
    const int d = inst.num_technologies();
    const Instance twice = metric_closure(closed);
    for (int l = 1; l <= inst.num_machines; ++l)
      for (int u = 1; u <= d; ++u)
        for (int q = 1; q <= d; ++q) {
          CHECK(closed.setup(l, u, q) <= inst.setup(l, u, q) + 1e-12);
          // Idempotent up to shortest-path round-off.
          CHECK(twice.setup(l, u, q) ==
                doctest::Approx(closed.setup(l, u, q)).epsilon(1e-12));
        }
  }

  // A machine used by a single technology has no triple to fix.
  Instance tiny = single_tech(3.0, 1.0);
  CHECK(metric_closure(tiny) == tiny);
}

TEST_CASE("generator determinism and ranges") {
  GeneratorConfig cfg;
  cfg.k = 4;
  cfg.m = 4;
  cfg.u_max = 3;
  cfg.v_max = 10.0;
  cfg.s_max = 5.0;
  cfg.n_max = 4;
  cfg.seed = 99;
  const Instance a = generate_instance(cfg);
  const Instance b = generate_instance(cfg);
  CHECK(a == b);
  CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());

  const int d = a.num_technologies();
  CHECK(d >= 4);
  CHECK(d <= 12);
  for (const Product& p : a.products) {
    CHECK(p.volume >= 1.0);
    CHECK(p.volume <= 10.0);
    CHECK(static_cast<int>(p.technologies.size()) <= 3);
  }
  for (const Technology& t : a.technologies) {
    CHECK(t.rate >= 1.0);
    CHECK(t.rate <= std::max(1.0, a.products[t.product - 1].volume / 2.0));
    CHECK(t.machines.size() >= 1);
    CHECK(t.machines.size() <= 4);
  }
  const auto machine_techs = a.machine_techs();
  for (int l = 1; l <= a.num_machines; ++l) {
    for (int u : machine_techs[l - 1]) {
      for (int q : machine_techs[l - 1]) {
        CHECK(a.setup(l, u, q) >= 0.0);
        CHECK(a.setup(l, u, q) <= 5.0);
        if (u == q) CHECK(a.setup(l, u, q) == 0.0);
      }
    }
  }
}

TEST_CASE("generated instances satisfy the invariants for 1000 seeds per series") {
  const GeneratorConfig series[] = {
      {4, 4, 3, 10.0, 5.0, 4, 0, TriangleMode::raw},
      {5, 7, 5, 12.0, 7.0, 5, 0, TriangleMode::raw},
      {7, 9, 6, 15.0, 9.0, 7, 0, TriangleMode::raw},
  };
  for (GeneratorConfig cfg : series) {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      cfg.seed = seed;
      CHECK_NOTHROW(generate_instance(cfg));  // validates on return
    }
  }
}

TEST_CASE("metric-closure mode yields triangle instances") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorConfig cfg;
    cfg.k = 4;
    cfg.m = 4;
    cfg.u_max = 3;
    cfg.v_max = 10.0;
    cfg.s_max = 5.0;
    cfg.seed = seed;
    cfg.triangle_mode = TriangleMode::metric_closure;
    const Instance inst = generate_instance(cfg);
    // Independent triple scan, not through check_triangle.
    const auto machine_techs = inst.machine_techs();
    for (int l = 1; l <= inst.num_machines; ++l)
      for (int u : machine_techs[l - 1])
        for (int q : machine_techs[l - 1])
          for (int p : machine_techs[l - 1])
            CHECK(inst.setup(l, u, q) + inst.setup(l, q, p) >=
                  inst.setup(l, u, p) - 1e-9);
    CHECK(check_triangle(inst));
  }
}

TEST_CASE("instance JSON round trip is value-identical") {
  GeneratorConfig cfg;
  cfg.k = 3;
  cfg.m = 3;
  cfg.u_max = 3;
  cfg.v_max = 9.0;
  cfg.s_max = 4.0;
  cfg.seed = 5;
  const Instance inst = generate_instance(cfg);
  const auto j = instance_to_json(inst);
  const Instance back = instance_from_json(j);
  CHECK(back == inst);
  CHECK(instance_to_json(back).dump() == j.dump());
}

TEST_CASE("instance JSON requires setup entries for machine-sharing pairs") {
  Instance inst;
  inst.num_machines = 1;
  inst.products = {{2.0, {1}}, {2.0, {2}}};
  inst.technologies = {{1, {1}, 1.0}, {2, {1}, 1.0}};
  inst.setups = {{0.0, 1.0, 2.0, 0.0}};
  auto j = instance_to_json(inst);
  CHECK(instance_from_json(j) == inst);

  j["setups"].erase(1);  // drop the (2 -> 1) entry
  CHECK_THROWS_AS((void)instance_from_json(j), std::invalid_argument);
}

TEST_CASE("invariant violations are rejected") {
  Instance inst = single_tech(1.0, 1.0);
  inst.products[0].volume = 0.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = single_tech(1.0, 1.0);
  inst.technologies[0].rate = -1.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = single_tech(1.0, 1.0);
  inst.technologies[0].machines = {};
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = single_tech(1.0, 1.0);
  inst.setups[0][0] = 2.0;  // nonzero diagonal
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  // A technology claimed by two products.
  Instance shared;
  shared.num_machines = 1;
  shared.products = {{1.0, {1}}, {1.0, {1}}};
  shared.technologies = {{1, {1}, 1.0}};
  shared.setups = {{0.0}};
  CHECK_THROWS_AS(validate_instance(shared), std::invalid_argument);
}
