#pragma once

#include <cstdint>
#include <vector>

namespace mpsched {

// A production recipe: running it occupies every machine in `machines`
// simultaneously and produces the owning product at `rate` per unit time.
struct Technology {
  int product = 0;            // owning product id, 1-based
  std::vector<int> machines;  // machine ids, 1-based, sorted, no duplicates
  double rate = 0.0;

  bool operator==(const Technology&) const = default;
};

struct Product {
  double volume = 0.0;
  std::vector<int> technologies;  // technology ids, 1-based

  bool operator==(const Product&) const = default;
};

// A scheduling problem: k products, m machines, d technologies, and one
// setup matrix per machine. Instances are immutable after construction and
// safe to share across concurrent solves.
struct Instance {
  int num_machines = 0;
  std::vector<Product> products;
  std::vector<Technology> technologies;
  // setups[l-1] is a dense d x d matrix in technology-id order; the entry
  // for (u, q) is meaningful only when both u and q use machine l.
  std::vector<std::vector<double>> setups;

  int num_products() const { return static_cast<int>(products.size()); }
  int num_technologies() const { return static_cast<int>(technologies.size()); }

  double setup(int machine, int from_tech, int to_tech) const {
    return setups[machine - 1]
                 [(from_tech - 1) * technologies.size() + (to_tech - 1)];
  }

  // Technologies using each machine (the sets K_l), 1-based ids, sorted.
  std::vector<std::vector<int>> machine_techs() const;

  bool operator==(const Instance&) const = default;
};

// Throws std::invalid_argument if any structural invariant is broken:
// positive volumes and rates, non-empty machine sets within range, every
// technology owned by exactly one product, setups finite and >= 0 with a
// zero diagonal.
void validate_instance(const Instance& inst);

// Upper bound on the optimal makespan:
//   H = sum_i max_{u in U_i} V_i/a_u + (k-1) * max_{l,u,q} s_luq.
double compute_horizon(const Instance& inst);

// True iff s_luq + s_lqp >= s_lup holds for every machine l and every
// ordered triple of technologies using l, within `tol`.
bool check_triangle(const Instance& inst, double tol = 1e-9);

// Replaces each machine's setup matrix by its all-pairs shortest-path
// distances. The result satisfies check_triangle, no entry increases, and
// the operation is idempotent.
Instance metric_closure(const Instance& inst);

enum class TriangleMode { raw, metric_closure };

struct GeneratorConfig {
  int k = 1;
  int m = 1;
  int u_max = 1;
  double v_max = 1.0;
  double s_max = 0.0;
  int n_max = 1;  // carried for model building; not instance data
  std::uint64_t seed = 0;
  TriangleMode triangle_mode = TriangleMode::raw;
};

// Samples an instance with |U_i| ~ U{1..u_max}, V_i ~ U[1,v_max],
// a_u ~ U[1, max(1, V_i/2)], |M_u| ~ U{1..m} with machines drawn without
// replacement, and s_luq ~ U[0,s_max] for u != q. Deterministic for a
// fixed seed (mt19937_64 with fixed draw order).
Instance generate_instance(const GeneratorConfig& cfg);

}  // namespace mpsched
