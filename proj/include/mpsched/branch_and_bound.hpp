#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpsched/linear_model.hpp"

namespace mpsched {

enum class MilpStatus { optimal, feasible, infeasible, limit };

struct SolveConfig {
  double int_tol = 1e-6;   // integrality acceptance for binaries
  double gap_tol = 1e-6;   // relative optimality gap
  std::int64_t node_limit = 0;  // 0 = unlimited
  double time_limit = 0.0;      // seconds, 0 = unlimited
};

struct MilpSolution {
  MilpStatus status = MilpStatus::infeasible;
  std::vector<double> values;
  double objective = 0.0;
  double best_bound = 0.0;
  std::int64_t nodes = 0;
  double wall_seconds = 0.0;

  bool has_incumbent() const {
    return status == MilpStatus::optimal || status == MilpStatus::feasible;
  }
};

// Best-bound branch-and-bound over the binary columns. Branching picks the
// most fractional binary (ties by lowest column index); node ties break by
// depth, then creation order. Incumbents are accepted only after re-solving
// the LP with the binaries fixed, which recovers clean continuous values.
// Deterministic for a fixed (model, config) when no time limit is set.
// `feasible` reports a limit hit with an incumbent, `limit` one without.
MilpSolution solve_milp(const LinearModel& model, const SolveConfig& cfg = {});

// Enumerates every 0/1 assignment of the binary columns (at most 16),
// fixes them as bounds, solves the LP on each, and returns the minimum
// objective over feasible assignments, or nullopt if none is feasible.
// Rows touching only binary columns are checked before the LP call.
std::optional<double> brute_force_oracle(const LinearModel& model);

}  // namespace mpsched
