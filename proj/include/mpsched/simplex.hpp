#pragma once

#include <vector>

#include "mpsched/linear_model.hpp"

namespace mpsched {

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  std::vector<double> values;  // one per model column
  double objective = 0.0;
  long iterations = 0;
};

// Solves the LP relaxation (integrality flags ignored) with a bounded-
// variable primal simplex: two phases with artificials only on rows whose
// slack cannot absorb the initial residual, Dantzig pricing with a
// least-index (Bland) fallback after a degenerate stall, and a final
// feasibility verification against the original rows. Optimal solutions
// satisfy all rows within 1e-7 and all bounds within 1e-9.
LpSolution solve_lp(const LinearModel& model);

// Same, with per-column bound overrides (used to fix binaries during
// branch-and-bound and enumeration).
LpSolution solve_lp(const LinearModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper);

}  // namespace mpsched
