#pragma once

#include <string>
#include <vector>

#include "mpsched/branch_and_bound.hpp"
#include "mpsched/formulations.hpp"
#include "mpsched/instance.hpp"

namespace mpsched {

struct Run {
  int technology = 0;  // 1-based
  int event_point = 0; // 1-based
  double start = 0.0;
  double finish = 0.0;
};

struct Schedule {
  std::vector<Run> runs;
  double makespan = 0.0;
  std::vector<double> produced;  // per product, index 0 = product 1
};

enum class ViolationKind { overlap, setup_gap, volume_shortfall, negative_time };

struct Violation {
  ViolationKind kind = ViolationKind::overlap;
  int machine = 0;     // offending machine (overlap/setup_gap)
  int product = 0;     // offending product (volume_shortfall)
  int tech_a = 0;
  int tech_b = 0;
  double time_a = 0.0;
  double time_b = 0.0;
  double deficit = 0.0;
  std::string describe() const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Extracts one run per active (u, n) with positive length. Inactive pairs
// (including the triangle model's negative-time placeholders) are dropped,
// as are zero-length active runs. Times within 1e-9 of zero are clamped.
// Throws std::invalid_argument if an active run starts below -1e-6 or the
// solution carries no incumbent.
Schedule decode(const BuiltModel& built, const MilpSolution& solution);

// Checks the schedule against the problem semantics, independently of
// either formulation: per machine, time-adjacent runs must be separated by
// the direct setup (zero for the same technology) and no two runs may
// overlap; per product, produced volume must reach the demand; all times
// must be nonnegative. Tolerance 1e-6 throughout.
ValidationReport validate(const Instance& inst, const Schedule& schedule);

// Largest finish time across runs; zero for an empty schedule.
double makespan(const Schedule& schedule);

}  // namespace mpsched
