#include "mpsched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpsched {

namespace {

constexpr double kTol = 1e-6;   // matches the MILP feasibility tolerance
constexpr double kClamp = 1e-9;

double clamp_time(double t) { return std::abs(t) < kClamp ? 0.0 : t; }

}  // namespace

std::string Violation::describe() const {
  switch (kind) {
    case ViolationKind::overlap:
      return "overlap on machine " + std::to_string(machine) +
             ": technologies " + std::to_string(tech_a) + " and " +
             std::to_string(tech_b);
    case ViolationKind::setup_gap:
      return "setup gap on machine " + std::to_string(machine) +
             ": technology " + std::to_string(tech_b) + " starts " +
             std::to_string(deficit) + " too early after technology " +
             std::to_string(tech_a);
    case ViolationKind::volume_shortfall:
      return "product " + std::to_string(product) + " short by " +
             std::to_string(deficit);
    case ViolationKind::negative_time:
      return "technology " + std::to_string(tech_a) + " runs at negative time";
  }
  return "";
}

Schedule decode(const BuiltModel& built, const MilpSolution& solution) {
  if (!solution.has_incumbent())
    throw std::invalid_argument("cannot decode a solution without an incumbent");
  const VariableMap& v = built.vars;
  const Instance& inst = built.instance;
  Schedule schedule;
  schedule.produced.assign(inst.num_products(), 0.0);

  for (int u = 1; u <= v.d; ++u) {
    for (int n = 1; n <= v.n_max; ++n) {
      if (solution.values[v.w(u, n)] < 0.5) continue;
      const double start = clamp_time(solution.values[v.ts(u, n)]);
      const double finish = clamp_time(solution.values[v.tf(u, n)]);
      if (finish - start <= kClamp) continue;  // zero-length activation
      if (start < -kTol)
        throw std::invalid_argument("active run with negative start time");
      schedule.runs.push_back({u, n, start, finish});
      schedule.makespan = std::max(schedule.makespan, finish);
      const Technology& tech = inst.technologies[u - 1];
      schedule.produced[tech.product - 1] += tech.rate * (finish - start);
    }
  }
  return schedule;
}

ValidationReport validate(const Instance& inst, const Schedule& schedule) {
  ValidationReport report;
  auto flag = [&report](Violation violation) {
    report.ok = false;
    report.violations.push_back(std::move(violation));
  };

  for (const Run& run : schedule.runs) {
    if (run.start < -kTol || run.finish < -kTol) {
      flag({ViolationKind::negative_time, 0, 0, run.technology, 0,
            run.start, run.finish, -std::min(run.start, run.finish)});
    }
  }

  for (int l = 1; l <= inst.num_machines; ++l) {
    std::vector<const Run*> on_machine;
    for (const Run& run : schedule.runs) {
      const auto& machines = inst.technologies[run.technology - 1].machines;
      if (std::find(machines.begin(), machines.end(), l) != machines.end())
        on_machine.push_back(&run);
    }
    std::sort(on_machine.begin(), on_machine.end(),
              [](const Run* a, const Run* b) {
                if (a->start != b->start) return a->start < b->start;
                if (a->finish != b->finish) return a->finish < b->finish;
                return a->technology < b->technology;
              });
    for (std::size_t i = 0; i < on_machine.size(); ++i) {
      for (std::size_t j = i + 1; j < on_machine.size(); ++j) {
        const Run& a = *on_machine[i];
        const Run& b = *on_machine[j];
        if (b.start < a.finish - kTol && a.start < b.finish - kTol) {
          flag({ViolationKind::overlap, l, 0, a.technology, b.technology,
                a.finish, b.start, std::min(a.finish, b.finish) -
                                       std::max(a.start, b.start)});
        }
      }
    }
    for (std::size_t i = 0; i + 1 < on_machine.size(); ++i) {
      const Run& a = *on_machine[i];
      const Run& b = *on_machine[i + 1];
      const double setup =
          a.technology == b.technology
              ? 0.0
              : inst.setup(l, a.technology, b.technology);
      if (b.start < a.finish + setup - kTol) {
        flag({ViolationKind::setup_gap, l, 0, a.technology, b.technology,
              a.finish, b.start, a.finish + setup - b.start});
      }
    }
  }

  for (int i = 1; i <= inst.num_products(); ++i) {
    double produced = 0.0;
    for (const Run& run : schedule.runs) {
      if (inst.technologies[run.technology - 1].product == i)
        produced += inst.technologies[run.technology - 1].rate *
                    (run.finish - run.start);
    }
    const double demand = inst.products[i - 1].volume;
    if (produced < demand - kTol) {
      flag({ViolationKind::volume_shortfall, 0, i, 0, 0, produced, demand,
            demand - produced});
    }
  }
  return report;
}

double makespan(const Schedule& schedule) {
  double horizon = 0.0;
  for (const Run& run : schedule.runs)
    horizon = std::max(horizon, run.finish);
  return horizon;
}

}  // namespace mpsched
