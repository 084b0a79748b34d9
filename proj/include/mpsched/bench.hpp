#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpsched/instance.hpp"

namespace mpsched {

// Benchmark series. The full presets match the published parameter table;
// the default desk-scale presets shrink them so that both formulations
// solve to optimality in seconds on one core (mapping documented in the
// README).
struct SeriesPreset {
  std::string name;
  int count = 10;
  GeneratorConfig base;  // seed filled per instance at run time
};

// name is one of "S1", "S2", "S3" (case-insensitive).
SeriesPreset series_preset(const std::string& name, bool full);

struct BenchRow {
  int id = 0;
  int num_vars = 0;
  int num_rows_general = 0;
  int num_rows_triangle = 0;
  std::optional<double> obj_general;
  std::optional<double> obj_triangle;
  double time_general = 0.0;
  double time_triangle = 0.0;
  std::string status_general;   // optimal|feasible|infeasible|limit|error
  std::string status_triangle;
  bool triangle_holds = false;
  std::string note;
};

struct BenchOptions {
  double time_limit = 0.0;        // per solve, seconds, 0 = unlimited
  std::int64_t node_limit = 0;    // per solve, 0 = unlimited
  bool sequential = false;
  std::optional<TriangleMode> triangle_mode;  // overrides the preset
  std::optional<int> count;                   // overrides the preset
};

struct BenchReport {
  SeriesPreset preset;
  std::uint64_t seed = 0;
  std::vector<BenchRow> rows;
  // True if a row violated an internal invariant (objectives of the two
  // formulations disagreeing on a triangle instance, or a reported optimum
  // failing schedule validation).
  bool invariant_breach = false;

  std::optional<double> median_time_general() const;
  std::optional<double> median_time_triangle() const;
  // Median over rows of t / t_triangle; reported for inspection only.
  std::optional<double> median_time_ratio() const;
};

// Generates `count` instances (instance i uses seed + i - 1), builds both
// formulations, solves, decodes and validates each reported solution, and
// fills one row per instance. An objective whose decoded schedule fails
// validation is never reported; the row is marked "error" instead.
BenchReport run_bench(const SeriesPreset& preset, std::uint64_t seed,
                      const BenchOptions& options);

// CSV with header id,var,eqv,eqv_tri,c,c_tri,t,t_tri,status,status_tri.
std::string bench_csv(const BenchReport& report);

// Human-readable table plus the aggregate medians, flagging
// feasible-at-limit objectives with '*'.
std::string bench_summary(const BenchReport& report);

}  // namespace mpsched
