#include "mpsched/bench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "mpsched/branch_and_bound.hpp"
#include "mpsched/formulations.hpp"
#include "mpsched/schedule.hpp"

namespace mpsched {

namespace {

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

const char* status_name(MilpStatus status) {
  switch (status) {
    case MilpStatus::optimal: return "optimal";
    case MilpStatus::feasible: return "feasible";
    case MilpStatus::infeasible: return "infeasible";
    case MilpStatus::limit: return "limit";
  }
  return "error";
}

std::string fmt(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::optional<double> median(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct SideResult {
  std::optional<double> objective;
  double seconds = 0.0;
  std::string status;
  bool validated = false;
};

SideResult solve_side(const Instance& inst, Variant variant, int n_max,
                      const BenchOptions& options) {
  SideResult side;
  BuiltModel built = variant == Variant::general
                         ? build_general(inst, {n_max})
                         : build_triangle(inst, {n_max});
  if (built.model.stats() != predict_stats(inst, {n_max}, variant))
    throw std::runtime_error("predicted and built model sizes disagree");
  SolveConfig cfg;
  cfg.time_limit = options.time_limit;
  cfg.node_limit = options.node_limit;
  const MilpSolution solution = solve_milp(built.model, cfg);
  side.seconds = solution.wall_seconds;
  side.status = status_name(solution.status);
  if (solution.has_incumbent()) {
    const Schedule schedule = decode(built, solution);
    if (!validate(inst, schedule).ok) {
      side.status = "error";  // never report an unvalidated objective
      return side;
    }
    side.objective = solution.objective;
    side.validated = true;
  }
  return side;
}

BenchRow run_instance(const SeriesPreset& preset, std::uint64_t seed, int id,
                      const BenchOptions& options, bool* breach) {
  BenchRow row;
  row.id = id;
  GeneratorConfig cfg = preset.base;
  cfg.seed = seed + static_cast<std::uint64_t>(id) - 1;
  if (options.triangle_mode) cfg.triangle_mode = *options.triangle_mode;
  try {
    const Instance inst = generate_instance(cfg);
    row.triangle_holds = check_triangle(inst);
    row.num_vars = predict_stats(inst, {cfg.n_max}, Variant::general).num_vars;
    row.num_rows_general =
        predict_stats(inst, {cfg.n_max}, Variant::general).num_rows;
    row.num_rows_triangle =
        predict_stats(inst, {cfg.n_max}, Variant::triangle).num_rows;

    const SideResult general =
        solve_side(inst, Variant::general, cfg.n_max, options);
    const SideResult triangle =
        solve_side(inst, Variant::triangle, cfg.n_max, options);
    row.obj_general = general.objective;
    row.obj_triangle = triangle.objective;
    row.time_general = general.seconds;
    row.time_triangle = triangle.seconds;
    row.status_general = general.status;
    row.status_triangle = triangle.status;
    if (general.status == "error" || triangle.status == "error") *breach = true;

    if (row.triangle_holds && general.status == "optimal" &&
        triangle.status == "optimal" &&
        std::abs(*general.objective - *triangle.objective) > 1e-6) {
      *breach = true;
      row.note = "objective mismatch on a triangle instance";
    }
  } catch (const std::exception& e) {
    row.status_general = row.status_general.empty() ? "error" : row.status_general;
    row.status_triangle = "error";
    row.note = e.what();
    *breach = true;
  }
  return row;
}

}  // namespace

SeriesPreset series_preset(const std::string& name, bool full) {
  const std::string key = upper(name);
  SeriesPreset preset;
  preset.name = key;
  preset.count = 10;
  GeneratorConfig& b = preset.base;
  if (key == "S1") {
    if (full) { b.k = 4; b.m = 4; b.u_max = 3; b.v_max = 10; b.s_max = 5; b.n_max = 4; }
    else      { b.k = 3; b.m = 3; b.u_max = 2; b.v_max = 10; b.s_max = 5; b.n_max = 3; }
  } else if (key == "S2") {
    if (full) { b.k = 5; b.m = 7; b.u_max = 5; b.v_max = 12; b.s_max = 7; b.n_max = 5; }
    else      { b.k = 3; b.m = 3; b.u_max = 3; b.v_max = 12; b.s_max = 7; b.n_max = 3; }
  } else if (key == "S3") {
    // Shrunk presets keep the published n_max = k margin: with fewer event
    // points than products, an instance whose technologies all share one
    // machine has no feasible schedule.
    if (full) { b.k = 7; b.m = 9; b.u_max = 6; b.v_max = 15; b.s_max = 9; b.n_max = 7; }
    else      { b.k = 4; b.m = 4; b.u_max = 3; b.v_max = 15; b.s_max = 9; b.n_max = 4; }
  } else {
    throw std::invalid_argument("unknown series: " + name);
  }
  return preset;
}

BenchReport run_bench(const SeriesPreset& preset, std::uint64_t seed,
                      const BenchOptions& options) {
  BenchReport report;
  report.preset = preset;
  report.seed = seed;
  const int count = options.count.value_or(preset.count);
  report.rows.resize(count);

  std::vector<bool> breaches(count, false);
  if (options.sequential || count <= 1) {
    for (int i = 0; i < count; ++i) {
      bool breach = false;
      report.rows[i] = run_instance(preset, seed, i + 1, options, &breach);
      breaches[i] = breach;
    }
  } else {
    std::vector<std::future<std::pair<BenchRow, bool>>> futures;
    futures.reserve(count);
    for (int i = 0; i < count; ++i) {
      futures.push_back(std::async(std::launch::async, [&, i] {
        bool breach = false;
        BenchRow row = run_instance(preset, seed, i + 1, options, &breach);
        return std::make_pair(std::move(row), breach);
      }));
    }
    for (int i = 0; i < count; ++i) {
      auto [row, breach] = futures[i].get();
      report.rows[i] = std::move(row);  // order-stable by instance id
      breaches[i] = breach;
    }
  }
  for (bool breach : breaches) report.invariant_breach |= breach;
  return report;
}

std::optional<double> BenchReport::median_time_general() const {
  std::vector<double> times;
  for (const BenchRow& row : rows) times.push_back(row.time_general);
  return median(std::move(times));
}

std::optional<double> BenchReport::median_time_triangle() const {
  std::vector<double> times;
  for (const BenchRow& row : rows) times.push_back(row.time_triangle);
  return median(std::move(times));
}

std::optional<double> BenchReport::median_time_ratio() const {
  std::vector<double> ratios;
  for (const BenchRow& row : rows)
    if (row.time_triangle > 0.0)
      ratios.push_back(row.time_general / row.time_triangle);
  return median(std::move(ratios));
}

std::string bench_csv(const BenchReport& report) {
  std::string out = "id,var,eqv,eqv_tri,c,c_tri,t,t_tri,status,status_tri\n";
  char buf[64];
  for (const BenchRow& row : report.rows) {
    out += std::to_string(row.id) + ',' + std::to_string(row.num_vars) + ',' +
           std::to_string(row.num_rows_general) + ',' +
           std::to_string(row.num_rows_triangle) + ',';
    if (row.obj_general) out += fmt(*row.obj_general);
    out += ',';
    if (row.obj_triangle) out += fmt(*row.obj_triangle);
    out += ',';
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f", row.time_general,
                  row.time_triangle);
    out += buf;
    out += ',' + row.status_general + ',' + row.status_triangle + '\n';
  }
  return out;
}

std::string bench_summary(const BenchReport& report) {
  std::ostringstream out;
  out << "series " << report.preset.name << " seed " << report.seed << '\n';
  out << "  id   var    eqv  eqv_tri           c       c_tri       t   t_tri\n";
  char buf[160];
  for (const BenchRow& row : report.rows) {
    auto obj_text = [](const std::optional<double>& obj,
                       const std::string& status) {
      if (!obj) return std::string("-");
      char tmp[48];
      std::snprintf(tmp, sizeof(tmp), "%.3f%s", *obj,
                    status == "feasible" ? "*" : "");
      return std::string(tmp);
    };
    std::snprintf(buf, sizeof(buf), "%4d %5d %6d %8d %11s %11s %7.2f %7.2f\n",
                  row.id, row.num_vars, row.num_rows_general,
                  row.num_rows_triangle,
                  obj_text(row.obj_general, row.status_general).c_str(),
                  obj_text(row.obj_triangle, row.status_triangle).c_str(),
                  row.time_general, row.time_triangle);
    out << buf;
  }
  int dominated = 0;
  for (const BenchRow& row : report.rows)
    if (row.num_rows_triangle < row.num_rows_general) ++dominated;
  out << "rows with fewer triangle-model constraints: " << dominated << "/"
      << report.rows.size() << '\n';
  if (const auto mg = report.median_time_general())
    out << "median t " << *mg;
  if (const auto mt = report.median_time_triangle())
    out << "  median t_tri " << *mt;
  if (const auto ratio = report.median_time_ratio())
    out << "  median t/t_tri " << *ratio;
  out << '\n';
  return out.str();
}

}  // namespace mpsched
