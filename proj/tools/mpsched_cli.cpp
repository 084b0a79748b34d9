#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mpsched/bench.hpp"
#include "mpsched/branch_and_bound.hpp"
#include "mpsched/formulations.hpp"
#include "mpsched/json_io.hpp"
#include "mpsched/lp_format.hpp"
#include "mpsched/schedule.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

mpsched::TriangleMode parse_mode(const std::string& text) {
  if (text == "raw") return mpsched::TriangleMode::raw;
  if (text == "metric-closure") return mpsched::TriangleMode::metric_closure;
  throw CLI::ValidationError("--triangle-mode",
                             "expected 'raw' or 'metric-closure'");
}

mpsched::Variant parse_variant(const std::string& text) {
  if (text == "general") return mpsched::Variant::general;
  if (text == "triangle") return mpsched::Variant::triangle;
  throw CLI::ValidationError("--variant", "expected 'general' or 'triangle'");
}

mpsched::Instance load(const std::string& path) {
  try {
    return mpsched::load_instance(path);
  } catch (const std::invalid_argument&) {
    throw;  // malformed content, not an I/O failure
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

void save(const mpsched::Instance& inst, const std::string& path) {
  try {
    mpsched::save_instance(inst, path);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

struct GenArgs {
  std::string series;
  bool full = false;
  int k = 0, m = 0, umax = 0, nmax = 0;
  double vmax = 0.0, smax = -1.0;
  std::uint64_t seed = 1;
  int count = 0;
  std::string triangle_mode = "raw";
  std::string out = ".";
};

int run_gen(const GenArgs& args) {
  mpsched::GeneratorConfig cfg;
  int count = 1;
  if (!args.series.empty()) {
    const auto preset = mpsched::series_preset(args.series, args.full);
    cfg = preset.base;
    count = preset.count;
  }
  if (args.k > 0) cfg.k = args.k;
  if (args.m > 0) cfg.m = args.m;
  if (args.umax > 0) cfg.u_max = args.umax;
  if (args.vmax > 0.0) cfg.v_max = args.vmax;
  if (args.smax >= 0.0) cfg.s_max = args.smax;
  if (args.nmax > 0) cfg.n_max = args.nmax;
  if (args.count > 0) count = args.count;
  cfg.triangle_mode = parse_mode(args.triangle_mode);

  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) throw IoError("cannot create output directory: " + args.out);

  for (int i = 1; i <= count; ++i) {
    cfg.seed = args.seed + static_cast<std::uint64_t>(i) - 1;
    const mpsched::Instance inst = mpsched::generate_instance(cfg);
    char name[32];
    std::snprintf(name, sizeof(name), "instance_%03d.json", i);
    const std::string path =
        (std::filesystem::path(args.out) / name).string();
    save(inst, path);

    long sum_k = 0, sum_k2 = 0;
    for (const auto& techs : inst.machine_techs()) {
      sum_k += static_cast<long>(techs.size());
      sum_k2 += static_cast<long>(techs.size()) * techs.size();
    }
    std::printf("%s  d=%d  sum|K_l|=%ld  sum|K_l|^2=%ld  n_max=%d\n",
                path.c_str(), inst.num_technologies(), sum_k, sum_k2,
                cfg.n_max);
  }
  return kExitOk;
}

struct BuildArgs {
  std::string instance;
  std::string variant = "general";
  int nmax = 1;
  std::string out;
};

int run_build(const BuildArgs& args) {
  const mpsched::Instance inst = load(args.instance);
  const mpsched::Variant variant = parse_variant(args.variant);
  const mpsched::EventPointConfig cfg{args.nmax};
  const mpsched::BuiltModel built = variant == mpsched::Variant::general
                                        ? mpsched::build_general(inst, cfg)
                                        : mpsched::build_triangle(inst, cfg);
  if (built.triangle_warning)
    std::fprintf(stderr,
                 "warning: setups violate the triangle inequality; the "
                 "triangle model may miss the optimum\n");

  const auto predicted = mpsched::predict_stats(inst, cfg, variant);
  const auto actual = built.model.stats();
  std::printf("predicted vars=%d rows=%d, built vars=%d rows=%d\n",
              predicted.num_vars, predicted.num_rows, actual.num_vars,
              actual.num_rows);
  if (!(predicted == actual))
    throw InternalError("predicted and built model sizes disagree");

  if (!args.out.empty()) {
    std::ofstream file(args.out);
    if (!file) throw IoError("cannot write LP file: " + args.out);
    file << mpsched::export_lp_text(built.model);
  }
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string variant = "general";
  int nmax = 1;
  double time_limit = 0.0;
  std::int64_t node_limit = 0;
  std::string out;
};

int run_solve(const SolveArgs& args) {
  const mpsched::Instance inst = load(args.instance);
  const mpsched::Variant variant = parse_variant(args.variant);
  const mpsched::BuiltModel built =
      variant == mpsched::Variant::general
          ? mpsched::build_general(inst, {args.nmax})
          : mpsched::build_triangle(inst, {args.nmax});
  if (built.triangle_warning)
    std::fprintf(stderr,
                 "warning: setups violate the triangle inequality; the "
                 "triangle model may miss the optimum\n");

  mpsched::SolveConfig cfg;
  cfg.time_limit = args.time_limit;
  cfg.node_limit = args.node_limit;
  const mpsched::MilpSolution solution = mpsched::solve_milp(built.model, cfg);

  const char* status = solution.status == mpsched::MilpStatus::optimal
                           ? "optimal"
                           : solution.status == mpsched::MilpStatus::feasible
                                 ? "feasible"
                                 : solution.status == mpsched::MilpStatus::limit
                                       ? "limit"
                                       : "infeasible";
  if (solution.has_incumbent()) {
    const mpsched::Schedule schedule = mpsched::decode(built, solution);
    const auto report = mpsched::validate(inst, schedule);
    if (!report.ok) {
      for (const auto& violation : report.violations)
        std::fprintf(stderr, "validation: %s\n",
                     violation.describe().c_str());
      throw InternalError("decoded schedule failed validation");
    }
    std::printf("status %s  objective %.6f%s  nodes %lld  time %.3fs\n",
                status, solution.objective,
                solution.status == mpsched::MilpStatus::feasible ? "*" : "",
                static_cast<long long>(solution.nodes),
                solution.wall_seconds);
    if (!args.out.empty()) mpsched::save_schedule(schedule, args.out);
  } else {
    std::printf("status %s  nodes %lld  time %.3fs\n", status,
                static_cast<long long>(solution.nodes), solution.wall_seconds);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string series = "S1";
  bool full = false;
  std::uint64_t seed = 1;
  int count = 0;
  double time_limit = 30.0;
  std::int64_t node_limit = 0;
  bool sequential = false;
  std::string triangle_mode;
  std::string out;
};

int run_bench_cmd(const BenchArgs& args) {
  const auto preset = mpsched::series_preset(args.series, args.full);
  mpsched::BenchOptions options;
  options.time_limit = args.time_limit;
  options.node_limit = args.node_limit;
  options.sequential = args.sequential;
  if (!args.triangle_mode.empty())
    options.triangle_mode = parse_mode(args.triangle_mode);
  if (args.count > 0) options.count = args.count;

  const mpsched::BenchReport report =
      mpsched::run_bench(preset, args.seed, options);
  std::fputs(mpsched::bench_summary(report).c_str(), stdout);
  if (!args.out.empty()) {
    std::ofstream file(args.out);
    if (!file) throw IoError("cannot write report: " + args.out);
    file << mpsched::bench_csv(report);
  } else {
    std::fputs(mpsched::bench_csv(report).c_str(), stdout);
  }
  if (report.invariant_breach)
    throw InternalError("bench detected an internal invariant breach");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiproduct production scheduling via event-point MILP"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate instance files");
  cmd_gen->add_option("--series", gen.series, "series preset: S1, S2 or S3");
  cmd_gen->add_flag("--full", gen.full, "use the full (published) preset");
  cmd_gen->add_option("--k", gen.k, "number of products");
  cmd_gen->add_option("--m", gen.m, "number of machines");
  cmd_gen->add_option("--umax", gen.umax, "max technologies per product");
  cmd_gen->add_option("--vmax", gen.vmax, "max product volume");
  cmd_gen->add_option("--smax", gen.smax, "max setup duration");
  cmd_gen->add_option("--nmax", gen.nmax, "event points (informational)");
  cmd_gen->add_option("--seed", gen.seed, "base random seed");
  cmd_gen->add_option("--count", gen.count, "instances to generate");
  cmd_gen->add_option("--triangle-mode", gen.triangle_mode,
                      "raw or metric-closure");
  cmd_gen->add_option("--out", gen.out, "output directory");

  BuildArgs build;
  CLI::App* cmd_build = app.add_subcommand("build", "build a model, export LP");
  cmd_build->add_option("--instance", build.instance, "instance JSON file")
      ->required();
  cmd_build->add_option("--variant", build.variant, "general or triangle");
  cmd_build->add_option("--nmax", build.nmax, "number of event points")
      ->required();
  cmd_build->add_option("--out", build.out, "LP output file");

  SolveArgs solve;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve one instance");
  cmd_solve->add_option("--instance", solve.instance, "instance JSON file")
      ->required();
  cmd_solve->add_option("--variant", solve.variant, "general or triangle");
  cmd_solve->add_option("--nmax", solve.nmax, "number of event points")
      ->required();
  cmd_solve->add_option("--time-limit", solve.time_limit, "seconds, 0 = none");
  cmd_solve->add_option("--node-limit", solve.node_limit, "nodes, 0 = none");
  cmd_solve->add_option("--out", solve.out, "schedule JSON output file");

  BenchArgs bench;
  CLI::App* cmd_bench = app.add_subcommand("bench", "run a series benchmark");
  cmd_bench->add_option("--series", bench.series, "series preset: S1, S2 or S3");
  cmd_bench->add_flag("--full", bench.full, "use the full (published) preset");
  cmd_bench->add_option("--seed", bench.seed, "base random seed");
  cmd_bench->add_option("--count", bench.count, "instances to run");
  cmd_bench->add_option("--time-limit", bench.time_limit,
                        "per-solve seconds, 0 = none");
  cmd_bench->add_option("--node-limit", bench.node_limit,
                        "per-solve nodes, 0 = none");
  cmd_bench->add_flag("--sequential", bench.sequential,
                      "solve instances one at a time");
  cmd_bench->add_option("--triangle-mode", bench.triangle_mode,
                        "raw or metric-closure (preset override)");
  cmd_bench->add_option("--out", bench.out, "CSV report file");

  try {
    app.parse(argc, argv);
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_build->parsed()) return run_build(build);
    if (cmd_solve->parsed()) return run_solve(solve);
    if (cmd_bench->parsed()) return run_bench_cmd(bench);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
