#include "mpsched/formulations.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace mpsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string id2(const char* tag, int a, int b) {
  return std::string(tag) + '_' + std::to_string(a) + '_' + std::to_string(b);
}

// Longest admissible run of any technology of the product owning u.
double duration_cap(const Instance& inst, int u) {
  const Product& product = inst.products[inst.technologies[u - 1].product - 1];
  double cap = 0.0;
  for (int q : product.technologies)
    cap = std::max(cap, product.volume / inst.technologies[q - 1].rate);
  return cap;
}

struct Grid {
  VariableMap vars;
  double horizon;
  std::vector<std::vector<int>> machine_techs;
};

// Columns are identical for both variants except the start/finish lower
// bounds, which the triangle variant relaxes to -H.
Grid add_columns(LinearModel& model, const Instance& inst, int n_max,
                 double time_lower) {
  Grid grid;
  grid.vars = {inst.num_technologies(), inst.num_machines, n_max};
  grid.horizon = compute_horizon(inst);
  grid.machine_techs = inst.machine_techs();
  const VariableMap& v = grid.vars;
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= n_max; ++n)
      model.add_column(id2("w", u, n), 0.0, 1.0, VarType::binary);
  for (int l = 1; l <= v.m; ++l)
    for (int n = 1; n <= n_max; ++n)
      model.add_column(id2("y", l, n), 0.0, 1.0, VarType::binary);
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= n_max; ++n)
      model.add_column(id2("Ts", u, n), time_lower, kInf, VarType::continuous);
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= n_max; ++n)
      model.add_column(id2("Tf", u, n), time_lower, kInf, VarType::continuous);
  const int cmax = model.add_column("Cmax", 0.0, kInf, VarType::continuous);
  if (cmax != v.cmax())
    throw std::logic_error("variable map out of sync with columns");
  model.set_objective({{cmax, 1.0}});
  return grid;
}

// Rows shared verbatim by both variants: finish below the makespan, one
// technology per machine per event point, nonnegative run lengths capped
// by activation, and the per-product volume demand.
void add_common_rows_head(LinearModel& model, const Grid& g) {
  const VariableMap& v = g.vars;
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= v.n_max; ++n)
      model.add_row(id2("fin", u, n),
                    {{v.tf(u, n), 1.0}, {v.cmax(), -1.0}}, RowSense::le, 0.0);
  for (int l = 1; l <= v.m; ++l)
    for (int n = 1; n <= v.n_max; ++n) {
      std::vector<std::pair<int, double>> coeffs;
      for (int u : g.machine_techs[l - 1]) coeffs.emplace_back(v.w(u, n), 1.0);
      coeffs.emplace_back(v.y(l, n), -1.0);
      model.add_row(id2("use", l, n), std::move(coeffs), RowSense::eq, 0.0);
    }
}

void add_common_rows_tail(LinearModel& model, const Instance& inst,
                          const Grid& g) {
  const VariableMap& v = g.vars;
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= v.n_max; ++n)
      model.add_row(id2("dur", u, n),
                    {{v.tf(u, n), 1.0}, {v.ts(u, n), -1.0}}, RowSense::ge, 0.0);
  for (int u = 1; u <= v.d; ++u) {
    const double cap = duration_cap(inst, u);
    for (int n = 1; n <= v.n_max; ++n)
      model.add_row(id2("cap", u, n),
                    {{v.tf(u, n), 1.0},
                     {v.ts(u, n), -1.0},
                     {v.w(u, n), -cap}},
                    RowSense::le, 0.0);
  }
  for (int i = 1; i <= inst.num_products(); ++i) {
    std::vector<std::pair<int, double>> coeffs;
    for (int u : inst.products[i - 1].technologies) {
      const double rate = inst.technologies[u - 1].rate;
      for (int n = 1; n <= v.n_max; ++n) {
        coeffs.emplace_back(v.tf(u, n), rate);
        coeffs.emplace_back(v.ts(u, n), -rate);
      }
    }
    model.add_row("vol_" + std::to_string(i), std::move(coeffs), RowSense::ge,
                  inst.products[i - 1].volume);
  }
}

}  // namespace

BuiltModel build_general(const Instance& inst, EventPointConfig cfg) {
  if (cfg.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  BuiltModel built;
  built.variant = Variant::general;
  built.instance = inst;
  Grid g = add_columns(built.model, inst, cfg.n_max, 0.0);
  built.vars = g.vars;
  built.horizon = g.horizon;
  const VariableMap& v = g.vars;
  const double h = g.horizon;

  add_common_rows_head(built.model, g);

  // Changeover precedence for every ordered pair (u later, q earlier),
  // including u == q, deactivated unless both are active and the machine
  // idles at every interior event point:
  //   Ts[u,n] - Tf[q,nt] - H w[u,n] - H w[q,nt] + H sum_interior y[l,n']
  //     >= s_lqu - 2H
  for (int l = 1; l <= v.m; ++l) {
    for (int u : g.machine_techs[l - 1]) {
      for (int q : g.machine_techs[l - 1]) {
        for (int n = 2; n <= v.n_max; ++n) {
          for (int nt = 1; nt < n; ++nt) {
            std::vector<std::pair<int, double>> coeffs = {
                {v.ts(u, n), 1.0},
                {v.tf(q, nt), -1.0},
                {v.w(u, n), -h},
                {v.w(q, nt), -h}};
            for (int mid = nt + 1; mid < n; ++mid)
              coeffs.emplace_back(v.y(l, mid), h);
            built.model.add_row("seq_" + std::to_string(l) + '_' +
                                    std::to_string(u) + '_' +
                                    std::to_string(q) + '_' +
                                    std::to_string(n) + '_' +
                                    std::to_string(nt),
                                std::move(coeffs), RowSense::ge,
                                inst.setup(l, q, u) - 2.0 * h);
          }
        }
      }
    }
  }

  add_common_rows_tail(built.model, inst, g);
  return built;
}

BuiltModel build_triangle(const Instance& inst, EventPointConfig cfg) {
  if (cfg.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  BuiltModel built;
  built.variant = Variant::triangle;
  built.instance = inst;
  built.triangle_warning = !check_triangle(inst);
  Grid g = add_columns(built.model, inst, cfg.n_max, -compute_horizon(inst));
  built.vars = g.vars;
  built.horizon = g.horizon;
  const VariableMap& v = g.vars;
  const double h = g.horizon;

  add_common_rows_head(built.model, g);

  // Same-technology chaining between consecutive event points.
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n < v.n_max; ++n)
      built.model.add_row(id2("chain", u, n),
                          {{v.ts(u, n + 1), 1.0}, {v.tf(u, n), -1.0}},
                          RowSense::ge, 0.0);

  // Changeover between consecutive event points, active only when the
  // later technology runs:
  //   Ts[u,n+1] - Tf[q,n] - (s_lqu + H) w[u,n+1] >= -H
  for (int l = 1; l <= v.m; ++l) {
    for (int u : g.machine_techs[l - 1]) {
      for (int q : g.machine_techs[l - 1]) {
        if (u == q) continue;
        for (int n = 1; n < v.n_max; ++n) {
          built.model.add_row(
              "tseq_" + std::to_string(l) + '_' + std::to_string(u) + '_' +
                  std::to_string(q) + '_' + std::to_string(n),
              {{v.ts(u, n + 1), 1.0},
               {v.tf(q, n), -1.0},
               {v.w(u, n + 1), -(inst.setup(l, q, u) + h)}},
              RowSense::ge, -h);
        }
      }
    }
  }

  // Active technologies must start at nonnegative times; idle ones may sit
  // anywhere above -H. Couples Ts with w, so it is a row, not a bound.
  for (int u = 1; u <= v.d; ++u)
    for (int n = 1; n <= v.n_max; ++n)
      built.model.add_row(id2("act", u, n),
                          {{v.ts(u, n), 1.0}, {v.w(u, n), -h}}, RowSense::ge,
                          -h);

  add_common_rows_tail(built.model, inst, g);
  return built;
}

ModelStats predict_stats(const Instance& inst, EventPointConfig cfg,
                         Variant variant) {
  const long long d = inst.num_technologies();
  const long long m = inst.num_machines;
  const long long k = inst.num_products();
  const long long n = cfg.n_max;
  long long a = 0, b = 0;
  for (const auto& techs : inst.machine_techs()) {
    const long long size = static_cast<long long>(techs.size());
    a += size;
    b += size * size;
  }
  const long long vars = (3 * d + m) * n + 1;
  long long rows = 0;
  if (variant == Variant::general) {
    rows = 3 * d * n + m * n + k + b * n * (n - 1) / 2;
  } else {
    rows = 5 * d * n - d + m * n + k + (b - a) * (n - 1);
  }
  return {static_cast<int>(vars), static_cast<int>(rows)};
}

}  // namespace mpsched
