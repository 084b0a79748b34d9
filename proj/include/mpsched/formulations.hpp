#pragma once

#include <string>

#include "mpsched/instance.hpp"
#include "mpsched/linear_model.hpp"

namespace mpsched {

enum class Variant { general, triangle };

struct EventPointConfig {
  int n_max = 1;
};

// Maps semantic variables onto model column indices. Columns are laid out
// as w(u,n), y(l,n), Ts(u,n), Tf(u,n), Cmax, each grid in index-major
// order, identically for both variants. Indices are 1-based.
struct VariableMap {
  int d = 0;
  int m = 0;
  int n_max = 0;

  int w(int u, int n) const { return (u - 1) * n_max + (n - 1); }
  int y(int l, int n) const { return d * n_max + (l - 1) * n_max + (n - 1); }
  int ts(int u, int n) const {
    return (d + m) * n_max + (u - 1) * n_max + (n - 1);
  }
  int tf(int u, int n) const {
    return (2 * d + m) * n_max + (u - 1) * n_max + (n - 1);
  }
  int cmax() const { return (3 * d + m) * n_max; }
  int num_columns() const { return (3 * d + m) * n_max + 1; }
};

struct BuiltModel {
  LinearModel model;
  VariableMap vars;
  Instance instance;  // the problem the model was built from
  double horizon = 0.0;
  Variant variant = Variant::general;
  // Set when the triangle variant is built on setups that violate the
  // triangle inequality; the model then need not attain the true optimum.
  bool triangle_warning = false;
};

// Event-point model with big-M changeover rows between every ordered pair
// of event points on a machine, deactivated by interior machine activity.
BuiltModel build_general(const Instance& inst, EventPointConfig cfg);

// Event-point model for triangle-inequality setups: changeovers couple
// only consecutive event points, and idle start/finish variables may go
// negative (down to -H) so a machine's first technology pays no setup.
BuiltModel build_triangle(const Instance& inst, EventPointConfig cfg);

// Closed-form column/row counts of the two builders, without building:
//   vars          = (3d + m) n + 1
//   rows general  = 3dn + mn + k + B n(n-1)/2
//   rows triangle = 5dn - d + mn + k + (B - A)(n-1)
// with A = sum_l |K_l| and B = sum_l |K_l|^2.
ModelStats predict_stats(const Instance& inst, EventPointConfig cfg,
                         Variant variant);

}  // namespace mpsched
