#include "mpsched/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mpsched/kernels.hpp"

namespace mpsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;   // smallest admissible pivot magnitude
constexpr double kDualTol = 1e-9;    // reduced-cost optimality threshold
constexpr double kTieTol = 1e-9;     // ratio-test tie window
constexpr double kRowTol = 1e-7;     // row feasibility (absolute, scaled)
constexpr double kBoundTol = 1e-9;
constexpr int kStallLimit = 200;     // degenerate steps before Bland kicks in

enum ColStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFreeZero };

enum class PhaseExit { optimal, unbounded, iteration_limit };

class SimplexEngine {
 public:
  SimplexEngine(const LinearModel& model, const std::vector<double>& lower,
                const std::vector<double>& upper, bool bland_from_start)
      : model_(model), bland_(bland_from_start) {
    build(lower, upper);
  }

  LpSolution run() {
    LpSolution result;
    if (num_art_ > 0) {
      const PhaseExit exit = iterate(z1_, /*phase1=*/true);
      result.iterations = iterations_;
      if (exit == PhaseExit::iteration_limit) return result;  // numerical
      if (exit == PhaseExit::unbounded) return result;        // pathological
      if (phase1_objective() > kRowTol * rhs_scale_) {
        result.status = LpStatus::infeasible;
        return result;
      }
      finish_phase1();
    }
    const PhaseExit exit = iterate(z2_, /*phase1=*/false);
    result.iterations = iterations_;
    if (exit == PhaseExit::iteration_limit) return result;
    if (exit == PhaseExit::unbounded) {
      result.status = LpStatus::unbounded;
      return result;
    }
    result.values.resize(n_struct_);
    for (int j = 0; j < n_struct_; ++j) result.values[j] = col_value(j);
    result.objective = 0.0;
    for (const auto& [col, coeff] : model_.objective())
      result.objective += coeff * result.values[col];
    result.status =
        verify(result.values) ? LpStatus::optimal : LpStatus::numerical_failure;
    return result;
  }

 private:
  double& at(int row, int col) { return data_[row * stride_ + col]; }
  double* row_ptr(int row) { return data_.data() + row * stride_; }

  double col_value(int j) const {
    switch (status_[j]) {
      case kAtLower: return lo_[j];
      case kAtUpper: return hi_[j];
      case kFreeZero: return 0.0;
      case kBasic: return xB_[row_of_[j]];
    }
    return 0.0;
  }

  void build(const std::vector<double>& lower, const std::vector<double>& upper) {
    n_struct_ = static_cast<int>(model_.columns().size());
    num_rows_ = static_cast<int>(model_.rows().size());
    const int slack_begin = n_struct_;
    art_begin_ = n_struct_ + num_rows_;

    // Bounds, initial statuses, and values for structural columns.
    lo_.assign(art_begin_, 0.0);
    hi_.assign(art_begin_, 0.0);
    status_.assign(art_begin_, kAtLower);
    for (int j = 0; j < n_struct_; ++j) {
      lo_[j] = lower[j];
      hi_[j] = upper[j];
      if (lo_[j] > -kInf) status_[j] = kAtLower;
      else if (hi_[j] < kInf) status_[j] = kAtUpper;
      else status_[j] = kFreeZero;
    }
    for (int r = 0; r < num_rows_; ++r) {
      switch (model_.rows()[r].sense) {
        case RowSense::le: lo_[slack_begin + r] = 0.0; hi_[slack_begin + r] = kInf; break;
        case RowSense::ge: lo_[slack_begin + r] = -kInf; hi_[slack_begin + r] = 0.0; break;
        case RowSense::eq: lo_[slack_begin + r] = 0.0; hi_[slack_begin + r] = 0.0; break;
      }
    }

    // Initial activities decide which rows need an artificial.
    rhs_scale_ = 1.0;
    std::vector<double> residual(num_rows_);
    std::vector<signed char> art_sign(num_rows_, 0);
    basis_.assign(num_rows_, -1);
    xB_.assign(num_rows_, 0.0);
    num_art_ = 0;
    for (int r = 0; r < num_rows_; ++r) {
      const Row& row = model_.rows()[r];
      rhs_scale_ = std::max(rhs_scale_, std::abs(row.rhs));
      double activity = 0.0;
      for (const auto& [col, coeff] : row.coeffs)
        activity += coeff * initial_value(col);
      const double want = row.rhs - activity;
      const int slack = slack_begin + r;
      if (want >= lo_[slack] - kBoundTol && want <= hi_[slack] + kBoundTol) {
        basis_[r] = slack;
        xB_[r] = want;
      } else {
        const double parked = want < lo_[slack] ? lo_[slack] : hi_[slack];
        status_[slack] = want < lo_[slack] ? kAtLower : kAtUpper;
        residual[r] = want - parked;
        art_sign[r] = residual[r] >= 0.0 ? 1 : -1;
        ++num_art_;
      }
    }

    stride_ = art_begin_ + num_art_;
    active_cols_ = stride_;
    data_.assign(static_cast<std::size_t>(num_rows_) * stride_, 0.0);
    lo_.resize(stride_, 0.0);
    hi_.resize(stride_, kInf);
    status_.resize(stride_, kAtLower);
    row_of_.assign(stride_, -1);

    int art = art_begin_;
    for (int r = 0; r < num_rows_; ++r) {
      const double sign = art_sign[r] < 0 ? -1.0 : 1.0;
      for (const auto& [col, coeff] : model_.rows()[r].coeffs)
        at(r, col) = sign * coeff;
      at(r, slack_begin + r) = sign;
      if (art_sign[r] != 0) {
        at(r, art) = 1.0;
        basis_[r] = art;
        xB_[r] = std::abs(residual[r]);
        ++art;
      }
      status_[basis_[r]] = kBasic;
      row_of_[basis_[r]] = r;
    }

    // Reduced-cost rows. The initial basis carries zero phase-2 cost, so
    // z2 starts as the raw objective; z1 must be reduced over the
    // artificial rows it prices.
    z2_.assign(stride_, 0.0);
    for (const auto& [col, coeff] : model_.objective()) z2_[col] += coeff;
    cost_ = z2_;
    z1_.assign(stride_, 0.0);
    for (int j = art_begin_; j < stride_; ++j) z1_[j] = 1.0;
    for (int r = 0; r < num_rows_; ++r) {
      if (basis_[r] >= art_begin_)
        kernels::axpy(-1.0, row_ptr(r), z1_.data(), stride_);
    }
  }

  double initial_value(int j) const {
    if (lo_[j] > -kInf) return lo_[j];
    if (hi_[j] < kInf) return hi_[j];
    return 0.0;
  }

  double phase1_objective() const {
    double sum = 0.0;
    for (int r = 0; r < num_rows_; ++r)
      if (basis_[r] >= art_begin_) sum += xB_[r];
    return sum;
  }

  double phase2_objective() const {
    double sum = 0.0;
    for (int j = 0; j < n_struct_; ++j)
      if (cost_[j] != 0.0) sum += cost_[j] * col_value(j);
    return sum;
  }

  bool fixed_col(int j) const { return hi_[j] - lo_[j] < 1e-12; }

  // Returns the entering column and its movement direction, or -1.
  std::pair<int, int> price(const std::vector<double>& z, bool bland) const {
    int best = -1, best_dir = 0;
    double best_score = kDualTol;
    for (int j = 0; j < active_cols_; ++j) {
      if (status_[j] == kBasic || fixed_col(j)) continue;
      int dir = 0;
      if (status_[j] == kAtLower) {
        if (z[j] < -kDualTol) dir = 1;
      } else if (status_[j] == kAtUpper) {
        if (z[j] > kDualTol) dir = -1;
      } else {  // free at zero
        if (z[j] < -kDualTol) dir = 1;
        else if (z[j] > kDualTol) dir = -1;
      }
      if (dir == 0) continue;
      if (bland) return {j, dir};
      if (std::abs(z[j]) > best_score) {
        best_score = std::abs(z[j]);
        best = j;
        best_dir = dir;
      }
    }
    return {best, best_dir};
  }

  struct RatioResult {
    enum { kPivot, kFlip, kUnbounded } kind;
    int row = -1;
    double step = 0.0;
    bool leaves_at_upper = false;
  };

  RatioResult ratio_test(int q, int dir, bool bland) const {
    int best_row = -1;
    double best_t = kInf, best_pivot = 0.0;
    bool best_upper = false;
    for (int r = 0; r < num_rows_; ++r) {
      const double alpha = dir * data_[r * stride_ + q];
      double t;
      bool to_upper;
      if (alpha > kPivotTol) {  // basic variable decreases
        const double floor = lo_[basis_[r]];
        if (floor == -kInf) continue;
        t = (xB_[r] - floor) / alpha;
        to_upper = false;
      } else if (alpha < -kPivotTol) {  // basic variable increases
        const double ceil = hi_[basis_[r]];
        if (ceil == kInf) continue;
        t = (xB_[r] - ceil) / alpha;
        to_upper = true;
      } else {
        continue;
      }
      if (t < 0.0) t = 0.0;  // fp drift on a degenerate basis
      bool take = false;
      if (best_row < 0 || t < best_t - kTieTol) {
        take = true;
      } else if (t <= best_t + kTieTol) {
        if (bland) {
          take = basis_[r] < basis_[best_row];
        } else {
          take = std::abs(alpha) > std::abs(best_pivot) + 1e-12;
        }
      }
      if (take) {
        best_row = r;
        best_t = std::min(t, best_t);
        best_pivot = alpha;
        best_upper = to_upper;
      }
    }

    const double range = hi_[q] - lo_[q];
    if (best_row < 0) {
      if (range < kInf) return {RatioResult::kFlip, -1, range, false};
      return {RatioResult::kUnbounded};
    }
    if (range < best_t - kTieTol) return {RatioResult::kFlip, -1, range, false};
    return {RatioResult::kPivot, best_row, best_t, best_upper};
  }

  void shift_basics(int q, int dir, double step) {
    if (step == 0.0) return;
    for (int r = 0; r < num_rows_; ++r) {
      const double a = data_[r * stride_ + q];
      if (a != 0.0) xB_[r] -= step * dir * a;
    }
  }

  void pivot(int r, int q, bool phase1) {
    double* pivot_row = row_ptr(r);
    const double pivot_value = pivot_row[q];
    kernels::scale(1.0 / pivot_value, pivot_row, active_cols_);
    pivot_row[q] = 1.0;
    for (int i = 0; i < num_rows_; ++i) {
      if (i == r) continue;
      double* row = row_ptr(i);
      const double factor = row[q];
      if (factor == 0.0) continue;
      kernels::axpy(-factor, pivot_row, row, active_cols_);
      row[q] = 0.0;
    }
    if (phase1 && z1_[q] != 0.0) {
      kernels::axpy(-z1_[q], pivot_row, z1_.data(), active_cols_);
      z1_[q] = 0.0;
    }
    if (z2_[q] != 0.0) {
      kernels::axpy(-z2_[q], pivot_row, z2_.data(), active_cols_);
      z2_[q] = 0.0;
    }
  }

  PhaseExit iterate(const std::vector<double>& z, bool phase1) {
    bool bland = bland_;
    int stall = 0;
    double last_obj = phase1 ? phase1_objective() : phase2_objective();
    const long cap = 20000 + 200L * (num_rows_ + active_cols_);
    for (long local = 0; local < cap; ++local) {
      if (phase1 && phase1_objective() <= 1e-10 * rhs_scale_)
        return PhaseExit::optimal;
      const auto [q, dir] = price(z, bland);
      if (q < 0) return PhaseExit::optimal;
      const RatioResult ratio = ratio_test(q, dir, bland);
      if (ratio.kind == RatioResult::kUnbounded) {
        // A bounded phase-1 objective cannot be unbounded; treat as a
        // numerical breakdown there.
        return phase1 ? PhaseExit::iteration_limit : PhaseExit::unbounded;
      }
      ++iterations_;
      if (ratio.kind == RatioResult::kFlip) {
        shift_basics(q, dir, ratio.step);
        status_[q] = status_[q] == kAtLower ? kAtUpper : kAtLower;
      } else {
        const double entering_value = col_value(q) + dir * ratio.step;
        shift_basics(q, dir, ratio.step);
        const int r = ratio.row;
        const int leaving = basis_[r];
        status_[leaving] = ratio.leaves_at_upper ? kAtUpper : kAtLower;
        row_of_[leaving] = -1;
        pivot(r, q, phase1);
        basis_[r] = q;
        status_[q] = kBasic;
        row_of_[q] = r;
        xB_[r] = entering_value;
      }
      const double obj = phase1 ? phase1_objective() : phase2_objective();
      if (obj < last_obj - 1e-10 * (1.0 + std::abs(last_obj))) {
        last_obj = obj;
        stall = 0;
        bland = bland_;
      } else if (++stall > kStallLimit) {
        bland = true;
      }
    }
    return PhaseExit::iteration_limit;
  }

  void finish_phase1() {
    // Pin artificials at zero, then pivot any still-basic ones out on the
    // largest available non-artificial pivot (a degenerate exchange).
    for (int j = art_begin_; j < stride_; ++j) {
      lo_[j] = 0.0;
      hi_[j] = 0.0;
    }
    bool art_left = false;
    for (int r = 0; r < num_rows_; ++r) {
      if (basis_[r] < art_begin_) continue;
      int best = -1;
      double best_abs = kRowTol;
      for (int j = 0; j < art_begin_; ++j) {
        if (status_[j] == kBasic) continue;
        const double a = std::abs(data_[r * stride_ + j]);
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best < 0) {
        art_left = true;  // redundant row; harmless degenerate artificial
        continue;
      }
      const double entering_value = col_value(best);  // zero-step exchange
      const int leaving = basis_[r];
      status_[leaving] = kAtLower;
      row_of_[leaving] = -1;
      pivot(r, best, /*phase1=*/false);
      basis_[r] = best;
      status_[best] = kBasic;
      row_of_[best] = r;
      xB_[r] = entering_value;
    }
    if (!art_left) active_cols_ = art_begin_;
  }

  bool verify(const std::vector<double>& values) const {
    for (int j = 0; j < n_struct_; ++j) {
      const double scale = 1.0 + std::max(std::abs(lo_[j]) == kInf ? 0.0 : std::abs(lo_[j]),
                                          std::abs(hi_[j]) == kInf ? 0.0 : std::abs(hi_[j]));
      if (values[j] < lo_[j] - kBoundTol * scale) return false;
      if (values[j] > hi_[j] + kBoundTol * scale) return false;
    }
    for (const Row& row : model_.rows()) {
      double activity = 0.0;
      for (const auto& [col, coeff] : row.coeffs)
        activity += coeff * values[col];
      const double tol = kRowTol * (1.0 + std::abs(row.rhs));
      if (row.sense == RowSense::le && activity > row.rhs + tol) return false;
      if (row.sense == RowSense::ge && activity < row.rhs - tol) return false;
      if (row.sense == RowSense::eq && std::abs(activity - row.rhs) > tol)
        return false;
    }
    return true;
  }

  const LinearModel& model_;
  bool bland_;
  int n_struct_ = 0, num_rows_ = 0, art_begin_ = 0, num_art_ = 0;
  int stride_ = 0, active_cols_ = 0;
  double rhs_scale_ = 1.0;
  long iterations_ = 0;
  std::vector<double> data_, z1_, z2_, cost_, lo_, hi_, xB_;
  std::vector<unsigned char> status_;
  std::vector<int> basis_, row_of_;
};

}  // namespace

LpSolution solve_lp(const LinearModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper) {
  if (lower.size() != model.columns().size() ||
      upper.size() != model.columns().size())
    throw std::invalid_argument("bound override size mismatch");
  LpSolution result = SimplexEngine(model, lower, upper, false).run();
  if (result.status == LpStatus::numerical_failure) {
    // One deterministic retry on the cycling-proof pivot rule.
    result = SimplexEngine(model, lower, upper, true).run();
  }
  return result;
}

LpSolution solve_lp(const LinearModel& model) {
  std::vector<double> lower, upper;
  lower.reserve(model.columns().size());
  upper.reserve(model.columns().size());
  for (const Column& col : model.columns()) {
    lower.push_back(col.lower);
    upper.push_back(col.upper);
  }
  return solve_lp(model, lower, upper);
}

}  // namespace mpsched
