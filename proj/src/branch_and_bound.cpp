#include "mpsched/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "mpsched/simplex.hpp"

namespace mpsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> binary_columns(const LinearModel& model) {
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(model.columns().size()); ++j)
    if (model.columns()[j].type == VarType::binary) cols.push_back(j);
  return cols;
}

struct Node {
  double bound = -kInf;
  int depth = 0;
  std::int64_t id = 0;
  int parent = -1;
  int branch_col = -1;   // column fixed on the edge from the parent
  double branch_value = 0.0;
};

struct NodeOrder {
  const std::vector<Node>* nodes;
  // Priority queue of node indices: lowest bound first, then deepest,
  // then earliest created.
  bool operator()(int a, int b) const {
    const Node& na = (*nodes)[a];
    const Node& nb = (*nodes)[b];
    if (na.bound != nb.bound) return na.bound > nb.bound;
    if (na.depth != nb.depth) return na.depth < nb.depth;
    return na.id > nb.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const LinearModel& model, const SolveConfig& cfg)
      : model_(model), cfg_(cfg), binaries_(binary_columns(model)) {
    base_lower_.reserve(model.columns().size());
    base_upper_.reserve(model.columns().size());
    for (const Column& col : model.columns()) {
      base_lower_.push_back(col.lower);
      base_upper_.push_back(col.upper);
    }
  }

  MilpSolution run() {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start)
          .count();
    };

    MilpSolution result;
    nodes_.push_back(Node{});
    std::priority_queue<int, std::vector<int>, NodeOrder> open{
        NodeOrder{&nodes_}};
    open.push(0);

    bool hit_limit = false;
    while (!open.empty()) {
      if (cfg_.node_limit > 0 && result.nodes >= cfg_.node_limit) {
        hit_limit = true;
        break;
      }
      if (cfg_.time_limit > 0.0 && elapsed() > cfg_.time_limit) {
        hit_limit = true;
        break;
      }
      const int index = open.top();
      open.pop();
      if (nodes_[index].bound >= cutoff()) continue;

      apply_bounds(index);
      ++result.nodes;
      const LpSolution lp = solve_lp(model_, lower_, upper_);
      if (lp.status == LpStatus::infeasible) continue;
      if (lp.status == LpStatus::unbounded)
        throw std::runtime_error("MILP relaxation is unbounded");
      if (lp.status == LpStatus::numerical_failure)
        throw std::runtime_error("LP solve failed numerically");
      nodes_[index].bound = lp.objective;
      if (lp.objective >= cutoff()) continue;

      const int branch_col = pick_branch(lp.values);
      if (branch_col < 0) {
        accept_candidate(index, lp.values);
        continue;
      }
      for (double value : {0.0, 1.0}) {
        Node child;
        child.bound = lp.objective;
        child.depth = nodes_[index].depth + 1;
        child.id = static_cast<std::int64_t>(nodes_.size());
        child.parent = index;
        child.branch_col = branch_col;
        child.branch_value = value;
        nodes_.push_back(child);
        open.push(static_cast<int>(nodes_.size()) - 1);
      }
    }

    result.wall_seconds = elapsed();
    double open_bound = kInf;
    if (hit_limit) {
      while (!open.empty()) {
        open_bound = std::min(open_bound, nodes_[open.top()].bound);
        open.pop();
      }
    }
    if (incumbent_) {
      result.values = incumbent_->values;
      result.objective = incumbent_->objective;
      result.best_bound = hit_limit ? std::min(open_bound, incumbent_->objective)
                                    : incumbent_->objective;
      result.status = hit_limit ? MilpStatus::feasible : MilpStatus::optimal;
    } else {
      result.best_bound = hit_limit ? open_bound : kInf;
      result.status = hit_limit ? MilpStatus::limit : MilpStatus::infeasible;
    }
    return result;
  }

 private:
  double cutoff() const {
    if (!incumbent_) return kInf;
    return incumbent_->objective -
           cfg_.gap_tol * std::max(1.0, std::abs(incumbent_->objective));
  }

  void apply_bounds(int index) {
    lower_ = base_lower_;
    upper_ = base_upper_;
    for (int at = index; at > 0; at = nodes_[at].parent) {
      const Node& node = nodes_[at];
      lower_[node.branch_col] = node.branch_value;
      upper_[node.branch_col] = node.branch_value;
    }
  }

  // Most fractional binary, ties by lowest column index; -1 when all
  // binaries are integral within tolerance.
  int pick_branch(const std::vector<double>& values) const {
    int best = -1;
    double best_frac = cfg_.int_tol;
    for (int col : binaries_) {
      const double v = values[col];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        best = col;
      }
    }
    return best;
  }

  void accept_candidate(int index, const std::vector<double>& relaxed) {
    // Fix the binaries at their rounded values and re-solve for clean
    // continuous values before accepting the incumbent.
    apply_bounds(index);
    for (int col : binaries_) {
      const double fixed = std::round(relaxed[col]);
      lower_[col] = fixed;
      upper_[col] = fixed;
    }
    const LpSolution clean = solve_lp(model_, lower_, upper_);
    if (clean.status != LpStatus::optimal) return;  // tolerance edge; drop
    if (!incumbent_ || clean.objective < incumbent_->objective - 1e-12) {
      incumbent_ = Incumbent{clean.values, clean.objective};
    }
  }

  struct Incumbent {
    std::vector<double> values;
    double objective;
  };

  const LinearModel& model_;
  const SolveConfig cfg_;
  const std::vector<int> binaries_;
  std::vector<double> base_lower_, base_upper_, lower_, upper_;
  std::vector<Node> nodes_;
  std::optional<Incumbent> incumbent_;
};

}  // namespace

MilpSolution solve_milp(const LinearModel& model, const SolveConfig& cfg) {
  if (cfg.int_tol <= 0.0 || cfg.gap_tol <= 0.0)
    throw std::invalid_argument("solver tolerances must be positive");
  return BranchAndBound(model, cfg).run();
}

std::optional<double> brute_force_oracle(const LinearModel& model) {
  const std::vector<int> binaries = binary_columns(model);
  if (binaries.size() > 16)
    throw std::invalid_argument(
        "brute_force_oracle refuses models with more than 16 binaries");

  // Rows whose every term is a binary column can be checked directly on
  // the assignment, skipping the LP.
  std::vector<char> is_binary(model.columns().size(), 0);
  for (int col : binaries) is_binary[col] = 1;
  std::vector<const Row*> binary_rows;
  for (const Row& row : model.rows()) {
    bool all_binary = true;
    for (const auto& [col, coeff] : row.coeffs) {
      (void)coeff;
      if (!is_binary[col]) {
        all_binary = false;
        break;
      }
    }
    if (all_binary && !row.coeffs.empty()) binary_rows.push_back(&row);
  }

  std::vector<double> lower, upper;
  lower.reserve(model.columns().size());
  upper.reserve(model.columns().size());
  for (const Column& col : model.columns()) {
    lower.push_back(col.lower);
    upper.push_back(col.upper);
  }

  std::optional<double> best;
  std::vector<double> assignment(binaries.size(), 0.0);
  for (std::uint32_t mask = 0; mask < (1u << binaries.size()); ++mask) {
    bool admissible = true;
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      assignment[i] = (mask >> i) & 1u ? 1.0 : 0.0;
      const Column& col = model.columns()[binaries[i]];
      if (assignment[i] < col.lower - 1e-9 || assignment[i] > col.upper + 1e-9)
        admissible = false;
    }
    if (!admissible) continue;
    std::vector<double> value_of(model.columns().size(), 0.0);
    for (std::size_t i = 0; i < binaries.size(); ++i)
      value_of[binaries[i]] = assignment[i];
    for (const Row* row : binary_rows) {
      double activity = 0.0;
      for (const auto& [col, coeff] : row->coeffs)
        activity += coeff * value_of[col];
      if (row->sense == RowSense::le && activity > row->rhs + 1e-9)
        admissible = false;
      if (row->sense == RowSense::ge && activity < row->rhs - 1e-9)
        admissible = false;
      if (row->sense == RowSense::eq && std::abs(activity - row->rhs) > 1e-9)
        admissible = false;
      if (!admissible) break;
    }
    if (!admissible) continue;

    for (std::size_t i = 0; i < binaries.size(); ++i) {
      lower[binaries[i]] = assignment[i];
      upper[binaries[i]] = assignment[i];
    }
    const LpSolution lp = solve_lp(model, lower, upper);
    for (std::size_t i = 0; i < binaries.size(); ++i) {
      lower[binaries[i]] = model.columns()[binaries[i]].lower;
      upper[binaries[i]] = model.columns()[binaries[i]].upper;
    }
    if (lp.status == LpStatus::unbounded)
      throw std::runtime_error("model is unbounded");
    if (lp.status == LpStatus::numerical_failure)
      throw std::runtime_error("LP solve failed numerically");
    if (lp.status == LpStatus::optimal)
      best = best ? std::min(*best, lp.objective) : lp.objective;
  }
  return best;
}

}  // namespace mpsched
