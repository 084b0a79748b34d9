#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mpsched {

enum class VarType { continuous, binary };
enum class RowSense { le, ge, eq };

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  VarType type = VarType::continuous;
};

struct Row {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // (column index, coefficient)
  RowSense sense = RowSense::le;
  double rhs = 0.0;
};

struct ModelStats {
  int num_vars = 0;
  int num_rows = 0;
  bool operator==(const ModelStats&) const = default;
};

// Solver-agnostic MILP in sparse row form, minimization only. Built
// single-threaded, immutable afterwards, safe to share for solving and
// export. Variable bounds are not rows; only add_row adds to num_rows.
class LinearModel {
 public:
  // Appends a column. Throws std::invalid_argument on a duplicate name,
  // inverted bounds, or binary bounds outside [0, 1].
  int add_column(std::string name, double lower, double upper, VarType type);

  // Appends a constraint row. An empty coefficient list is accepted as a
  // vacuous row. Throws std::invalid_argument on a duplicate row name, an
  // unknown column index, or a column referenced twice in one row.
  int add_row(std::string name, std::vector<std::pair<int, double>> coeffs,
              RowSense sense, double rhs);

  void set_objective(std::vector<std::pair<int, double>> coeffs);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::pair<int, double>>& objective() const {
    return objective_;
  }

  int column_index(std::string_view name) const;  // -1 if absent

  ModelStats stats() const {
    return {static_cast<int>(columns_.size()), static_cast<int>(rows_.size())};
  }

 private:
  std::vector<Column> columns_;
  std::vector<Row> rows_;
  std::vector<std::pair<int, double>> objective_;
  std::unordered_map<std::string, int> column_by_name_;
  std::unordered_map<std::string, int> row_by_name_;
};

}  // namespace mpsched
