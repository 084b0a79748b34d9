#include "mpsched/linear_model.hpp"

#include <cmath>
#include <stdexcept>

namespace mpsched {

int LinearModel::add_column(std::string name, double lower, double upper,
                            VarType type) {
  if (column_by_name_.contains(name))
    throw std::invalid_argument("duplicate column name: " + name);
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw std::invalid_argument("inverted bounds on column: " + name);
  if (type == VarType::binary && (lower < 0.0 || upper > 1.0))
    throw std::invalid_argument("binary column bounds outside [0,1]: " + name);
  const int index = static_cast<int>(columns_.size());
  column_by_name_.emplace(name, index);
  columns_.push_back({std::move(name), lower, upper, type});
  return index;
}

int LinearModel::add_row(std::string name,
                         std::vector<std::pair<int, double>> coeffs,
                         RowSense sense, double rhs) {
  if (row_by_name_.contains(name))
    throw std::invalid_argument("duplicate row name: " + name);
  std::vector<bool> seen(columns_.size(), false);
  for (const auto& [col, coeff] : coeffs) {
    (void)coeff;
    if (col < 0 || col >= static_cast<int>(columns_.size()))
      throw std::invalid_argument("row " + name + " references unknown column");
    if (seen[col])
      throw std::invalid_argument("row " + name + " references column " +
                                  columns_[col].name + " twice");
    seen[col] = true;
  }
  const int index = static_cast<int>(rows_.size());
  row_by_name_.emplace(name, index);
  rows_.push_back({std::move(name), std::move(coeffs), sense, rhs});
  return index;
}

void LinearModel::set_objective(std::vector<std::pair<int, double>> coeffs) {
  for (const auto& [col, coeff] : coeffs) {
    (void)coeff;
    if (col < 0 || col >= static_cast<int>(columns_.size()))
      throw std::invalid_argument("objective references unknown column");
  }
  objective_ = std::move(coeffs);
}

int LinearModel::column_index(std::string_view name) const {
  auto it = column_by_name_.find(std::string(name));
  return it == column_by_name_.end() ? -1 : it->second;
}

}  // namespace mpsched
