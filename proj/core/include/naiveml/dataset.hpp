#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace naiveml {

// Row-major; every row has the same width.
using Matrix = std::vector<std::vector<double>>;

enum class TaskKind { binary, multiclass };

// Fully encoded supervised dataset: numeric features only, labels in
// [0, class_count). task_kind is binary exactly when class_count == 2.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  int class_count = 0;
  TaskKind task_kind = TaskKind::binary;
  std::vector<std::string> attribute_names;

  std::size_t rows() const { return features.size(); }
  std::size_t cols() const {
    return features.empty() ? attribute_names.size() : features.front().size();
  }
};

// Throws std::invalid_argument on the first violated invariant: ragged rows,
// non-finite values, label/feature count mismatch, labels out of range,
// class_count < 2, task_kind inconsistent with class_count, or attribute
// names not matching the feature width.
void check_dataset(const Dataset& d);

// Subset of rows, in the order given. Keeps class_count / task_kind /
// attribute_names; a subset may well miss some classes.
Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& indices);

// Pre-encoding view of a table: each cell is missing, numeric, or text.
using RawCell = std::optional<std::variant<double, std::string>>;

struct RawColumn {
  std::string name;
  std::vector<RawCell> cells;
};

struct RawTable {
  std::vector<RawColumn> columns;
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().cells.size(); }
};

// Encodes a raw table into a Dataset:
//  - a column is numeric iff every non-missing cell is a number; otherwise
//    categorical,
//  - categorical columns expand into one indicator column per observed
//    category, lexicographic order, named "col=category",
//  - missing numeric cells become 0.0; missing categorical cells an all-zero
//    indicator block,
//  - labels are taken from label_column (missing label cells are an error)
//    and indexed by order of first appearance.
// Column order of the output follows the input, with each categorical
// column expanded in place.
Dataset encode_and_impute(const RawTable& table, const std::string& label_column);

}  // namespace naiveml
