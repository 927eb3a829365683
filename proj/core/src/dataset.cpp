#include "naiveml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "naiveml/errors.hpp"

namespace naiveml {

void check_dataset(const Dataset& d) {
  if (d.labels.size() != d.features.size()) {
    throw std::invalid_argument("dataset: label count does not match row count");
  }
  const std::size_t width = d.cols();
  for (const auto& row : d.features) {
    if (row.size() != width) {
      throw std::invalid_argument("dataset: ragged feature rows");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("dataset: non-finite feature value");
      }
    }
  }
  if (d.class_count < 2) {
    throw std::invalid_argument("dataset: class_count must be at least 2");
  }
  for (int y : d.labels) {
    if (y < 0 || y >= d.class_count) {
      throw std::invalid_argument("dataset: label outside [0, class_count)");
    }
  }
  const TaskKind expected = d.class_count == 2 ? TaskKind::binary : TaskKind::multiclass;
  if (d.task_kind != expected) {
    throw std::invalid_argument("dataset: task_kind inconsistent with class_count");
  }
  if (!d.attribute_names.empty() && d.attribute_names.size() != width) {
    throw std::invalid_argument("dataset: attribute_names do not match feature width");
  }
}

Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& indices) {
  Dataset out;
  out.class_count = d.class_count;
  out.task_kind = d.task_kind;
  out.attribute_names = d.attribute_names;
  out.features.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.features.push_back(d.features.at(i));
    out.labels.push_back(d.labels.at(i));
  }
  return out;
}

namespace {

std::string format_number(double v) {
  // Canonical short form so numeric labels stay stable across platforms.
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  for (int prec = 1; prec < 17; ++prec) {
    char probe[64];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::sscanf(probe, "%lf", &parsed) == 1 && parsed == v) {
      return probe;
    }
  }
  return buf;
}

std::string cell_as_text(const RawCell& cell) {
  if (std::holds_alternative<std::string>(*cell)) return std::get<std::string>(*cell);
  return format_number(std::get<double>(*cell));
}

}  // namespace

Dataset encode_and_impute(const RawTable& table, const std::string& label_column) {
  const std::size_t n = table.rows();
  std::size_t label_idx = table.columns.size();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (table.columns[c].cells.size() != n) {
      throw ConfigError("encode: column '" + table.columns[c].name + "' has a ragged length");
    }
    if (table.columns[c].name == label_column) label_idx = c;
  }
  if (label_idx == table.columns.size()) {
    throw ConfigError("encode: label column '" + label_column + "' not found");
  }
  if (n == 0) {
    throw ConfigError("encode: table has no rows");
  }

  Dataset out;

  // Labels first: order of first appearance fixes the class indexing.
  std::map<std::string, int> label_index;
  out.labels.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const RawCell& cell = table.columns[label_idx].cells[r];
    if (!cell.has_value()) {
      throw ConfigError("encode: missing label in row " + std::to_string(r));
    }
    const std::string text = cell_as_text(cell);
    auto [it, inserted] = label_index.emplace(text, static_cast<int>(label_index.size()));
    out.labels.push_back(it->second);
  }
  out.class_count = static_cast<int>(label_index.size());
  if (out.class_count < 2) {
    throw ConfigError("encode: need at least two distinct label values");
  }
  out.task_kind = out.class_count == 2 ? TaskKind::binary : TaskKind::multiclass;

  // Feature columns, in input order; categorical columns expand in place.
  struct Encoded {
    bool categorical = false;
    std::vector<std::string> categories;  // lexicographic
  };
  std::vector<std::pair<std::size_t, Encoded>> plan;
  std::size_t width = 0;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c == label_idx) continue;
    Encoded enc;
    std::set<std::string> cats;
    for (const RawCell& cell : table.columns[c].cells) {
      if (!cell.has_value()) continue;
      if (std::holds_alternative<std::string>(*cell)) {
        enc.categorical = true;
      }
    }
    if (enc.categorical) {
      for (const RawCell& cell : table.columns[c].cells) {
        if (cell.has_value()) cats.insert(cell_as_text(cell));
      }
      enc.categories.assign(cats.begin(), cats.end());
      for (const std::string& cat : enc.categories) {
        out.attribute_names.push_back(table.columns[c].name + "=" + cat);
      }
      width += enc.categories.size();
    } else {
      out.attribute_names.push_back(table.columns[c].name);
      width += 1;
    }
    plan.emplace_back(c, std::move(enc));
  }

  out.features.assign(n, std::vector<double>(width, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t at = 0;
    for (const auto& [c, enc] : plan) {
      const RawCell& cell = table.columns[c].cells[r];
      if (!enc.categorical) {
        out.features[r][at++] = cell.has_value() ? std::get<double>(*cell) : 0.0;
      } else {
        if (cell.has_value()) {
          const std::string text = cell_as_text(cell);
          auto it = std::lower_bound(enc.categories.begin(), enc.categories.end(), text);
          out.features[r][at + static_cast<std::size_t>(it - enc.categories.begin())] = 1.0;
        }
        at += enc.categories.size();
      }
    }
  }

  check_dataset(out);
  return out;
}

}  // namespace naiveml
