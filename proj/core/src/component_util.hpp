#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/dataset.hpp"
#include "naiveml/errors.hpp"

namespace naiveml::detail {

// Read-only view over resolved params with kind coercion; catalog validation
// guarantees presence, so a miss is a programming error.
class ParamView {
 public:
  explicit ParamView(const std::map<std::string, ParamValue>& values) : values_(values) {}

  double real(const std::string& name) const {
    const ParamValue& v = at(name);
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<std::int64_t>(v)) {
      return static_cast<double>(std::get<std::int64_t>(v));
    }
    throw ConfigError("param '" + name + "' is not numeric");
  }

  std::int64_t integer(const std::string& name) const {
    const ParamValue& v = at(name);
    if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
    if (std::holds_alternative<double>(v)) {
      return static_cast<std::int64_t>(std::get<double>(v));
    }
    throw ConfigError("param '" + name + "' is not numeric");
  }

 private:
  const ParamValue& at(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError("param '" + name + "' missing at fit time");
    return it->second;
  }

  const std::map<std::string, ParamValue>& values_;
};

inline std::vector<double> column_means(const Matrix& X) {
  if (X.empty()) return {};
  std::vector<double> m(X.front().size(), 0.0);
  for (const auto& row : X) {
    for (std::size_t j = 0; j < m.size(); ++j) m[j] += row[j];
  }
  for (double& v : m) v /= static_cast<double>(X.size());
  return m;
}

// Population variance (divide by n).
inline std::vector<double> column_variances(const Matrix& X, const std::vector<double>& means) {
  std::vector<double> var(means.size(), 0.0);
  for (const auto& row : X) {
    for (std::size_t j = 0; j < var.size(); ++j) {
      const double d = row[j] - means[j];
      var[j] += d * d;
    }
  }
  for (double& v : var) v /= static_cast<double>(X.size());
  return var;
}

}  // namespace naiveml::detail
