#include "naiveml/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "naiveml/errors.hpp"

namespace naiveml {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::auroc: return "auroc";
    case Metric::log_loss: return "log_loss";
    case Metric::error_rate: return "error_rate";
  }
  return "?";
}

Metric metric_from_string(const std::string& s) {
  if (s == "auroc") return Metric::auroc;
  if (s == "log_loss" || s == "logloss") return Metric::log_loss;
  if (s == "error_rate" || s == "error") return Metric::error_rate;
  throw ConfigError("unknown metric '" + s + "'");
}

bool metric_maximizes(Metric m) { return m == Metric::auroc; }

bool metric_compatible(Metric m, TaskKind task) {
  return m != Metric::auroc || task == TaskKind::binary;
}

double orient(Metric m, double raw) { return metric_maximizes(m) ? raw : -raw; }

double auroc(const std::vector<int>& labels, const std::vector<double>& positive_scores) {
  if (labels.size() != positive_scores.size()) {
    throw std::invalid_argument("auroc: label/score length mismatch");
  }
  std::size_t positives = 0, negatives = 0;
  for (int y : labels) {
    if (y == 1) ++positives;
    else if (y == 0) ++negatives;
    else throw std::invalid_argument("auroc: labels must be 0 or 1");
  }
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("auroc: needs both classes present");
  }
  // Rank-sum form: sort scores once instead of walking all P*N pairs.
  // Average ranks hand tied pairs exactly the 0.5 credit the pairwise
  // definition assigns.
  std::vector<std::size_t> order(labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&positive_scores](std::size_t a, std::size_t b) {
    return positive_scores[a] < positive_scores[b];
  });
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && positive_scores[order[j]] == positive_scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) positive_rank_sum += avg_rank;
    }
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double n = static_cast<double>(negatives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

double log_loss(const std::vector<int>& labels, const Matrix& probabilities) {
  if (labels.size() != probabilities.size() || labels.empty()) {
    throw std::invalid_argument("log_loss: label/probability shape mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    if (c >= probabilities[i].size()) {
      throw std::invalid_argument("log_loss: label outside probability width");
    }
    total += -std::log(std::clamp(probabilities[i][c], 1e-15, 1.0));
  }
  return total / static_cast<double>(labels.size());
}

double error_rate(const std::vector<int>& labels, const Matrix& probabilities) {
  if (labels.size() != probabilities.size() || labels.empty()) {
    throw std::invalid_argument("error_rate: label/probability shape mismatch");
  }
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& row = probabilities[i];
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    if (static_cast<int>(best) != labels[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

double raw_metric(Metric m, const std::vector<int>& labels, const Matrix& probabilities) {
  switch (m) {
    case Metric::auroc: {
      std::vector<double> scores;
      scores.reserve(probabilities.size());
      for (const auto& row : probabilities) {
        if (row.size() < 2) throw std::invalid_argument("auroc: needs two probability columns");
        scores.push_back(row[1]);
      }
      return auroc(labels, scores);
    }
    case Metric::log_loss: return log_loss(labels, probabilities);
    case Metric::error_rate: return error_rate(labels, probabilities);
  }
  throw std::invalid_argument("raw_metric: bad metric");
}

}  // namespace naiveml
