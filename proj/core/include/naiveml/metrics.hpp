#pragma once

#include <string>
#include <vector>

#include "naiveml/dataset.hpp"

namespace naiveml {

enum class Metric { auroc, log_loss, error_rate };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);  // throws ConfigError

// auroc is maximized; log_loss and error_rate are minimized.
bool metric_maximizes(Metric m);

// auroc only applies to binary tasks; the other two to both.
bool metric_compatible(Metric m, TaskKind task);

// Oriented scores are always higher-is-better: raw for maximized metrics,
// negated for minimized ones.
double orient(Metric m, double raw);

// Probability-of-positive ranking quality: pairwise wins plus half-credit
// ties over all positive/negative pairs. Throws std::invalid_argument when
// either class is absent.
double auroc(const std::vector<int>& labels, const std::vector<double>& positive_scores);

// Mean negative log of the probability assigned to the true class, clipped
// into [1e-15, 1] before the log.
double log_loss(const std::vector<int>& labels, const Matrix& probabilities);

// Argmax prediction (ties to the lower class index) against the labels.
double error_rate(const std::vector<int>& labels, const Matrix& probabilities);

// Dispatch on the metric; auroc reads column 1 as the positive-class score.
double raw_metric(Metric m, const std::vector<int>& labels, const Matrix& probabilities);

}  // namespace naiveml
