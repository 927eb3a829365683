#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "component_util.hpp"
#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"

namespace naiveml {

void floor_and_renormalize(Matrix& probs) {
  constexpr double kFloor = 1e-15;
  for (auto& row : probs) {
    double sum = 0.0;
    for (double& p : row) {
      p = std::clamp(p, kFloor, 1.0 - kFloor);
      sum += p;
    }
    for (double& p : row) p /= sum;
  }
}

namespace {

using detail::ParamView;

std::vector<double> class_frequencies(const std::vector<int>& y, int class_count) {
  std::vector<double> freq(static_cast<std::size_t>(class_count), 0.0);
  for (int label : y) freq[static_cast<std::size_t>(label)] += 1.0;
  for (double& f : freq) f /= static_cast<double>(y.size());
  return freq;
}

class MajorityPredictor final : public FittedPredictor {
 public:
  MajorityPredictor(const std::vector<int>& y, int class_count)
      : freq_(class_frequencies(y, class_count)) {}

  Matrix predict_proba(const Matrix& X) const override {
    Matrix out(X.size(), freq_);
    floor_and_renormalize(out);
    return out;
  }

 private:
  std::vector<double> freq_;
};

// ---------------------------------------------------------------------------
// Decision tree, Gini impurity. Zero-gain splits are allowed while the node
// is impure; tie-break is lowest feature index, then lowest threshold, which
// the search order makes implicit (first strict improvement wins).
class DecisionTree final : public FittedPredictor {
 public:
  DecisionTree(const Matrix& X, const std::vector<int>& y, int class_count,
               std::int64_t max_depth, std::int64_t min_samples_leaf)
      : class_count_(class_count),
        max_depth_(max_depth),
        min_leaf_(std::max<std::int64_t>(min_samples_leaf, 1)) {
    std::vector<std::size_t> rows(X.size());
    std::iota(rows.begin(), rows.end(), 0);
    build(X, y, rows, 0);
  }

  Matrix predict_proba(const Matrix& X) const override {
    Matrix out;
    out.reserve(X.size());
    for (const auto& row : X) {
      int node = 0;
      while (!nodes_[static_cast<std::size_t>(node)].leaf) {
        const Node& nd = nodes_[static_cast<std::size_t>(node)];
        node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
      }
      out.push_back(nodes_[static_cast<std::size_t>(node)].probs);
    }
    floor_and_renormalize(out);
    return out;
  }

 private:
  struct Node {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    int left = -1, right = -1;
    std::vector<double> probs;
  };

  double gini(const std::vector<std::size_t>& rows, const std::vector<int>& y) const {
    std::vector<double> counts(static_cast<std::size_t>(class_count_), 0.0);
    for (std::size_t i : rows) counts[static_cast<std::size_t>(y[i])] += 1.0;
    double g = 1.0;
    for (double c : counts) {
      const double p = c / static_cast<double>(rows.size());
      g -= p * p;
    }
    return g;
  }

  int build(const Matrix& X, const std::vector<int>& y, const std::vector<std::size_t>& rows,
            std::int64_t depth) {
    Node node;
    std::vector<double> counts(static_cast<std::size_t>(class_count_), 0.0);
    for (std::size_t i : rows) counts[static_cast<std::size_t>(y[i])] += 1.0;
    node.probs.resize(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
      node.probs[c] = counts[c] / static_cast<double>(rows.size());
    }
    const double node_gini = gini(rows, y);

    const bool can_split = depth < max_depth_ && node_gini > 0.0 &&
                           static_cast<std::int64_t>(rows.size()) >= 2 * min_leaf_;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    double best_score = -1.0;  // weighted child impurity is >= 0, so any split beats this
    if (can_split) {
      const std::size_t w = X.front().size();
      for (std::size_t j = 0; j < w; ++j) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (std::size_t i : rows) values.push_back(X[i][j]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t t = 0; t + 1 < values.size(); ++t) {
          const double threshold = 0.5 * (values[t] + values[t + 1]);
          std::vector<double> lc(counts.size(), 0.0), rc(counts.size(), 0.0);
          std::size_t nl = 0;
          for (std::size_t i : rows) {
            if (X[i][j] <= threshold) {
              lc[static_cast<std::size_t>(y[i])] += 1.0;
              ++nl;
            } else {
              rc[static_cast<std::size_t>(y[i])] += 1.0;
            }
          }
          const std::size_t nr = rows.size() - nl;
          if (static_cast<std::int64_t>(nl) < min_leaf_ ||
              static_cast<std::int64_t>(nr) < min_leaf_) {
            continue;
          }
          double gl = 1.0, gr = 1.0;
          for (std::size_t c = 0; c < counts.size(); ++c) {
            const double pl = lc[c] / static_cast<double>(nl);
            const double pr = rc[c] / static_cast<double>(nr);
            gl -= pl * pl;
            gr -= pr * pr;
          }
          const double weighted =
              (static_cast<double>(nl) * gl + static_cast<double>(nr) * gr) /
              static_cast<double>(rows.size());
          const double gain = node_gini - weighted;
          // Strict improvement only: the scan order (features ascending,
          // thresholds ascending) then realizes the declared tie-break.
          if (best_score < 0.0 || gain > best_score) {
            best_score = gain;
            best_feature = j;
            best_threshold = threshold;
          }
        }
      }
    }

    const int self = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    if (best_score >= 0.0) {
      std::vector<std::size_t> left_rows, right_rows;
      for (std::size_t i : rows) {
        (X[i][best_feature] <= best_threshold ? left_rows : right_rows).push_back(i);
      }
      nodes_[static_cast<std::size_t>(self)].leaf = false;
      nodes_[static_cast<std::size_t>(self)].feature = best_feature;
      nodes_[static_cast<std::size_t>(self)].threshold = best_threshold;
      const int left = build(X, y, left_rows, depth + 1);
      nodes_[static_cast<std::size_t>(self)].left = left;
      const int right = build(X, y, right_rows, depth + 1);
      nodes_[static_cast<std::size_t>(self)].right = right;
    }
    return self;
  }

  int class_count_;
  std::int64_t max_depth_, min_leaf_;
  std::vector<Node> nodes_;
};

class KnnPredictor final : public FittedPredictor {
 public:
  KnnPredictor(const Matrix& X, const std::vector<int>& y, int class_count, std::int64_t k)
      : X_(X), y_(y), class_count_(class_count),
        k_(std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(k, 1)),
                                 X.size())) {}

  Matrix predict_proba(const Matrix& X) const override {
    Matrix out;
    out.reserve(X.size());
    for (const auto& row : X) {
      std::vector<std::pair<double, std::size_t>> dist;
      dist.reserve(X_.size());
      for (std::size_t i = 0; i < X_.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
          const double d = row[j] - X_[i][j];
          d2 += d * d;
        }
        dist.emplace_back(d2, i);
      }
      // Equal distances resolve to the lower training-row index.
      std::sort(dist.begin(), dist.end());
      std::vector<double> probs(static_cast<std::size_t>(class_count_), 0.0);
      for (std::size_t r = 0; r < k_; ++r) {
        probs[static_cast<std::size_t>(y_[dist[r].second])] += 1.0 / static_cast<double>(k_);
      }
      out.push_back(std::move(probs));
    }
    floor_and_renormalize(out);
    return out;
  }

 private:
  Matrix X_;
  std::vector<int> y_;
  int class_count_;
  std::size_t k_;
};

class GaussianNb final : public FittedPredictor {
 public:
  GaussianNb(const Matrix& X, const std::vector<int>& y, int class_count, double var_smoothing)
      : class_count_(class_count) {
    const std::size_t w = X.front().size();
    const auto grand_means = detail::column_means(X);
    const auto grand_vars = detail::column_variances(X, grand_means);
    double max_var = 0.0;
    for (double v : grand_vars) max_var = std::max(max_var, v);
    // All-constant features would zero the smoothing out entirely; fall back
    // to the raw smoothing constant to keep likelihoods finite.
    eps_ = max_var > 0.0 ? var_smoothing * max_var : var_smoothing;

    counts_.assign(static_cast<std::size_t>(class_count), 0.0);
    means_.assign(static_cast<std::size_t>(class_count), std::vector<double>(w, 0.0));
    vars_.assign(static_cast<std::size_t>(class_count), std::vector<double>(w, 0.0));
    for (std::size_t i = 0; i < X.size(); ++i) {
      const auto c = static_cast<std::size_t>(y[i]);
      counts_[c] += 1.0;
      for (std::size_t j = 0; j < w; ++j) means_[c][j] += X[i][j];
    }
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      if (counts_[c] == 0.0) continue;
      for (double& m : means_[c]) m /= counts_[c];
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
      const auto c = static_cast<std::size_t>(y[i]);
      for (std::size_t j = 0; j < w; ++j) {
        const double d = X[i][j] - means_[c][j];
        vars_[c][j] += d * d;
      }
    }
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      for (double& v : vars_[c]) v = (counts_[c] > 0.0 ? v / counts_[c] : 0.0) + eps_;
    }
    total_ = static_cast<double>(X.size());
  }

  Matrix predict_proba(const Matrix& X) const override {
    Matrix out;
    out.reserve(X.size());
    for (const auto& row : X) {
      std::vector<double> logp(static_cast<std::size_t>(class_count_),
                               -std::numeric_limits<double>::infinity());
      for (std::size_t c = 0; c < logp.size(); ++c) {
        if (counts_[c] == 0.0) continue;
        double lp = std::log(counts_[c] / total_);
        for (std::size_t j = 0; j < row.size(); ++j) {
          const double var = vars_[c][j];
          const double d = row[j] - means_[c][j];
          lp += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
        }
        logp[c] = lp;
      }
      out.push_back(softmax(logp));
    }
    floor_and_renormalize(out);
    return out;
  }

 private:
  static std::vector<double> softmax(const std::vector<double>& logp) {
    const double peak = *std::max_element(logp.begin(), logp.end());
    std::vector<double> p(logp.size(), 0.0);
    if (!std::isfinite(peak)) return p;  // every class empty; the floor rescues it
    double sum = 0.0;
    for (std::size_t c = 0; c < p.size(); ++c) {
      p[c] = std::exp(logp[c] - peak);
      sum += p[c];
    }
    for (double& v : p) v /= sum;
    return p;
  }

  int class_count_;
  double eps_ = 0.0, total_ = 0.0;
  std::vector<double> counts_;
  std::vector<std::vector<double>> means_, vars_;
};

class BernoulliNb final : public FittedPredictor {
 public:
  BernoulliNb(const Matrix& X, const std::vector<int>& y, int class_count, double alpha)
      : class_count_(class_count) {
    constexpr double kSlack = 1e-12;
    for (const auto& row : X) {
      for (double v : row) {
        if (v < -kSlack || v > 1.0 + kSlack) {
          throw ComponentIncompatibility(
              "bernoulli_nb requires inputs in [0, 1]; saw " + std::to_string(v));
        }
      }
    }
    const std::size_t w = X.front().size();
    counts_.assign(static_cast<std::size_t>(class_count), 0.0);
    log_p_.assign(static_cast<std::size_t>(class_count), std::vector<double>(w, 0.0));
    log_q_.assign(static_cast<std::size_t>(class_count), std::vector<double>(w, 0.0));
    std::vector<std::vector<double>> ones(static_cast<std::size_t>(class_count),
                                          std::vector<double>(w, 0.0));
    for (std::size_t i = 0; i < X.size(); ++i) {
      const auto c = static_cast<std::size_t>(y[i]);
      counts_[c] += 1.0;
      for (std::size_t j = 0; j < w; ++j) {
        if (X[i][j] > 0.5) ones[c][j] += 1.0;
      }
    }
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      for (std::size_t j = 0; j < w; ++j) {
        const double p = (ones[c][j] + alpha) / (counts_[c] + 2.0 * alpha);
        log_p_[c][j] = std::log(p);
        log_q_[c][j] = std::log1p(-p);
      }
    }
    total_ = static_cast<double>(X.size());
  }

  Matrix predict_proba(const Matrix& X) const override {
    Matrix out;
    out.reserve(X.size());
    for (const auto& row : X) {
      std::vector<double> logp(static_cast<std::size_t>(class_count_),
                               -std::numeric_limits<double>::infinity());
      for (std::size_t c = 0; c < logp.size(); ++c) {
        if (counts_[c] == 0.0) continue;
        double lp = std::log(counts_[c] / total_);
        for (std::size_t j = 0; j < row.size(); ++j) {
          lp += row[j] > 0.5 ? log_p_[c][j] : log_q_[c][j];
        }
        logp[c] = lp;
      }
      const double peak = *std::max_element(logp.begin(), logp.end());
      std::vector<double> p(logp.size(), 0.0);
      if (std::isfinite(peak)) {
        double sum = 0.0;
        for (std::size_t c = 0; c < p.size(); ++c) {
          p[c] = std::exp(logp[c] - peak);
          sum += p[c];
        }
        for (double& v : p) v /= sum;
      }
      out.push_back(std::move(p));
    }
    floor_and_renormalize(out);
    return out;
  }

 private:
  int class_count_;
  double total_ = 0.0;
  std::vector<double> counts_;
  std::vector<std::vector<double>> log_p_, log_q_;
};

}  // namespace

std::unique_ptr<FittedPredictor> fit_predictor_component(
    const ComponentSpec& spec, const std::map<std::string, ParamValue>& params, const Matrix& X,
    const std::vector<int>& y, int class_count) {
  if (X.empty()) throw DegenerateData("predictor '" + spec.id + "': no training rows");
  if (X.front().empty()) throw DegenerateData("predictor '" + spec.id + "': no features");
  const ParamView pv(params);
  const std::string& key = spec.implementation_key;
  if (key == "majority") return std::make_unique<MajorityPredictor>(y, class_count);
  if (key == "decision_tree") {
    return std::make_unique<DecisionTree>(X, y, class_count, pv.integer("max_depth"),
                                          pv.integer("min_samples_leaf"));
  }
  if (key == "knn") return std::make_unique<KnnPredictor>(X, y, class_count, pv.integer("n_neighbors"));
  if (key == "gaussian_nb") {
    return std::make_unique<GaussianNb>(X, y, class_count, pv.real("var_smoothing"));
  }
  if (key == "bernoulli_nb") {
    return std::make_unique<BernoulliNb>(X, y, class_count, pv.real("alpha"));
  }
  throw ConfigError("unknown predictor implementation_key '" + key + "'");
}

const std::vector<std::string>& known_implementation_keys() {
  static const std::vector<std::string> keys = {
      "minmax_scaler", "standard_scaler", "variance_threshold", "pca", "select_percentile",
      "decision_tree", "knn", "gaussian_nb", "bernoulli_nb", "majority"};
  return keys;
}

}  // namespace naiveml
