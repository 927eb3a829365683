#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "component_util.hpp"
#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"

namespace naiveml {

namespace {

using detail::ParamView;

class MinMaxScaler final : public FittedTransform {
 public:
  MinMaxScaler(const Matrix& X) {
    const std::size_t w = X.empty() ? 0 : X.front().size();
    mins_.assign(w, std::numeric_limits<double>::infinity());
    ranges_.assign(w, 0.0);
    for (const auto& row : X) {
      for (std::size_t j = 0; j < w; ++j) {
        mins_[j] = std::min(mins_[j], row[j]);
        ranges_[j] = std::max(ranges_[j], row[j]);
      }
    }
    for (std::size_t j = 0; j < w; ++j) ranges_[j] -= mins_[j];
  }

  Matrix transform(const Matrix& X) const override {
    Matrix out = X;
    for (auto& row : out) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        // Constant training columns map to 0 instead of dividing by zero.
        row[j] = ranges_[j] > 0.0 ? (row[j] - mins_[j]) / ranges_[j] : 0.0;
      }
    }
    return out;
  }

  std::size_t output_width() const override { return mins_.size(); }

 private:
  std::vector<double> mins_, ranges_;
};

class StandardScaler final : public FittedTransform {
 public:
  StandardScaler(const Matrix& X) {
    means_ = detail::column_means(X);
    scales_ = detail::column_variances(X, means_);
    for (double& s : scales_) s = s > 0.0 ? std::sqrt(s) : 1.0;
  }

  Matrix transform(const Matrix& X) const override {
    Matrix out = X;
    for (auto& row : out) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = (row[j] - means_[j]) / scales_[j];
      }
    }
    return out;
  }

  std::size_t output_width() const override { return means_.size(); }

 private:
  std::vector<double> means_, scales_;
};

class ColumnSubset final : public FittedTransform {
 public:
  explicit ColumnSubset(std::vector<std::size_t> keep) : keep_(std::move(keep)) {}

  Matrix transform(const Matrix& X) const override {
    Matrix out(X.size(), std::vector<double>(keep_.size()));
    for (std::size_t i = 0; i < X.size(); ++i) {
      for (std::size_t j = 0; j < keep_.size(); ++j) out[i][j] = X[i][keep_[j]];
    }
    return out;
  }

  std::size_t output_width() const override { return keep_.size(); }

 private:
  std::vector<std::size_t> keep_;
};

std::unique_ptr<FittedTransform> fit_variance_threshold(const ParamView& pv, const Matrix& X) {
  const double threshold = pv.real("threshold");
  const auto means = detail::column_means(X);
  const auto vars = detail::column_variances(X, means);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j] > threshold) keep.push_back(j);
  }
  if (keep.empty()) {
    throw DegenerateData("variance_threshold removed every column");
  }
  return std::make_unique<ColumnSubset>(std::move(keep));
}

class PcaProjection final : public FittedTransform {
 public:
  PcaProjection(std::vector<double> means, Eigen::MatrixXd components)
      : means_(std::move(means)), components_(std::move(components)) {}

  Matrix transform(const Matrix& X) const override {
    Matrix out(X.size(), std::vector<double>(static_cast<std::size_t>(components_.cols())));
    for (std::size_t i = 0; i < X.size(); ++i) {
      Eigen::RowVectorXd row(static_cast<Eigen::Index>(means_.size()));
      for (std::size_t j = 0; j < means_.size(); ++j) {
        row(static_cast<Eigen::Index>(j)) = X[i][j] - means_[j];
      }
      const Eigen::RowVectorXd proj = row * components_;
      for (Eigen::Index j = 0; j < proj.size(); ++j) out[i][static_cast<std::size_t>(j)] = proj(j);
    }
    return out;
  }

  std::size_t output_width() const override {
    return static_cast<std::size_t>(components_.cols());
  }

 private:
  std::vector<double> means_;
  Eigen::MatrixXd components_;  // width x kept, columns orthonormal
};

std::unique_ptr<FittedTransform> fit_pca(const ParamView& pv, const Matrix& X) {
  const std::int64_t requested = pv.integer("n_components");
  const std::size_t n = X.size();
  const std::size_t w = X.empty() ? 0 : X.front().size();
  if (n == 0 || w == 0) throw DegenerateData("pca: empty input");

  const auto means = detail::column_means(X);
  Eigen::MatrixXd centered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(w));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < w; ++j) {
      centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = X[i][j] - means[j];
    }
  }
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DegenerateData("pca: eigendecomposition failed");

  // Eigen returns ascending eigenvalues; rank counts those above a relative
  // floor so numerically-zero directions never count as components.
  const Eigen::VectorXd evals = solver.eigenvalues();
  const double top = std::max(evals(evals.size() - 1), 0.0);
  const double tol = std::max(top * 1e-9, 1e-12);
  std::size_t rank = 0;
  for (Eigen::Index j = 0; j < evals.size(); ++j) {
    if (evals(j) > tol) ++rank;
  }
  if (rank == 0) throw DegenerateData("pca: input has rank zero after centering");

  const std::size_t kept = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::int64_t>(requested, 0)), rank);
  if (kept == 0) throw DegenerateData("pca: no components requested");

  Eigen::MatrixXd components(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(kept));
  for (std::size_t j = 0; j < kept; ++j) {
    Eigen::VectorXd v = solver.eigenvectors().col(evals.size() - 1 - static_cast<Eigen::Index>(j));
    // Sign convention: the entry with the largest magnitude is positive, so
    // the projection is deterministic across solver builds.
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    if (v(argmax) < 0.0) v = -v;
    components.col(static_cast<Eigen::Index>(j)) = v;
  }
  return std::make_unique<PcaProjection>(means, std::move(components));
}

std::unique_ptr<FittedTransform> fit_select_percentile(const ParamView& pv, const Matrix& X,
                                                       const std::vector<int>& y,
                                                       int class_count) {
  const double percentile = pv.real("percentile");
  const std::size_t w = X.empty() ? 0 : X.front().size();
  if (w == 0) throw DegenerateData("select_percentile: empty input");

  // One-way ANOVA F per column: between-group over within-group mean squares.
  std::vector<double> scores(w, 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(class_count), 0);
  for (int label : y) ++counts[static_cast<std::size_t>(label)];
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<double> sums(static_cast<std::size_t>(class_count), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      sums[static_cast<std::size_t>(y[i])] += X[i][j];
      total += X[i][j];
    }
    const double grand_mean = total / static_cast<double>(X.size());
    double ssb = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] == 0) continue;
      const double mean_c = sums[c] / static_cast<double>(counts[c]);
      ssb += static_cast<double>(counts[c]) * (mean_c - grand_mean) * (mean_c - grand_mean);
    }
    double ssw = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const std::size_t c = static_cast<std::size_t>(y[i]);
      const double mean_c = sums[c] / static_cast<double>(counts[c]);
      ssw += (X[i][j] - mean_c) * (X[i][j] - mean_c);
    }
    std::size_t groups = 0;
    for (std::size_t c : counts) {
      if (c > 0) ++groups;
    }
    const double df_b = static_cast<double>(groups > 1 ? groups - 1 : 1);
    const double df_w = static_cast<double>(X.size() > groups ? X.size() - groups : 1);
    if (ssw <= 0.0) {
      scores[j] = ssb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
      scores[j] = (ssb / df_b) / (ssw / df_w);
    }
  }

  const std::size_t n_keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(percentile / 100.0 * static_cast<double>(w))));
  std::vector<std::size_t> order(w);
  std::iota(order.begin(), order.end(), 0);
  // Higher score first; ties keep the lower column index.
  std::stable_sort(order.begin(), order.end(),
                   [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::size_t> keep(order.begin(), order.begin() + std::min(n_keep, w));
  std::sort(keep.begin(), keep.end());
  return std::make_unique<ColumnSubset>(std::move(keep));
}

}  // namespace

std::unique_ptr<FittedTransform> fit_transform_component(
    const ComponentSpec& spec, const std::map<std::string, ParamValue>& params, const Matrix& X,
    const std::vector<int>& y, int class_count) {
  if (X.empty() || X.front().empty()) {
    throw DegenerateData("transform '" + spec.id + "': empty input");
  }
  const ParamView pv(params);
  const std::string& key = spec.implementation_key;
  if (key == "minmax_scaler") return std::make_unique<MinMaxScaler>(X);
  if (key == "standard_scaler") return std::make_unique<StandardScaler>(X);
  if (key == "variance_threshold") return fit_variance_threshold(pv, X);
  if (key == "pca") return fit_pca(pv, X);
  if (key == "select_percentile") return fit_select_percentile(pv, X, y, class_count);
  throw ConfigError("unknown transform implementation_key '" + key + "'");
}

}  // namespace naiveml
