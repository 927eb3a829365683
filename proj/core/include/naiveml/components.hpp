#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/dataset.hpp"
#include "naiveml/pipeline.hpp"

namespace naiveml {

// Polled between component fits; returning true aborts via DeadlineExpired.
using DeadlineCheck = std::function<bool()>;

class FittedTransform {
 public:
  virtual ~FittedTransform() = default;
  virtual Matrix transform(const Matrix& X) const = 0;
  virtual std::size_t output_width() const = 0;
};

class FittedPredictor {
 public:
  virtual ~FittedPredictor() = default;
  // rows x class_count; every row sums to 1 within 1e-9, entries floored away
  // from exact 0 and 1.
  virtual Matrix predict_proba(const Matrix& X) const = 0;
};

// Built-in implementation_key values, usable from catalog JSON:
//   data pre-processors:     minmax_scaler, standard_scaler, variance_threshold
//   feature pre-processors:  pca, select_percentile
//   predictors:              decision_tree, knn, gaussian_nb, bernoulli_nb,
//                            majority
const std::vector<std::string>& known_implementation_keys();

std::unique_ptr<FittedTransform> fit_transform_component(
    const ComponentSpec& spec, const std::map<std::string, ParamValue>& params, const Matrix& X,
    const std::vector<int>& y, int class_count);

std::unique_ptr<FittedPredictor> fit_predictor_component(
    const ComponentSpec& spec, const std::map<std::string, ParamValue>& params, const Matrix& X,
    const std::vector<int>& y, int class_count);

struct FittedStage {
  std::string component_id;
  std::unique_ptr<FittedTransform> transform;
};

// Transforms in slot order (Blank slots absent) followed by the predictor.
struct FittedPipeline {
  std::vector<FittedStage> stages;
  std::string predictor_id;
  std::unique_ptr<FittedPredictor> predictor;
  std::size_t input_width = 0;
  int class_count = 0;
};

// Fits left to right on the training data; Blank slots pass data through
// untouched. Component failures surface as ComponentIncompatibility or
// DegenerateData; the deadline hook, when set, is polled before every
// component fit and raises DeadlineExpired.
FittedPipeline fit_pipeline(const Catalog& catalog, const Pipeline& pipeline,
                            const Dataset& train, const DeadlineCheck& deadline = {});

// Applies the fitted stages and predictor. Rejects rows whose width differs
// from the training width (std::invalid_argument).
Matrix predict_proba(const FittedPipeline& fitted, const Matrix& X);

// Clips into [1e-15, 1 - 1e-15] and renormalizes each row to sum 1.
void floor_and_renormalize(Matrix& probs);

}  // namespace naiveml
