#include <stdexcept>

#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"

namespace naiveml {

FittedPipeline fit_pipeline(const Catalog& catalog, const Pipeline& pipeline,
                            const Dataset& train, const DeadlineCheck& deadline) {
  if (pipeline.slots.size() != catalog.slots.size()) {
    throw std::invalid_argument("fit_pipeline: pipeline does not match catalog slot count");
  }
  if (train.rows() == 0) throw DegenerateData("fit_pipeline: no training rows");

  FittedPipeline fitted;
  fitted.input_width = train.cols();
  fitted.class_count = train.class_count;

  auto poll = [&deadline] {
    if (deadline && deadline()) throw DeadlineExpired();
  };

  Matrix current = train.features;
  const std::size_t predictor_slot = catalog.predictor_slot();
  for (std::size_t s = 0; s < pipeline.slots.size(); ++s) {
    if (s == predictor_slot) continue;
    if (!pipeline.slots[s].has_value()) continue;  // Blank passes data through
    const SlotChoice& choice = *pipeline.slots[s];
    const ComponentSpec* spec = catalog.find(s, choice.component_id);
    if (spec == nullptr) {
      throw std::invalid_argument("fit_pipeline: unknown component '" + choice.component_id + "'");
    }
    poll();
    auto transform = fit_transform_component(*spec, resolve_params(*spec, choice.params), current,
                                             train.labels, train.class_count);
    current = transform->transform(current);
    fitted.stages.push_back({choice.component_id, std::move(transform)});
  }

  if (!pipeline.slots[predictor_slot].has_value()) {
    throw std::invalid_argument("fit_pipeline: predictor slot is Blank");
  }
  const SlotChoice& pred_choice = *pipeline.slots[predictor_slot];
  const ComponentSpec* pred_spec = catalog.find(predictor_slot, pred_choice.component_id);
  if (pred_spec == nullptr) {
    throw std::invalid_argument("fit_pipeline: unknown predictor '" + pred_choice.component_id + "'");
  }
  poll();
  fitted.predictor_id = pred_choice.component_id;
  fitted.predictor =
      fit_predictor_component(*pred_spec, resolve_params(*pred_spec, pred_choice.params), current,
                              train.labels, train.class_count);
  return fitted;
}

Matrix predict_proba(const FittedPipeline& fitted, const Matrix& X) {
  for (const auto& row : X) {
    if (row.size() != fitted.input_width) {
      throw std::invalid_argument("predict_proba: row width does not match training data");
    }
  }
  Matrix current = X;
  for (const auto& stage : fitted.stages) {
    current = stage.transform->transform(current);
  }
  return fitted.predictor->predict_proba(current);
}

}  // namespace naiveml
