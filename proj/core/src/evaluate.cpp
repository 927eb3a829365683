#include "naiveml/evaluate.hpp"

#include <cmath>
#include <limits>

#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"
#include "naiveml/splits.hpp"

namespace naiveml {

Clock default_clock() {
  return [] { return std::chrono::steady_clock::now(); };
}

std::string to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::ok: return "ok";
    case EvalStatus::timeout: return "timeout";
    case EvalStatus::failed: return "failed";
  }
  return "?";
}

double EvalResult::oriented_or_lowest() const {
  return status == EvalStatus::ok ? *oriented_score : -std::numeric_limits<double>::infinity();
}

std::vector<std::string> validate_spec(const ValidationSpec& spec, TaskKind task) {
  std::vector<std::string> out;
  if (std::holds_alternative<KFoldScheme>(spec.scheme)) {
    if (std::get<KFoldScheme>(spec.scheme).k < 2) out.push_back("kfold: k must be at least 2");
  } else {
    const MccvScheme& m = std::get<MccvScheme>(spec.scheme);
    if (!(m.train_fraction > 0.0 && m.train_fraction < 1.0)) {
      out.push_back("mccv: train_fraction must be inside (0, 1)");
    }
    if (m.repetitions < 1) out.push_back("mccv: repetitions must be positive");
  }
  if (!(spec.per_eval_deadline.count() > 0.0)) {
    out.push_back("per_eval_deadline must be positive");
  }
  if (!metric_compatible(spec.metric, task)) {
    out.push_back("metric " + to_string(spec.metric) + " does not apply to this task");
  }
  return out;
}

EvalResult evaluate(const Catalog& catalog, const Pipeline& pipeline, const Dataset& data,
                    const ValidationSpec& spec, const Clock& clock) {
  const auto start = clock();
  EvalResult result;
  auto finish = [&](EvalStatus status) {
    result.status = status;
    result.wall_time = std::chrono::duration_cast<Seconds>(clock() - start);
    return result;
  };
  auto expired = [&] { return clock() - start >= spec.per_eval_deadline; };

  std::vector<SplitPair> splits;
  try {
    if (std::holds_alternative<KFoldScheme>(spec.scheme)) {
      splits = kfold_splits(data.rows(), std::get<KFoldScheme>(spec.scheme).k, data.labels,
                            spec.seed);
    } else {
      const MccvScheme& m = std::get<MccvScheme>(spec.scheme);
      splits = mccv_splits(data.rows(), m.train_fraction, m.repetitions, data.labels, spec.seed);
    }
  } catch (const std::exception& e) {
    result.failure_reason = std::string("split: ") + e.what();
    return finish(EvalStatus::failed);
  }

  double oriented_sum = 0.0;
  try {
    for (const SplitPair& split : splits) {
      if (expired()) throw DeadlineExpired();
      const Dataset train = take_rows(data, split.train);
      const Dataset test = take_rows(data, split.test);
      const FittedPipeline fitted = fit_pipeline(catalog, pipeline, train, expired);
      if (expired()) throw DeadlineExpired();
      const Matrix probs = predict_proba(fitted, test.features);
      const double raw = raw_metric(spec.metric, test.labels, probs);
      result.raw_fold_scores.push_back(raw);
      oriented_sum += orient(spec.metric, raw);
    }
  } catch (const DeadlineExpired&) {
    result.raw_fold_scores.clear();
    return finish(EvalStatus::timeout);
  } catch (const std::exception& e) {
    result.failure_reason = e.what();
    return finish(EvalStatus::failed);
  }

  result.oriented_score = oriented_sum / static_cast<double>(splits.size());
  return finish(EvalStatus::ok);
}

EvaluateFn make_dataset_evaluator(const Catalog& catalog, const Dataset& data,
                                  const ValidationSpec& spec, const Clock& clock) {
  return [&catalog, &data, spec, clock](const Pipeline& pipeline) {
    return evaluate(catalog, pipeline, data, spec, clock);
  };
}

}  // namespace naiveml
