#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/dataset.hpp"
#include "naiveml/metrics.hpp"
#include "naiveml/pipeline.hpp"

namespace naiveml {

// Injectable time source; the default reads the steady clock. Tests inject
// frozen or fast-forwarding clocks to pin timing behavior.
using Clock = std::function<std::chrono::steady_clock::time_point()>;
Clock default_clock();

using Seconds = std::chrono::duration<double>;

struct KFoldScheme {
  int k = 5;
};

struct MccvScheme {
  double train_fraction = 0.9;
  int repetitions = 10;
};

using ValidationScheme = std::variant<KFoldScheme, MccvScheme>;

struct ValidationSpec {
  ValidationScheme scheme = KFoldScheme{};
  std::uint64_t seed = 0;
  Seconds per_eval_deadline{300.0};
  Metric metric = Metric::error_rate;
};

// Human-readable problems with a spec against a task; empty means usable.
std::vector<std::string> validate_spec(const ValidationSpec& spec, TaskKind task);

enum class EvalStatus { ok, timeout, failed };

std::string to_string(EvalStatus s);

struct EvalResult {
  EvalStatus status = EvalStatus::failed;
  // Present exactly when status == ok; mean of per-fold oriented scores.
  std::optional<double> oriented_score;
  std::vector<double> raw_fold_scores;
  Seconds wall_time{0.0};
  std::optional<std::string> failure_reason;

  // What optimizers compare: failures and timeouts sink to -infinity.
  double oriented_or_lowest() const;
};

// Cross-validated score of one pipeline on one dataset. Fold splits depend
// only on (spec.seed, scheme, labels), so every caller with the same spec
// sees identical splits. The deadline is polled between folds and between
// component fits; expiry yields status timeout. Component failures yield
// status failed with the reason. Nothing escapes as an exception except
// programming errors (bad shapes).
EvalResult evaluate(const Catalog& catalog, const Pipeline& pipeline, const Dataset& data,
                    const ValidationSpec& spec, const Clock& clock = default_clock());

// The closed-over form optimizers consume.
using EvaluateFn = std::function<EvalResult(const Pipeline&)>;

EvaluateFn make_dataset_evaluator(const Catalog& catalog, const Dataset& data,
                                  const ValidationSpec& spec, const Clock& clock = default_clock());

}  // namespace naiveml
