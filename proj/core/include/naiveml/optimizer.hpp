#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/evaluate.hpp"
#include "naiveml/pipeline.hpp"

namespace naiveml {

// At least one of the two limits must be finite. The wall limit counts from
// optimizer start; the eval limit counts calls into the evaluator (cache
// hits are not calls). Both are checked before each evaluation.
struct Budget {
  std::optional<Seconds> wall_limit;
  std::optional<std::uint64_t> eval_limit;

  static Budget seconds(double s) { return {Seconds{s}, std::nullopt}; }
  static Budget evals(std::uint64_t n) { return {std::nullopt, n}; }
  static Budget both(double s, std::uint64_t n) { return {Seconds{s}, n}; }
};

std::vector<std::string> validate_budget(const Budget& b);

// One improvement of the incumbent. `pipeline` is the composed snapshot
// after the improvement, `trigger_slot` the slot whose evaluation caused it,
// `local_score` that slot's best-so-far, `oriented_score` the triggering
// evaluation's score. Across a run the oriented scores strictly increase.
struct TraceEvent {
  Seconds elapsed{0.0};
  Pipeline pipeline;
  std::size_t trigger_slot = 0;
  double local_score = 0.0;
  double oriented_score = 0.0;
  EvalStatus eval_status = EvalStatus::ok;
};

using EventSink = std::function<void(const TraceEvent&)>;

struct OptimizerRun {
  std::vector<TraceEvent> events;
  Pipeline final_pipeline;
  std::uint64_t evaluations = 0;
  std::vector<std::string> notes;
};

// Pipeline that isolates one candidate the way the naive search probes it:
// a predictor candidate runs alone (pre slots Blank); a pre-processor
// candidate runs with every other pre slot Blank and the standard predictor
// at defaults. `candidate` nullopt probes Blank itself.
Pipeline get_pipeline_naive(const Catalog& catalog, std::size_t slot,
                            const std::optional<std::string>& candidate,
                            const ParamAssignment& params);

// Decisions already taken by earlier slots of the permutation: slot index to
// chosen component (nullopt for Blank). Embedded components always ride at
// declared defaults.
using DecidedSlots = std::map<std::size_t, std::optional<std::string>>;

// Like get_pipeline_naive, but slots present in `decided` keep their chosen
// component (at defaults); the predictor slot falls back to the standard
// predictor only while undecided.
Pipeline get_pipeline_quasi(const Catalog& catalog, std::size_t slot,
                            const std::optional<std::string>& candidate,
                            const ParamAssignment& params, const DecidedSlots& decided);

// The fixed slot order quasi-naive uses by default: predictor slot first,
// then the remaining slots in catalog order.
std::vector<std::size_t> default_permutation(const Catalog& catalog);

// Two-phase slot-local search. Phase 1 visits slots in a seed-shuffled
// order, probes every candidate at defaults (pre slots also probe Blank) and
// keeps per-slot winners; phase 2 cycles over slots whose winner has params,
// sampling fresh values. Improvements of the global best stream through
// `sink` and land in the returned events. Deterministic given (seed,
// evaluator, clock).
OptimizerRun naive_automl(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                          const Budget& budget, std::uint64_t seed, const EventSink& sink = {},
                          const Clock& clock = default_clock());

// Same engine with a fixed slot permutation instead of the shuffle, and with
// already-decided slots embedded into later probes (at defaults). Candidate
// order inside each slot stays seed-shuffled.
OptimizerRun quasi_naive_automl(const Catalog& catalog,
                                const std::vector<std::size_t>& permutation,
                                const EvaluateFn& evaluate_fn, const Budget& budget,
                                std::uint64_t seed, const EventSink& sink = {},
                                const Clock& clock = default_clock());

// Uniform baseline: each draw picks per pre slot Blank or a candidate (all
// equally likely), per predictor slot a candidate; components with params
// ride defaults with probability one half, otherwise sampled values.
OptimizerRun random_search(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                           const Budget& budget, std::uint64_t seed, const EventSink& sink = {},
                           const Clock& clock = default_clock());

// Exhaustive oracle over component choices at default params (pre slots
// include Blank). Ties keep the earlier enumeration entry: slot 0 varies
// slowest, options per slot go Blank first, then catalog order. Throws
// ConfigError when the space exceeds `space_cap`.
struct BruteForceResult {
  Pipeline best;
  double oriented_score = 0.0;
  std::uint64_t evaluations = 0;
};

BruteForceResult brute_force(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                             std::uint64_t space_cap = 10000, const EventSink& sink = {},
                             const Clock& clock = default_clock());

// True when the pipeline fits; repair probes candidates through this.
using FitProbe = std::function<bool(const Pipeline&)>;

// Drops pre-processors left to right, cumulatively, until the probe passes;
// at most (filled pre-processors + 1) probe calls. Throws RepairExhausted
// when even the predictor-only pipeline fails.
Pipeline repair(const Catalog& catalog, const Pipeline& broken, const FitProbe& probe);

// Per-slot check of the separability assumption behind the naive search:
// whether the slot's argmax is the same under every assignment of the other
// slots. Enumerates the full space (ConfigError beyond space_cap). When a
// slot is violated, two witness contexts with differing argmax are reported.
struct NaivetyContext {
  // Choice per slot (nullopt = Blank); the inspected slot's own entry is
  // meaningless inside a context.
  std::vector<std::optional<std::string>> others;
  std::optional<std::string> best_candidate;
};

struct SlotNaivetyReport {
  std::size_t slot = 0;
  bool violated = false;
  std::vector<NaivetyContext> witnesses;  // two entries when violated
};

std::vector<SlotNaivetyReport> naivety_violation(const Catalog& catalog,
                                                 const EvaluateFn& evaluate_fn,
                                                 std::uint64_t space_cap = 10000);

}  // namespace naiveml
