#include "naiveml/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "naiveml/errors.hpp"

namespace naiveml {

namespace {

constexpr double kLowest = -std::numeric_limits<double>::infinity();

}  // namespace

std::vector<std::string> validate_budget(const Budget& b) {
  std::vector<std::string> out;
  if (!b.wall_limit.has_value() && !b.eval_limit.has_value()) {
    out.push_back("budget needs a wall limit or an eval limit");
  }
  if (b.wall_limit.has_value() && b.wall_limit->count() < 0.0) {
    out.push_back("wall limit cannot be negative");
  }
  return out;
}

Pipeline get_pipeline_naive(const Catalog& catalog, std::size_t slot,
                            const std::optional<std::string>& candidate,
                            const ParamAssignment& params) {
  const std::size_t pred = catalog.predictor_slot();
  Pipeline p;
  p.slots.resize(catalog.slots.size());
  if (slot == pred) {
    if (!candidate.has_value()) {
      throw std::invalid_argument("get_pipeline_naive: predictor slot cannot probe Blank");
    }
    p.slots[pred] = SlotChoice{*candidate, params};
  } else {
    if (candidate.has_value()) p.slots[slot] = SlotChoice{*candidate, params};
    p.slots[pred] = SlotChoice{catalog.standard_predictor, ParamAssignment::defaults_marker()};
  }
  return p;
}

Pipeline get_pipeline_quasi(const Catalog& catalog, std::size_t slot,
                            const std::optional<std::string>& candidate,
                            const ParamAssignment& params, const DecidedSlots& decided) {
  const std::size_t pred = catalog.predictor_slot();
  Pipeline p;
  p.slots.resize(catalog.slots.size());
  for (const auto& [s, component] : decided) {
    if (s >= p.slots.size()) throw std::invalid_argument("get_pipeline_quasi: bad decided slot");
    if (s == slot) continue;  // the probed slot is set below
    if (component.has_value()) {
      p.slots[s] = SlotChoice{*component, ParamAssignment::defaults_marker()};
    }
  }
  if (slot == pred) {
    if (!candidate.has_value()) {
      throw std::invalid_argument("get_pipeline_quasi: predictor slot cannot probe Blank");
    }
    p.slots[pred] = SlotChoice{*candidate, params};
  } else {
    if (candidate.has_value()) p.slots[slot] = SlotChoice{*candidate, params};
    if (!p.slots[pred].has_value() && decided.count(pred) == 0) {
      p.slots[pred] = SlotChoice{catalog.standard_predictor, ParamAssignment::defaults_marker()};
    }
  }
  return p;
}

std::vector<std::size_t> default_permutation(const Catalog& catalog) {
  std::vector<std::size_t> order{catalog.predictor_slot()};
  for (std::size_t s = 0; s < catalog.slots.size(); ++s) {
    if (s != order.front()) order.push_back(s);
  }
  return order;
}

namespace {

struct SlotIncumbent {
  bool decided = false;
  std::optional<std::string> component;  // nullopt = Blank won the slot
  ParamAssignment params;
  double best_local = kLowest;
};

Pipeline compose_snapshot(const Catalog& catalog, const std::vector<SlotIncumbent>& slots) {
  const std::size_t pred = catalog.predictor_slot();
  Pipeline p;
  p.slots.resize(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].decided && slots[s].component.has_value()) {
      p.slots[s] = SlotChoice{*slots[s].component, slots[s].params};
    }
  }
  // An undecided predictor slot still needs a predictor to stand for the run.
  if (!p.slots[pred].has_value()) {
    p.slots[pred] = SlotChoice{catalog.standard_predictor, ParamAssignment::defaults_marker()};
  }
  return p;
}

OptimizerRun run_two_phase(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                           const Budget& budget, std::uint64_t seed, const EventSink& sink,
                           const Clock& clock, bool quasi,
                           const std::vector<std::size_t>& permutation) {
  {
    const auto problems = validate_budget(budget);
    if (!problems.empty()) throw ConfigError("two-phase search: " + problems.front());
  }
  const auto start = clock();
  Rng rng(seed);
  const std::size_t slot_count = catalog.slots.size();

  std::vector<std::size_t> order;
  if (quasi) {
    order = permutation;
  } else {
    order.resize(slot_count);
    std::iota(order.begin(), order.end(), 0);
    shuffle_in_place(order, rng);
  }

  OptimizerRun run;
  std::vector<SlotIncumbent> slots(slot_count);
  double v_star = kLowest;
  std::uint64_t evals = 0;
  // Phase-1 probes repeat across slots (every Blank probe coincides with an
  // already-probed composition), so phase 1 goes through a result cache and
  // the evaluator is called exactly once per catalog candidate. Phase 2
  // bypasses the cache: repeated draws must keep consuming eval budget.
  std::map<std::string, EvalResult> phase1_cache;
  bool out_of_budget = false;

  auto budget_gone = [&] {
    if (budget.eval_limit.has_value() && evals >= *budget.eval_limit) return true;
    if (budget.wall_limit.has_value() && clock() - start >= *budget.wall_limit) return true;
    return false;
  };

  auto probe = [&](const Pipeline& p, bool cached) -> std::optional<EvalResult> {
    std::string key;
    if (cached) {
      key = pipeline_key(p);
      auto it = phase1_cache.find(key);
      if (it != phase1_cache.end()) return it->second;
    }
    if (budget_gone()) return std::nullopt;
    EvalResult r = evaluate_fn(p);
    ++evals;
    if (cached) phase1_cache.emplace(std::move(key), r);
    return r;
  };

  auto consider = [&](std::size_t s, const std::optional<std::string>& component,
                      const ParamAssignment& params, const EvalResult& r) {
    const double v = r.oriented_or_lowest();
    SlotIncumbent& inc = slots[s];
    if (!(v > inc.best_local)) return;
    inc.decided = true;
    inc.component = component;
    inc.params = params;
    inc.best_local = v;
    if (v > v_star) {
      v_star = v;
      TraceEvent ev;
      ev.elapsed = std::chrono::duration_cast<Seconds>(clock() - start);
      ev.pipeline = compose_snapshot(catalog, slots);
      ev.trigger_slot = s;
      ev.local_score = inc.best_local;
      ev.oriented_score = v;
      ev.eval_status = r.status;
      if (sink) sink(ev);
      run.events.push_back(std::move(ev));
    }
  };

  auto decided_map = [&] {
    DecidedSlots m;
    for (std::size_t s = 0; s < slot_count; ++s) {
      if (slots[s].decided) m[s] = slots[s].component;
    }
    return m;
  };

  // Phase 1: pick the best component per slot, default params throughout.
  for (std::size_t s : order) {
    std::vector<std::optional<std::string>> entries;
    if (catalog.is_pre_slot(s)) entries.emplace_back(std::nullopt);
    for (const ComponentSpec& cand : catalog.slots[s].candidates) entries.emplace_back(cand.id);
    shuffle_in_place(entries, rng);
    for (const auto& entry : entries) {
      const ParamAssignment defaults = ParamAssignment::defaults_marker();
      const Pipeline candidate =
          quasi ? get_pipeline_quasi(catalog, s, entry, defaults, decided_map())
                : get_pipeline_naive(catalog, s, entry, defaults);
      const auto r = probe(candidate, true);
      if (!r.has_value()) {
        out_of_budget = true;
        break;
      }
      consider(s, entry, defaults, *r);
    }
    if (out_of_budget) break;
  }

  // Phase 2: round-robin over slots whose winner has parameters to sample.
  if (!out_of_budget) {
    std::vector<std::size_t> active;
    for (std::size_t s : order) {
      const SlotIncumbent& inc = slots[s];
      if (!inc.decided || !inc.component.has_value()) continue;
      const ComponentSpec* spec = catalog.find(s, *inc.component);
      if (spec != nullptr && !spec->params.empty()) active.push_back(s);
    }
    while (!active.empty() && !out_of_budget) {
      for (std::size_t s : active) {
        const ComponentSpec* spec = catalog.find(s, *slots[s].component);
        const ParamAssignment theta = sample_params(*spec, rng);
        const Pipeline candidate =
            quasi ? get_pipeline_quasi(catalog, s, slots[s].component, theta, decided_map())
                  : get_pipeline_naive(catalog, s, slots[s].component, theta);
        const auto r = probe(candidate, false);
        if (!r.has_value()) {
          out_of_budget = true;
          break;
        }
        consider(s, slots[s].component, theta, *r);
      }
    }
  }

  for (std::size_t s = 0; s < slot_count; ++s) {
    if (!slots[s].decided) {
      run.notes.push_back("slot " + std::to_string(s) + " never decided");
    }
  }
  run.final_pipeline = compose_snapshot(catalog, slots);
  run.evaluations = evals;
  return run;
}

}  // namespace

OptimizerRun naive_automl(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                          const Budget& budget, std::uint64_t seed, const EventSink& sink,
                          const Clock& clock) {
  return run_two_phase(catalog, evaluate_fn, budget, seed, sink, clock, false, {});
}

OptimizerRun quasi_naive_automl(const Catalog& catalog,
                                const std::vector<std::size_t>& permutation,
                                const EvaluateFn& evaluate_fn, const Budget& budget,
                                std::uint64_t seed, const EventSink& sink, const Clock& clock) {
  if (permutation.size() != catalog.slots.size()) {
    throw ConfigError("quasi-naive: permutation length does not match the catalog");
  }
  std::set<std::size_t> seen(permutation.begin(), permutation.end());
  if (seen.size() != permutation.size() ||
      (!permutation.empty() && *seen.rbegin() != permutation.size() - 1)) {
    throw ConfigError("quasi-naive: not a permutation of the slot indices");
  }
  return run_two_phase(catalog, evaluate_fn, budget, seed, sink, clock, true, permutation);
}

namespace {

ParamAssignment coin_or_sample(const ComponentSpec& spec, Rng& rng) {
  if (spec.params.empty()) return ParamAssignment::defaults_marker();
  if (uniform_unit(rng) < 0.5) return ParamAssignment::defaults_marker();
  return sample_params(spec, rng);
}

}  // namespace

OptimizerRun random_search(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                           const Budget& budget, std::uint64_t seed, const EventSink& sink,
                           const Clock& clock) {
  {
    const auto problems = validate_budget(budget);
    if (!problems.empty()) throw ConfigError("random search: " + problems.front());
  }
  const auto start = clock();
  Rng rng(seed);
  const std::size_t pred = catalog.predictor_slot();

  OptimizerRun run;
  double v_star = kLowest;
  bool has_best = false;
  Pipeline best;

  auto budget_gone = [&] {
    if (budget.eval_limit.has_value() && run.evaluations >= *budget.eval_limit) return true;
    if (budget.wall_limit.has_value() && clock() - start >= *budget.wall_limit) return true;
    return false;
  };

  while (!budget_gone()) {
    Pipeline p;
    p.slots.resize(catalog.slots.size());
    for (std::size_t s = 0; s < catalog.slots.size(); ++s) {
      const auto& cands = catalog.slots[s].candidates;
      if (catalog.is_pre_slot(s)) {
        const std::size_t pick = uniform_index(rng, cands.size() + 1);
        if (pick == 0) continue;  // Blank
        p.slots[s] = SlotChoice{cands[pick - 1].id, coin_or_sample(cands[pick - 1], rng)};
      } else {
        const ComponentSpec& spec = cands[uniform_index(rng, cands.size())];
        p.slots[s] = SlotChoice{spec.id, coin_or_sample(spec, rng)};
      }
    }
    const EvalResult r = evaluate_fn(p);
    ++run.evaluations;
    const double v = r.oriented_or_lowest();
    if (v > v_star) {
      v_star = v;
      best = p;
      has_best = true;
      TraceEvent ev;
      ev.elapsed = std::chrono::duration_cast<Seconds>(clock() - start);
      ev.pipeline = p;
      ev.trigger_slot = pred;
      ev.local_score = v;
      ev.oriented_score = v;
      ev.eval_status = r.status;
      if (sink) sink(ev);
      run.events.push_back(std::move(ev));
    }
  }

  if (has_best) {
    run.final_pipeline = best;
  } else {
    run.final_pipeline.slots.resize(catalog.slots.size());
    run.final_pipeline.slots[pred] =
        SlotChoice{catalog.standard_predictor, ParamAssignment::defaults_marker()};
    run.notes.push_back("no successful evaluation; falling back to the standard predictor");
  }
  return run;
}

namespace {

// Options per slot in enumeration order: Blank first on pre-processor slots,
// then candidates in catalog order.
std::vector<std::vector<std::optional<std::string>>> enumeration_options(const Catalog& catalog) {
  std::vector<std::vector<std::optional<std::string>>> options(catalog.slots.size());
  for (std::size_t s = 0; s < catalog.slots.size(); ++s) {
    if (catalog.is_pre_slot(s)) options[s].emplace_back(std::nullopt);
    for (const ComponentSpec& cand : catalog.slots[s].candidates) options[s].emplace_back(cand.id);
  }
  return options;
}

std::uint64_t space_size(const std::vector<std::vector<std::optional<std::string>>>& options,
                         std::uint64_t cap) {
  std::uint64_t space = 1;
  for (const auto& opts : options) {
    if (opts.empty()) throw ConfigError("enumeration: slot with no options");
    if (space > cap / opts.size() + 1) return cap + 1;  // early out, avoids overflow
    space *= opts.size();
  }
  return space;
}

Pipeline pipeline_from_digits(const std::vector<std::vector<std::optional<std::string>>>& options,
                              const std::vector<std::size_t>& digits) {
  Pipeline p;
  p.slots.resize(options.size());
  for (std::size_t s = 0; s < options.size(); ++s) {
    const auto& choice = options[s][digits[s]];
    if (choice.has_value()) p.slots[s] = SlotChoice{*choice, ParamAssignment::defaults_marker()};
  }
  return p;
}

// Odometer step, slot 0 most significant. Returns false once exhausted.
bool next_digits(const std::vector<std::vector<std::optional<std::string>>>& options,
                 std::vector<std::size_t>& digits) {
  for (std::size_t s = options.size(); s-- > 0;) {
    if (++digits[s] < options[s].size()) return true;
    digits[s] = 0;
  }
  return false;
}

}  // namespace

BruteForceResult brute_force(const Catalog& catalog, const EvaluateFn& evaluate_fn,
                             std::uint64_t space_cap, const EventSink& sink, const Clock& clock) {
  const auto start = clock();
  const auto options = enumeration_options(catalog);
  if (space_size(options, space_cap) > space_cap) {
    throw ConfigError("brute force: search space exceeds the cap of " +
                      std::to_string(space_cap));
  }

  BruteForceResult result;
  result.oriented_score = kLowest;
  std::vector<std::size_t> digits(options.size(), 0);
  bool first = true;
  do {
    const Pipeline p = pipeline_from_digits(options, digits);
    const EvalResult r = evaluate_fn(p);
    ++result.evaluations;
    const double v = r.oriented_or_lowest();
    if (first) {
      // All-failing spaces still return the first enumeration entry.
      result.best = p;
      first = false;
    }
    // Strict improvement keeps the earliest enumeration entry on ties.
    if (v > result.oriented_score) {
      result.oriented_score = v;
      result.best = p;
      if (sink) {
        TraceEvent ev;
        ev.elapsed = std::chrono::duration_cast<Seconds>(clock() - start);
        ev.pipeline = p;
        ev.trigger_slot = catalog.predictor_slot();
        ev.local_score = v;
        ev.oriented_score = v;
        ev.eval_status = r.status;
        sink(ev);
      }
    }
  } while (next_digits(options, digits));
  return result;
}

Pipeline repair(const Catalog& catalog, const Pipeline& broken, const FitProbe& probe) {
  if (broken.slots.size() != catalog.slots.size()) {
    throw std::invalid_argument("repair: pipeline does not match catalog slot count");
  }
  if (probe(broken)) return broken;
  Pipeline current = broken;
  for (std::size_t s = 0; s < current.slots.size(); ++s) {
    if (!catalog.is_pre_slot(s)) continue;
    if (!current.slots[s].has_value()) continue;
    current.slots[s] = std::nullopt;  // removals accumulate left to right
    if (probe(current)) return current;
  }
  throw RepairExhausted("pipeline fails even reduced to its predictor alone");
}

std::vector<SlotNaivetyReport> naivety_violation(const Catalog& catalog,
                                                 const EvaluateFn& evaluate_fn,
                                                 std::uint64_t space_cap) {
  const auto options = enumeration_options(catalog);
  const std::uint64_t space = space_size(options, space_cap);
  if (space > space_cap) {
    throw ConfigError("naivety check: search space exceeds the cap of " +
                      std::to_string(space_cap));
  }

  // Score every full assignment once, in enumeration order.
  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(space));
  std::vector<std::vector<std::size_t>> combos;
  combos.reserve(static_cast<std::size_t>(space));
  std::vector<std::size_t> digits(options.size(), 0);
  do {
    scores.push_back(evaluate_fn(pipeline_from_digits(options, digits)).oriented_or_lowest());
    combos.push_back(digits);
  } while (next_digits(options, digits));

  std::vector<SlotNaivetyReport> reports;
  for (std::size_t s = 0; s < options.size(); ++s) {
    SlotNaivetyReport report;
    report.slot = s;

    // Group assignments by the other slots' digits; per context the argmax
    // over this slot's options, ties to the earlier option.
    struct ContextBest {
      std::size_t digit = 0;
      double value = kLowest;
      bool seen = false;
      std::vector<std::size_t> others;
    };
    std::map<std::vector<std::size_t>, ContextBest> contexts;
    std::vector<std::vector<std::size_t>> context_order;
    for (std::size_t i = 0; i < combos.size(); ++i) {
      std::vector<std::size_t> key = combos[i];
      const std::size_t digit = key[s];
      key[s] = 0;
      auto [it, inserted] = contexts.try_emplace(key);
      if (inserted) context_order.push_back(key);
      ContextBest& best = it->second;
      // Enumeration visits each context's options in order, so strict
      // improvement realizes the tie-break.
      if (!best.seen || scores[i] > best.value) {
        best.seen = true;
        best.value = scores[i];
        best.digit = digit;
        best.others = combos[i];
      }
    }

    auto to_context = [&](const ContextBest& best) {
      NaivetyContext ctx;
      ctx.others.resize(options.size());
      for (std::size_t o = 0; o < options.size(); ++o) {
        ctx.others[o] = options[o][best.others[o]];
      }
      ctx.others[s] = std::nullopt;
      ctx.best_candidate = options[s][best.digit];
      return ctx;
    };

    const ContextBest& reference = contexts.at(context_order.front());
    for (const auto& key : context_order) {
      const ContextBest& candidate = contexts.at(key);
      if (candidate.digit != reference.digit) {
        report.violated = true;
        report.witnesses.push_back(to_context(reference));
        report.witnesses.push_back(to_context(candidate));
        break;
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace naiveml
