// Acceptance checks for the release gate. Each criterion prints exactly one
// PASS/FAIL line; the binary exits nonzero when any criterion fails. Unlike
// the unit tests these lean on end-to-end behavior: real optimizer runs,
// real files on disk, wall-clock limits.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "naiveml/analysis.hpp"
#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"
#include "naiveml/harness.hpp"
#include "naiveml/metrics.hpp"
#include "naiveml/optimizer.hpp"
#include "naiveml/rng.hpp"
#include "naiveml/splits.hpp"
#include "naiveml/surrogate.hpp"
#include "support.hpp"

using namespace naiveml;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure {
  std::string detail;
};

void require(bool condition, const std::string& detail) {
  if (!condition) throw Failure{detail};
}

fs::path repo_root() {
  if (const char* env = std::getenv("NAIVEML_REPO_ROOT")) return fs::path(env);
  fs::path p = fs::current_path();
  while (!p.empty()) {
    if (fs::exists(p / "data" / "smoke_blobs.csv")) return p;
    if (p == p.parent_path()) break;
    p = p.parent_path();
  }
  return fs::current_path();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<Seconds>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. On interaction-free surrogate spaces the slot-local search must agree
//    with exhaustive enumeration, slot by slot, across 50 seeded spaces.

std::string criterion_separable_agreement() {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng shape_rng(seed * 7919 + 1);
    const std::size_t slot_count = 2 + uniform_index(shape_rng, 3);  // 2..4
    std::vector<SurrogateSlotShape> shapes(slot_count);
    for (std::size_t s = 0; s + 1 < slot_count; ++s) {
      shapes[s].role = s % 2 == 0 ? SlotRole::data_preprocessor : SlotRole::feature_preprocessor;
      shapes[s].candidates = 2 + uniform_index(shape_rng, 4);  // 2..5
    }
    shapes.back().role = SlotRole::predictor;
    shapes.back().candidates = 2 + uniform_index(shape_rng, 4);

    const Catalog catalog = make_surrogate_catalog(shapes);
    const SurrogateSurface surface = make_surface(catalog, 0.0, 0.0, 0.0, seed);
    const EvaluateFn eval = make_surrogate_evaluator(surface);

    const BruteForceResult oracle = brute_force(catalog, eval, 100000);
    const OptimizerRun run = naive_automl(catalog, eval, Budget::evals(1000000), seed, {},
                                          testsupport::ticking_clock());
    for (std::size_t s = 0; s < slot_count; ++s) {
      const bool oracle_filled = oracle.best.slots[s].has_value();
      const bool run_filled = run.final_pipeline.slots[s].has_value();
      require(oracle_filled == run_filled,
              "seed " + std::to_string(seed) + " slot " + std::to_string(s) +
                  ": one search blanks the slot, the other does not");
      if (oracle_filled) {
        require(oracle.best.slots[s]->component_id == run.final_pipeline.slots[s]->component_id,
                "seed " + std::to_string(seed) + " slot " + std::to_string(s) + ": " +
                    oracle.best.slots[s]->component_id + " vs " +
                    run.final_pipeline.slots[s]->component_id);
      }
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s, limit 5 s");
  return "50/50 spaces agree, " + std::to_string(elapsed).substr(0, 4) + " s";
}

// ---------------------------------------------------------------------------
// 2. The four-pipeline fixture (0.6 / 0.7 / 0.9 / 0.65): the slot-local
//    searches land on their known suboptimal corners, enumeration on the
//    true optimum, and the separability check flags the predictor slot.

std::string criterion_worked_fixture() {
  const Catalog catalog = testsupport::two_slot_catalog();
  const SurrogateSurface surface = testsupport::worked_surface();
  const EvaluateFn eval = make_surrogate_evaluator(surface);
  auto value_of = [&](const Pipeline& p) { return *surrogate_eval(surface, p).oriented_score; };

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const OptimizerRun naive = naive_automl(catalog, eval, Budget::evals(100), seed, {},
                                            testsupport::ticking_clock());
    const double naive_value = value_of(naive.final_pipeline);
    require(std::abs(naive_value - 0.65) <= 1e-12,
            "naive composed value " + std::to_string(naive_value) + ", wanted 0.65");

    const OptimizerRun quasi =
        quasi_naive_automl(catalog, default_permutation(catalog), eval, Budget::evals(100), seed,
                           {}, testsupport::ticking_clock());
    require(std::abs(value_of(quasi.final_pipeline) - 0.70) <= 1e-12,
            "quasi-naive composed value " + std::to_string(value_of(quasi.final_pipeline)) +
                ", wanted 0.70");
  }

  const BruteForceResult oracle = brute_force(catalog, eval);
  require(std::abs(oracle.oriented_score - 0.90) <= 1e-12,
          "brute force value " + std::to_string(oracle.oriented_score) + ", wanted 0.90");

  const auto reports = naivety_violation(catalog, eval);
  require(reports.size() == 2, "expected one report per slot");
  require(reports[1].slot == 1 && reports[1].violated,
          "predictor slot not flagged as naivety-violating");
  require(reports[1].witnesses.size() == 2, "missing witness contexts for the predictor slot");
  return "0.65 / 0.70 / 0.90 exact, predictor slot flagged";
}

// ---------------------------------------------------------------------------
// 3. Metric oracles on 1,000 random instances each.

std::string criterion_metric_oracles() {
  Rng rng(424242);
  std::size_t auroc_checked = 0;
  while (auroc_checked < 1000) {
    const std::size_t n = 2 + uniform_index(rng, 60);
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    bool saw0 = false, saw1 = false;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(uniform_index(rng, 2));
      saw0 = saw0 || labels[i] == 0;
      saw1 = saw1 || labels[i] == 1;
      // Half the instances use a coarse grid so tied scores are routine.
      scores[i] = auroc_checked % 2 == 0 ? static_cast<double>(uniform_index(rng, 6)) / 5.0
                                         : uniform_unit(rng);
    }
    if (!saw0 || !saw1) continue;

    double wins = 0.0, ties = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] != 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (labels[j] != 0) continue;
        ++pairs;
        if (scores[i] > scores[j]) wins += 1.0;
        if (scores[i] == scores[j]) ties += 1.0;
      }
    }
    const double oracle = (wins + 0.5 * ties) / static_cast<double>(pairs);
    const double fast = auroc(labels, scores);
    require(std::abs(fast - oracle) <= 1e-9,
            "auroc mismatch " + std::to_string(fast) + " vs " + std::to_string(oracle));
    ++auroc_checked;
  }

  for (std::size_t instance = 0; instance < 1000; ++instance) {
    const std::size_t n = 1 + uniform_index(rng, 40);
    const std::size_t classes = 2 + uniform_index(rng, 4);
    std::vector<int> labels(n);
    Matrix probs(n, std::vector<double>(classes));
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(uniform_index(rng, classes));
      double sum = 0.0;
      for (double& v : probs[i]) {
        v = uniform_unit(rng);
        sum += v;
      }
      // Some rows renormalized, some left raw, some zeroed at the label to
      // exercise the clip.
      if (instance % 3 == 0) {
        for (double& v : probs[i]) v /= sum;
      }
      if (instance % 7 == 0) probs[i][labels[i]] = 0.0;
    }
    double oracle = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double p = probs[i][labels[i]];
      if (p < 1e-15) p = 1e-15;
      if (p > 1.0) p = 1.0;
      oracle -= std::log(p);
    }
    oracle /= static_cast<double>(n);
    const double fast = log_loss(labels, probs);
    require(std::abs(fast - oracle) <= 1e-9,
            "log loss mismatch " + std::to_string(fast) + " vs " + std::to_string(oracle));
  }
  return "auroc and log loss within 1e-9 on 1000 instances each";
}

// ---------------------------------------------------------------------------
// 4. Structure of two-phase runs: exact phase-1 call count, strictly
//    increasing yields, and byte-identical traces modulo elapsed_ms for
//    identical seeds and count budgets.

std::string canonical_trace(const fs::path& path) {
  std::ifstream in(path);
  require(bool(in), "cannot open trace " + path.string());
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    json j = json::parse(line, nullptr, false);
    require(!j.is_discarded(), "trace line is not JSON: " + line);
    j.erase("elapsed_ms");
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string criterion_run_structure() {
  // Exact phase-1 call count on parameterless spaces: one evaluator call
  // per catalog candidate, whatever the slot order.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng shape_rng(seed + 31);
    std::vector<SurrogateSlotShape> shapes(2 + uniform_index(shape_rng, 3));
    std::size_t candidate_total = 0;
    for (std::size_t s = 0; s + 1 < shapes.size(); ++s) {
      shapes[s].role = SlotRole::feature_preprocessor;
      shapes[s].candidates = 2 + uniform_index(shape_rng, 3);
      candidate_total += shapes[s].candidates;
    }
    shapes.back().role = SlotRole::predictor;
    shapes.back().candidates = 2 + uniform_index(shape_rng, 3);
    candidate_total += shapes.back().candidates;

    const Catalog catalog = make_surrogate_catalog(shapes);
    const EvaluateFn eval = make_surrogate_evaluator(make_surface(catalog, 0.2, 0.0, 0.0, seed));

    std::uint64_t calls = 0;
    const EvaluateFn counted = [&calls, eval](const Pipeline& p) {
      ++calls;
      return eval(p);
    };
    const OptimizerRun naive = naive_automl(catalog, counted, Budget::evals(100000), seed, {},
                                            testsupport::ticking_clock());
    require(naive.evaluations == candidate_total && calls == candidate_total,
            "naive phase 1 used " + std::to_string(calls) + " calls, wanted " +
                std::to_string(candidate_total));
    calls = 0;
    const OptimizerRun quasi =
        quasi_naive_automl(catalog, default_permutation(catalog), counted,
                           Budget::evals(100000), seed, {}, testsupport::ticking_clock());
    require(quasi.evaluations == candidate_total && calls == candidate_total,
            "quasi phase 1 used " + std::to_string(calls) + " calls, wanted " +
                std::to_string(candidate_total));

    for (const OptimizerRun* run : {&naive, &quasi}) {
      for (std::size_t i = 1; i < run->events.size(); ++i) {
        require(run->events[i].oriented_score > run->events[i - 1].oriented_score,
                "yielded scores not strictly increasing");
      }
    }
  }

  // Byte identity: same seed, same eval budget, surrogate evaluation, two
  // fresh trace files. Parameters force phase 2 into the runs.
  std::vector<SurrogateSlotShape> shapes(3);
  shapes[0].role = SlotRole::data_preprocessor;
  shapes[0].candidates = 3;
  shapes[0].real_params = 1;
  shapes[1].role = SlotRole::feature_preprocessor;
  shapes[1].candidates = 2;
  shapes[1].real_params = 2;
  shapes[2].role = SlotRole::predictor;
  shapes[2].candidates = 3;
  shapes[2].real_params = 1;
  const Catalog catalog = make_surrogate_catalog(shapes);
  const EvaluateFn eval =
      make_surrogate_evaluator(make_surface(catalog, 0.1, 0.1, 0.4, 2026, 0.05));

  TempDir dir("naiveml_acceptance_traces");
  auto run_traced = [&](const std::string& name, std::uint64_t seed) {
    const fs::path path = dir.path / name;
    TraceWriter writer(path, "structure__naive__s" + std::to_string(seed));
    const EventSink sink = [&writer](const TraceEvent& ev) { writer.write(ev); };
    naive_automl(catalog, eval, Budget::evals(60), seed, sink, testsupport::ticking_clock());
    return canonical_trace(path);
  };
  for (std::uint64_t seed : {3u, 17u}) {
    const std::string a = run_traced("a_s" + std::to_string(seed) + ".jsonl", seed);
    const std::string b = run_traced("b_s" + std::to_string(seed) + ".jsonl", seed);
    require(!a.empty(), "trace came out empty");
    require(a == b, "same-seed traces differ beyond elapsed_ms");
  }
  return "call counts exact, yields increasing, same-seed traces byte-identical";
}

// ---------------------------------------------------------------------------
// 5. Repair on the standardizer-into-Bernoulli incompatibility.

std::string criterion_repair() {
  Catalog catalog;
  CatalogSlot pre;
  pre.role = SlotRole::data_preprocessor;
  pre.candidates.push_back({"standard_scaler", SlotRole::data_preprocessor, {}, "standard_scaler"});
  CatalogSlot pred;
  pred.role = SlotRole::predictor;
  ComponentSpec bern{"bernoulli_nb", SlotRole::predictor, {}, "bernoulli_nb"};
  ParamSpec alpha;
  alpha.name = "alpha";
  alpha.kind = ParamKind::real;
  alpha.lo = 0.01;
  alpha.hi = 100.0;
  alpha.log_scale = true;
  alpha.default_value = ParamValue{1.0};
  bern.params.push_back(alpha);
  pred.candidates.push_back(bern);
  catalog.slots = {pre, pred};
  catalog.standard_predictor = "bernoulli_nb";

  // Indicator-ish data: Bernoulli accepts it raw, but standardizing shifts
  // it negative and the fit dies.
  Dataset d;
  d.class_count = 2;
  d.task_kind = TaskKind::binary;
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    const int label = i % 2;
    d.features.push_back({label == 1 ? 1.0 : 0.0, uniform_unit(rng)});
    d.labels.push_back(label);
  }

  Pipeline broken;
  broken.slots.resize(2);
  broken.slots[0] = SlotChoice{"standard_scaler", ParamAssignment::defaults_marker()};
  broken.slots[1] = SlotChoice{"bernoulli_nb", ParamAssignment::defaults_marker()};

  std::size_t probes = 0;
  const FitProbe probe = [&](const Pipeline& p) {
    ++probes;
    try {
      fit_pipeline(catalog, p, d);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };

  const Pipeline repaired = repair(catalog, broken, probe);
  require(!repaired.slots[0].has_value(), "the leftmost pre-processor was not removed");
  require(repaired.slots[1].has_value() && repaired.slots[1]->component_id == "bernoulli_nb",
          "the predictor did not survive repair");
  require(probes <= 2, "repair used " + std::to_string(probes) + " probes, limit k+1 = 2");

  bool threw = false;
  try {
    repair(catalog, broken, [](const Pipeline&) { return false; });
  } catch (const RepairExhausted&) {
    threw = true;
  }
  require(threw, "an all-failing probe did not raise RepairExhausted");
  return "leftmost removal, 2 probes, RepairExhausted on all-failing";
}

// ---------------------------------------------------------------------------
// 6. Validation protocol: fold properties, the exact 90/10 outer split on
//    n = 100, and byte-identical splits per seed.

std::string criterion_validation_protocol() {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 97;
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 3);
    const auto folds = kfold_splits(n, 5, labels, seed);
    require(folds.size() == 5, "wrong fold count");

    std::vector<int> covered(n, 0);
    std::map<int, std::vector<std::size_t>> per_class;
    for (const auto& fold : folds) {
      std::map<int, std::size_t> counts;
      for (std::size_t idx : fold.test) {
        ++covered[idx];
        ++counts[labels[idx]];
      }
      for (int c = 0; c < 3; ++c) per_class[c].push_back(counts[c]);
      std::set<std::size_t> test_set(fold.test.begin(), fold.test.end());
      for (std::size_t idx : fold.train) {
        require(test_set.count(idx) == 0, "train and test folds overlap");
      }
    }
    for (int c : covered) require(c == 1, "folds do not partition the rows");
    for (const auto& [cls, counts] : per_class) {
      const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
      require(*hi - *lo <= 1, "class " + std::to_string(cls) + " unbalanced across folds");
    }
  }

  std::vector<int> labels(100);
  for (std::size_t i = 0; i < 100; ++i) labels[i] = static_cast<int>(i % 2);
  Dataset d;
  d.features.assign(100, {0.0});
  d.labels = labels;
  d.class_count = 2;
  d.task_kind = TaskKind::binary;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OuterSplit split = outer_split(d, 0.9, seed);
    require(split.train.rows() == 90 && split.test.rows() == 10,
            "90/10 on n=100 not exact");
    const OuterSplit again = outer_split(d, 0.9, seed);
    require(split.train_indices == again.train_indices &&
                split.test_indices == again.test_indices,
            "outer split changed between calls with one seed");
    const auto folds_a = kfold_splits(90, 5, split.train.labels, seed);
    const auto folds_b = kfold_splits(90, 5, split.train.labels, seed);
    for (std::size_t f = 0; f < folds_a.size(); ++f) {
      require(folds_a[f].train == folds_b[f].train && folds_a[f].test == folds_b[f].test,
              "inner folds changed between calls with one seed");
    }
  }
  return "folds partition and balance, 90/10 exact, splits replay per seed";
}

// ---------------------------------------------------------------------------
// 7. Analysis fixtures, exact.

std::string criterion_analysis_fixtures() {
  std::map<std::string, AnytimeTrace> traces;
  traces["a"] = {{1.0, 0.5}, {5.0, 0.9}};
  traces["b"] = {{2.0, 0.84}};
  const auto gaps = empirical_gap(traces, 5.0);
  require(gaps.at("a") == 0.0, "gap of the leader is not zero");
  require(std::abs(gaps.at("b") - 0.06) <= 1e-12, "trailing gap is not 0.06");

  using V = std::vector<std::optional<double>>;
  const auto two_tie = average_ranks(V{0.9, 0.9});
  require(two_tie == std::vector<double>{1.5, 1.5}, "two-way tie is not 1.5/1.5");
  const auto three = average_ranks(V{0.9, 0.9, 0.5});
  require(three == std::vector<double>{1.5, 1.5, 3.0}, "tie-then-last is not 1.5/1.5/3");

  TraceByDataset by_dataset;
  by_dataset["d1"]["a"] = {{1.0, 0.9}};
  by_dataset["d1"]["b"] = {{1.0, 0.9}};
  const auto ranked = rank_over_time(by_dataset, {2.0});
  require(ranked.size() == 1 && ranked[0].per_dataset.at("d1").at("a") == 1.5 &&
              ranked[0].per_dataset.at("d1").at("b") == 1.5,
          "rank_over_time does not share tied positions");

  TraceByDataset duel;
  duel["d1"]["a"] = {{1.0, 0.9}};
  duel["d1"]["b"] = {{1.0, 0.5}};
  duel["d2"]["a"] = {{1.0, 0.4}};
  duel["d2"]["b"] = {{1.0, 0.6}};
  duel["d3"]["a"] = {{1.0, 0.7}};
  duel["d3"]["b"] = {{1.0, 0.7}};
  const auto wins = win_counts(duel, "a", "b", {2.0});
  require(wins.size() == 1 && wins[0].wins_a == 1 && wins[0].wins_b == 1 && wins[0].ties == 1,
          "win counts are not 1/1/1 on the duel fixture");

  std::map<std::string, std::map<std::string, std::vector<double>>> finals;
  finals["d"]["a"] = {0.90};
  finals["d"]["b"] = {0.88};
  finals["d"]["c"] = {0.90};
  const FinalGapSummary summary = final_gap_distribution(finals);
  require(summary.per_dataset.at("a").at("d") == 0.0 &&
              std::abs(summary.per_dataset.at("b").at("d") - 0.02) <= 1e-12 &&
              summary.per_dataset.at("c").at("d") == 0.0,
          "final gaps are not 0 / 0.02 / 0");
  return "gap, rank ties, win counts and final gaps all exact";
}

// ---------------------------------------------------------------------------
// 8. End-to-end smoke on the bundled dataset and catalog.

std::string criterion_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = repo_root();
  const Dataset data = load_csv(root / "data" / "smoke_blobs.csv", "label");
  const Catalog catalog = load_catalog(root / "catalogs" / "default.json");
  require(validate_catalog(catalog).empty(), "bundled catalog does not validate");

  TempDir dir("naiveml_acceptance_smoke");
  BenchmarkConfig config;
  config.catalog = catalog;
  config.datasets.push_back({"smoke_blobs", data});
  config.optimizers = {"naive", "quasi-naive"};
  config.seeds = {0};
  config.budget = Budget::seconds(60.0);
  config.validation.scheme = KFoldScheme{5};
  config.validation.metric = Metric::error_rate;
  config.output_dir = dir.path;
  config.workers = 2;

  const std::vector<RunRecord> records = run_benchmark(config);
  require(records.size() == 2, "expected one record per optimizer");

  // Majority baseline on the shared outer split.
  const OuterSplit split = outer_split(data, 0.9, 0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(data.class_count), 0);
  for (int label : split.train.labels) ++counts[static_cast<std::size_t>(label)];
  const std::size_t majority_class =
      std::max_element(counts.begin(), counts.end()) - counts.begin();
  std::size_t wrong = 0;
  for (int label : split.test.labels) {
    wrong += static_cast<std::size_t>(label) != majority_class ? 1 : 0;
  }
  const double majority_error =
      static_cast<double>(wrong) / static_cast<double>(split.test.labels.size());

  for (const RunRecord& r : records) {
    require(!r.error.has_value(), r.run_id + " errored: " + r.error.value_or(""));
    require(r.final_test_raw.has_value(), r.run_id + " has no final test score");
    require(*r.final_test_raw <= majority_error,
            r.run_id + " test error " + std::to_string(*r.final_test_raw) +
                " above the majority baseline " + std::to_string(majority_error));

    const fs::path trace = dir.path / (r.run_id + ".trace.jsonl");
    require(fs::exists(trace), "missing trace file for " + r.run_id);
    std::ifstream in(trace);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
      ++lines;
      json j = json::parse(line, nullptr, false);
      require(!j.is_discarded(), "unparseable trace line in " + r.run_id);
      for (const char* field :
           {"run_id", "elapsed_ms", "slot", "component_id", "params", "local_score",
            "global_score", "status"}) {
        require(j.contains(field), std::string("trace line lacks '") + field + "'");
      }
      require(j["run_id"] == r.run_id, "trace line carries the wrong run id");
      require(j["elapsed_ms"].is_number_integer(), "elapsed_ms is not integral");
      require(j["params"].is_object(), "params is not an object");
      require(j["component_id"].is_string() || j["component_id"].is_null(),
              "component_id is neither string nor null");
      const std::string status = j["status"].get<std::string>();
      require(status == "ok" || status == "timeout" || status == "failed",
              "unknown status '" + status + "'");
    }
    require(lines > 0, "empty trace for " + r.run_id);
  }

  const double elapsed = seconds_since(start);
  require(elapsed <= 90.0, "took " + std::to_string(elapsed) + " s, limit 90 s");
  return "both searches beat the majority baseline, traces parse, " +
         std::to_string(elapsed).substr(0, 4) + " s";
}

// ---------------------------------------------------------------------------
// 9. A clock that expires every deadline: evaluations all report timeout
//    and the optimizers drain without raising.

std::string criterion_deadline_contract() {
  Catalog catalog;
  CatalogSlot pre;
  pre.role = SlotRole::data_preprocessor;
  pre.candidates.push_back({"scale", SlotRole::data_preprocessor, {}, "minmax_scaler"});
  CatalogSlot pred;
  pred.role = SlotRole::predictor;
  pred.candidates.push_back({"maj", SlotRole::predictor, {}, "majority"});
  pred.candidates.push_back({"nb", SlotRole::predictor, {}, "gaussian_nb"});
  ParamSpec smoothing;
  smoothing.name = "var_smoothing";
  smoothing.kind = ParamKind::real;
  smoothing.lo = 1e-12;
  smoothing.hi = 1e-6;
  smoothing.log_scale = true;
  smoothing.default_value = ParamValue{1e-9};
  pred.candidates[1].params.push_back(smoothing);
  catalog.slots = {pre, pred};
  catalog.standard_predictor = "maj";

  const Dataset d = testsupport::blob_dataset(40, 5);
  ValidationSpec spec;
  spec.scheme = KFoldScheme{5};
  // Every clock reading leaps an hour, so any deadline has already expired
  // by the first poll.
  const EvaluateFn inner = make_dataset_evaluator(catalog, d, spec, testsupport::leaping_clock());
  std::vector<EvalStatus> statuses;
  const EvaluateFn recorded = [&statuses, inner](const Pipeline& p) {
    const EvalResult r = inner(p);
    statuses.push_back(r.status);
    return r;
  };

  for (const std::string& name : {std::string("naive"), std::string("quasi-naive"),
                                  std::string("random")}) {
    statuses.clear();
    OptimizerRun run;
    if (name == "naive") {
      run = naive_automl(catalog, recorded, Budget::evals(8), 1, {}, testsupport::ticking_clock());
    } else if (name == "quasi-naive") {
      run = quasi_naive_automl(catalog, default_permutation(catalog), recorded, Budget::evals(8),
                               1, {}, testsupport::ticking_clock());
    } else {
      run = random_search(catalog, recorded, Budget::evals(8), 1, {},
                          testsupport::ticking_clock());
    }
    require(!statuses.empty(), name + " never evaluated");
    for (EvalStatus s : statuses) {
      require(s == EvalStatus::timeout, name + " saw a non-timeout evaluation");
    }
    require(run.events.empty(), name + " yielded an improvement from timeouts");
    require(run.final_pipeline.slots[1].has_value(), name + " lost its fallback predictor");
  }
  return "all evaluations time out, optimizers drain cleanly";
}

struct Criterion {
  int number;
  std::string title;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "interaction-free spaces: slot-local search matches enumeration",
       criterion_separable_agreement},
      {2, "worked four-pipeline fixture lands on 0.65 / 0.70 / 0.90",
       criterion_worked_fixture},
      {3, "metric oracles within 1e-9 on 1000 random instances",
       criterion_metric_oracles},
      {4, "two-phase structure: call counts, increasing yields, trace identity",
       criterion_run_structure},
      {5, "repair removes the leftmost pre-processor within k+1 probes",
       criterion_repair},
      {6, "validation splits partition, balance and replay per seed",
       criterion_validation_protocol},
      {7, "analysis fixtures reproduce hand-computed values",
       criterion_analysis_fixtures},
      {8, "end-to-end run on the bundled dataset beats the majority baseline",
       criterion_end_to_end},
      {9, "expired deadlines surface as timeouts and drain cleanly",
       criterion_deadline_contract},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool passed = false;
    try {
      detail = c.run();
      passed = true;
    } catch (const Failure& f) {
      detail = f.detail;
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    std::cout << (passed ? "[PASS] " : "[FAIL] ") << c.number << ". " << c.title;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
    std::cout.flush();
    if (!passed) ++failures;
  }
  std::cout << (9 - failures) << "/9 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
