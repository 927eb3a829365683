#include "naiveml/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "naiveml/components.hpp"
#include "naiveml/errors.hpp"
#include "naiveml/splits.hpp"

namespace naiveml {

using nlohmann::json;

OuterSplit outer_split(const Dataset& data, double train_fraction, std::uint64_t seed) {
  Rng rng(seed);
  const SplitPair pair = stratified_split(data.rows(), train_fraction, data.labels, rng);
  OuterSplit out;
  out.train_indices = pair.train;
  out.test_indices = pair.test;
  out.train = take_rows(data, pair.train);
  out.test = take_rows(data, pair.test);
  return out;
}

namespace {

json param_value_to_json(const ParamValue& v) {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  return std::get<std::string>(v);
}

ParamValue param_value_from_json(const json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ConfigError("record: parameter value has an unexpected type");
}

json params_to_json(const ParamAssignment& a) {
  json j;
  j["use_defaults"] = a.use_defaults;
  j["values"] = json::object();
  for (const auto& [name, value] : a.values) j["values"][name] = param_value_to_json(value);
  return j;
}

ParamAssignment params_from_json(const json& j) {
  ParamAssignment a;
  a.use_defaults = j.at("use_defaults").get<bool>();
  for (const auto& [name, value] : j.at("values").items()) {
    a.values[name] = param_value_from_json(value);
  }
  return a;
}

json pipeline_to_json(const Pipeline& p) {
  json j = json::array();
  for (const auto& slot : p.slots) {
    if (!slot.has_value()) {
      j.push_back(nullptr);
    } else {
      j.push_back({{"component_id", slot->component_id}, {"params", params_to_json(slot->params)}});
    }
  }
  return j;
}

Pipeline pipeline_from_json(const json& j) {
  Pipeline p;
  for (const json& slot : j) {
    if (slot.is_null()) {
      p.slots.push_back(std::nullopt);
    } else {
      p.slots.push_back(SlotChoice{slot.at("component_id").get<std::string>(),
                                   params_from_json(slot.at("params"))});
    }
  }
  return p;
}

EvalStatus status_from_string(const std::string& s) {
  if (s == "ok") return EvalStatus::ok;
  if (s == "timeout") return EvalStatus::timeout;
  if (s == "failed") return EvalStatus::failed;
  throw ConfigError("record: unknown eval status '" + s + "'");
}

json event_to_json(const TraceEvent& ev) {
  return {{"elapsed_seconds", ev.elapsed.count()},
          {"pipeline", pipeline_to_json(ev.pipeline)},
          {"trigger_slot", ev.trigger_slot},
          {"local_score", ev.local_score},
          {"oriented_score", ev.oriented_score},
          {"eval_status", to_string(ev.eval_status)}};
}

TraceEvent event_from_json(const json& j) {
  TraceEvent ev;
  ev.elapsed = Seconds{j.at("elapsed_seconds").get<double>()};
  ev.pipeline = pipeline_from_json(j.at("pipeline"));
  ev.trigger_slot = j.at("trigger_slot").get<std::size_t>();
  ev.local_score = j.at("local_score").get<double>();
  ev.oriented_score = j.at("oriented_score").get<double>();
  ev.eval_status = status_from_string(j.at("eval_status").get<std::string>());
  return ev;
}

json budget_to_json(const Budget& b) {
  json j;
  j["wall_seconds"] = b.wall_limit.has_value() ? json(b.wall_limit->count()) : json(nullptr);
  j["eval_limit"] = b.eval_limit.has_value() ? json(*b.eval_limit) : json(nullptr);
  return j;
}

Budget budget_from_json(const json& j) {
  Budget b;
  if (!j.at("wall_seconds").is_null()) b.wall_limit = Seconds{j.at("wall_seconds").get<double>()};
  if (!j.at("eval_limit").is_null()) b.eval_limit = j.at("eval_limit").get<std::uint64_t>();
  return b;
}

json validation_to_json(const ValidationSpec& v) {
  json scheme;
  if (std::holds_alternative<KFoldScheme>(v.scheme)) {
    scheme = {{"kind", "kfold"}, {"k", std::get<KFoldScheme>(v.scheme).k}};
  } else {
    const MccvScheme& m = std::get<MccvScheme>(v.scheme);
    scheme = {{"kind", "mccv"}, {"train_fraction", m.train_fraction},
              {"repetitions", m.repetitions}};
  }
  return {{"scheme", scheme},
          {"seed", v.seed},
          {"deadline_seconds", v.per_eval_deadline.count()},
          {"metric", to_string(v.metric)}};
}

ValidationSpec validation_from_json(const json& j) {
  ValidationSpec v;
  const json& scheme = j.at("scheme");
  const std::string kind = scheme.at("kind").get<std::string>();
  if (kind == "kfold") {
    v.scheme = KFoldScheme{scheme.at("k").get<int>()};
  } else if (kind == "mccv") {
    v.scheme = MccvScheme{scheme.at("train_fraction").get<double>(),
                          scheme.at("repetitions").get<int>()};
  } else {
    throw ConfigError("record: unknown validation scheme '" + kind + "'");
  }
  v.seed = j.at("seed").get<std::uint64_t>();
  v.per_eval_deadline = Seconds{j.at("deadline_seconds").get<double>()};
  v.metric = metric_from_string(j.at("metric").get<std::string>());
  return v;
}

}  // namespace

std::string run_record_to_json(const RunRecord& r) {
  json j;
  j["run_id"] = r.run_id;
  j["optimizer"] = r.optimizer;
  j["dataset_id"] = r.dataset_id;
  j["seed"] = r.seed;
  j["budget"] = budget_to_json(r.budget);
  j["validation"] = validation_to_json(r.validation);
  j["events"] = json::array();
  for (const TraceEvent& ev : r.events) j["events"].push_back(event_to_json(ev));
  j["final_pipeline"] = pipeline_to_json(r.final_pipeline);
  j["final_test_oriented"] =
      r.final_test_oriented.has_value() ? json(*r.final_test_oriented) : json(nullptr);
  j["final_test_raw"] = r.final_test_raw.has_value() ? json(*r.final_test_raw) : json(nullptr);
  j["total_wall_seconds"] = r.total_wall_seconds;
  j["train_indices"] = r.train_indices;
  j["test_indices"] = r.test_indices;
  j["error"] = r.error.has_value() ? json(*r.error) : json(nullptr);
  j["notes"] = r.notes;
  return j.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("record: not a JSON object");
  RunRecord r;
  try {
    r.run_id = j.at("run_id").get<std::string>();
    r.optimizer = j.at("optimizer").get<std::string>();
    r.dataset_id = j.at("dataset_id").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.budget = budget_from_json(j.at("budget"));
    r.validation = validation_from_json(j.at("validation"));
    for (const json& ev : j.at("events")) r.events.push_back(event_from_json(ev));
    r.final_pipeline = pipeline_from_json(j.at("final_pipeline"));
    if (!j.at("final_test_oriented").is_null()) {
      r.final_test_oriented = j.at("final_test_oriented").get<double>();
    }
    if (!j.at("final_test_raw").is_null()) {
      r.final_test_raw = j.at("final_test_raw").get<double>();
    }
    r.total_wall_seconds = j.at("total_wall_seconds").get<double>();
    r.train_indices = j.at("train_indices").get<std::vector<std::size_t>>();
    r.test_indices = j.at("test_indices").get<std::vector<std::size_t>>();
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("record: ") + e.what());
  }
  return r;
}

void save_run_record(const RunRecord& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write run record '" + path.string() + "'");
  out << run_record_to_json(r) << '\n';
}

RunRecord load_run_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run record '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_record_from_json(buf.str());
}

TraceWriter::TraceWriter(const std::filesystem::path& path, std::string run_id)
    : path_(path), run_id_(std::move(run_id)), out_(path, std::ios::app) {
  if (!out_) throw IoError("cannot open trace file '" + path.string() + "'");
}

void TraceWriter::write(const TraceEvent& event) {
  json line;
  line["run_id"] = run_id_;
  line["elapsed_ms"] = static_cast<std::int64_t>(std::llround(event.elapsed.count() * 1000.0));
  line["slot"] = event.trigger_slot;
  const auto& slot = event.trigger_slot < event.pipeline.slots.size()
                         ? event.pipeline.slots[event.trigger_slot]
                         : std::optional<SlotChoice>{};
  if (slot.has_value()) {
    line["component_id"] = slot->component_id;
    line["params"] = json::object();
    if (!slot->params.use_defaults) {
      for (const auto& [name, value] : slot->params.values) {
        line["params"][name] = param_value_to_json(value);
      }
    }
  } else {
    line["component_id"] = nullptr;
    line["params"] = json::object();
  }
  line["local_score"] = event.local_score;
  line["global_score"] = event.oriented_score;
  line["status"] = to_string(event.eval_status);
  out_ << line.dump() << '\n';
  out_.flush();
}

int resolve_workers(const BenchmarkConfig& config) {
  if (config.workers > 0) return config.workers;
  if (const char* env = std::getenv("NAIVEML_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

namespace {

struct RunTask {
  std::size_t dataset_index = 0;
  std::string optimizer;
  std::uint64_t seed = 0;
};

OptimizerRun dispatch_optimizer(const std::string& name, const Catalog& catalog,
                                const EvaluateFn& evaluate_fn, const Budget& budget,
                                std::uint64_t seed, const EventSink& sink, const Clock& clock) {
  if (name == "naive") return naive_automl(catalog, evaluate_fn, budget, seed, sink, clock);
  if (name == "quasi-naive") {
    return quasi_naive_automl(catalog, default_permutation(catalog), evaluate_fn, budget, seed,
                              sink, clock);
  }
  if (name == "random") return random_search(catalog, evaluate_fn, budget, seed, sink, clock);
  if (name == "brute-force") {
    OptimizerRun run;
    EventSink collect = [&run, &sink](const TraceEvent& ev) {
      run.events.push_back(ev);
      if (sink) sink(ev);
    };
    const BruteForceResult result = brute_force(catalog, evaluate_fn, 10000, collect, clock);
    run.final_pipeline = result.best;
    run.evaluations = result.evaluations;
    return run;
  }
  throw ConfigError("unknown optimizer '" + name + "'");
}

RunRecord execute_run(const BenchmarkConfig& config, const RunTask& task,
                      const OuterSplit& split, const Clock& clock) {
  const NamedDataset& dataset = config.datasets[task.dataset_index];
  RunRecord record;
  record.run_id =
      dataset.id + "__" + task.optimizer + "__s" + std::to_string(task.seed);
  record.optimizer = task.optimizer;
  record.dataset_id = dataset.id;
  record.seed = task.seed;
  record.budget = config.budget;
  record.validation = config.validation;
  record.validation.seed = task.seed;  // inner folds shared per (dataset, seed)
  record.train_indices = split.train_indices;
  record.test_indices = split.test_indices;

  const auto started = clock();
  try {
    {
      const auto problems = validate_spec(record.validation, split.train.task_kind);
      if (!problems.empty()) throw ConfigError("validation: " + problems.front());
    }
    TraceWriter tracer(config.output_dir / (record.run_id + ".trace.jsonl"), record.run_id);
    const EventSink sink = [&tracer](const TraceEvent& ev) { tracer.write(ev); };
    const EvaluateFn evaluate_fn =
        make_dataset_evaluator(config.catalog, split.train, record.validation, clock);
    OptimizerRun run = dispatch_optimizer(task.optimizer, config.catalog, evaluate_fn,
                                          config.budget, task.seed, sink, clock);
    record.events = std::move(run.events);
    record.notes = std::move(run.notes);

    // Final pipeline: repair if needed, refit on the whole train side, score
    // once on the held-out test side.
    const FitProbe probe = [&](const Pipeline& p) {
      try {
        fit_pipeline(config.catalog, p, split.train);
        return true;
      } catch (const std::exception&) {
        return false;
      }
    };
    Pipeline final_pipeline = repair(config.catalog, run.final_pipeline, probe);
    if (!(final_pipeline == run.final_pipeline)) {
      record.notes.push_back("final pipeline needed repair");
    }
    record.final_pipeline = final_pipeline;
    const FittedPipeline fitted = fit_pipeline(config.catalog, final_pipeline, split.train);
    const Matrix probs = predict_proba(fitted, split.test.features);
    const double raw = raw_metric(record.validation.metric, split.test.labels, probs);
    record.final_test_raw = raw;
    record.final_test_oriented = orient(record.validation.metric, raw);
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  record.total_wall_seconds = std::chrono::duration_cast<Seconds>(clock() - started).count();
  return record;
}

}  // namespace

std::vector<RunRecord> run_benchmark(const BenchmarkConfig& config, const Clock& clock) {
  {
    const auto catalog_problems = validate_catalog(config.catalog);
    if (!catalog_problems.empty()) {
      throw ConfigError("catalog: " + catalog_problems.front());
    }
    const auto budget_problems = validate_budget(config.budget);
    if (!budget_problems.empty()) {
      throw ConfigError("budget: " + budget_problems.front());
    }
    for (const std::string& name : config.optimizers) {
      if (name != "naive" && name != "quasi-naive" && name != "random" &&
          name != "brute-force") {
        throw ConfigError("unknown optimizer '" + name + "'");
      }
    }
    if (config.datasets.empty()) throw ConfigError("no datasets configured");
    if (config.optimizers.empty()) throw ConfigError("no optimizers configured");
    if (config.seeds.empty()) throw ConfigError("no seeds configured");
  }
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.output_dir.string() + "'");

  // One outer split per (dataset, seed), shared by every optimizer.
  std::map<std::pair<std::size_t, std::uint64_t>, OuterSplit> splits;
  for (std::size_t d = 0; d < config.datasets.size(); ++d) {
    for (std::uint64_t seed : config.seeds) {
      splits.emplace(std::make_pair(d, seed),
                     outer_split(config.datasets[d].data, config.outer_train_fraction, seed));
    }
  }

  std::vector<RunTask> tasks;
  for (std::size_t d = 0; d < config.datasets.size(); ++d) {
    for (const std::string& optimizer : config.optimizers) {
      for (std::uint64_t seed : config.seeds) {
        tasks.push_back({d, optimizer, seed});
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const RunTask& task = tasks[i];
      records[i] = execute_run(config, task, splits.at({task.dataset_index, task.seed}), clock);
      save_run_record(records[i], config.output_dir / (records[i].run_id + ".json"));
    }
  };

  const int workers = std::min<int>(resolve_workers(config), static_cast<int>(tasks.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

std::vector<RunRecord> load_run_records(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("'" + dir.string() + "' is not a directory");
  }
  std::vector<RunRecord> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto& path = entry.path();
    if (path.extension() != ".json") continue;
    out.push_back(load_run_record(path));
  }
  std::sort(out.begin(), out.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.run_id < b.run_id; });
  return out;
}

}  // namespace naiveml
