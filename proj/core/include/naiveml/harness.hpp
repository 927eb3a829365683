#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naiveml/analysis.hpp"
#include "naiveml/catalog.hpp"
#include "naiveml/dataset.hpp"
#include "naiveml/evaluate.hpp"
#include "naiveml/optimizer.hpp"

namespace naiveml {

// Header-first comma-separated file. Empty cells and `?` are missing; a
// column where every non-missing cell parses as a finite number is numeric,
// anything else categorical. Encoding follows encode_and_impute.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column);

// Raw parse without encoding, for callers that need the table itself.
RawTable load_csv_table(const std::filesystem::path& path);

struct OuterSplit {
  Dataset train, test;
  std::vector<std::size_t> train_indices, test_indices;
};

// Stratified train/test split of a dataset, deterministic in the seed.
OuterSplit outer_split(const Dataset& data, double train_fraction, std::uint64_t seed);

struct NamedDataset {
  std::string id;
  Dataset data;
};

struct BenchmarkConfig {
  Catalog catalog;
  std::vector<NamedDataset> datasets;
  // Optimizer names: naive, quasi-naive, random, brute-force.
  std::vector<std::string> optimizers;
  std::vector<std::uint64_t> seeds;
  Budget budget;
  ValidationSpec validation;  // its seed field is replaced by each run's seed
  double outer_train_fraction = 0.9;
  std::filesystem::path output_dir;
  // 0 reads NAIVEML_WORKERS, defaulting to 1.
  int workers = 0;
};

struct RunRecord {
  std::string run_id;
  std::string optimizer;
  std::string dataset_id;
  std::uint64_t seed = 0;
  Budget budget;
  ValidationSpec validation;
  std::vector<TraceEvent> events;
  Pipeline final_pipeline;
  // Present when the final pipeline fit and scored on the test side.
  std::optional<double> final_test_oriented;
  std::optional<double> final_test_raw;
  double total_wall_seconds = 0.0;
  std::vector<std::size_t> train_indices, test_indices;
  std::optional<std::string> error;
  std::vector<std::string> notes;
};

std::string run_record_to_json(const RunRecord& r);
RunRecord run_record_from_json(const std::string& text);
void save_run_record(const RunRecord& r, const std::filesystem::path& path);
RunRecord load_run_record(const std::filesystem::path& path);

// Appends one JSON line per event and flushes after each, so a live run
// leaves a usable trace behind even when killed. Line shape:
//   {"run_id", "elapsed_ms", "slot", "component_id", "params",
//    "local_score", "global_score", "status"}
class TraceWriter {
 public:
  TraceWriter(const std::filesystem::path& path, std::string run_id);
  void write(const TraceEvent& event);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string run_id_;
  std::ofstream out_;
};

// One run per (dataset, optimizer, seed). Runs for the same (dataset, seed)
// share one outer split and one inner-validation seed, so optimizers face
// identical data. Each run writes <run_id>.trace.jsonl while running and
// <run_id>.json at the end; a failing run records its error and never takes
// sibling runs down. Returns the records in config order.
std::vector<RunRecord> run_benchmark(const BenchmarkConfig& config,
                                     const Clock& clock = default_clock());

// How many worker threads a config asks for, NAIVEML_WORKERS included.
int resolve_workers(const BenchmarkConfig& config);

// Loads every *.json run record under a directory, sorted by run_id.
std::vector<RunRecord> load_run_records(const std::filesystem::path& dir);

}  // namespace naiveml
