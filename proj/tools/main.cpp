// Command-line front end. Three subcommands:
//   run      search one or more CSV datasets with a catalog and write run
//            records plus anytime traces into an output directory,
//   analyze  turn a directory of run records into plot-ready CSV,
//   oracle   enumerate a catalog against a saved surrogate surface and
//            report the exhaustive optimum and per-slot separability.
// Exit codes: 0 success, 1 malformed configuration or arguments, 2 file
// trouble.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naiveml/catalog.hpp"
#include "naiveml/errors.hpp"
#include "naiveml/harness.hpp"
#include "naiveml/metrics.hpp"
#include "naiveml/optimizer.hpp"
#include "naiveml/pipeline.hpp"
#include "naiveml/reports.hpp"
#include "naiveml/surrogate.hpp"

namespace fs = std::filesystem;
using namespace naiveml;

namespace {

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Comma-separated seed entries; each entry is one seed or an inclusive
// "lo..hi" range: "0..9", "3", "0..3,7".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& entry : split_list(text, ',')) {
    const auto parse_one = [&](const std::string& s) {
      try {
        std::size_t consumed = 0;
        const std::uint64_t value = std::stoull(s, &consumed);
        if (consumed != s.size()) throw std::invalid_argument(s);
        return value;
      } catch (const std::exception&) {
        throw ConfigError("bad seed entry '" + entry + "' in '" + text + "'");
      }
    };
    const std::size_t dots = entry.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(parse_one(entry));
      continue;
    }
    const std::uint64_t lo = parse_one(entry.substr(0, dots));
    const std::uint64_t hi = parse_one(entry.substr(dots + 2));
    if (hi < lo) throw ConfigError("descending seed range '" + entry + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

Catalog load_valid_catalog(const std::string& path) {
  Catalog catalog = load_catalog(path);
  const std::vector<std::string> violations = validate_catalog(catalog);
  if (!violations.empty()) {
    throw ConfigError("catalog '" + path + "': " + join(violations, "; "));
  }
  return catalog;
}

struct RunArgs {
  std::string catalog_path;
  std::vector<std::string> data_paths;
  std::string label_column;
  std::string optimizers = "naive,quasi-naive,random";
  std::string seeds = "0";
  std::optional<double> budget_seconds;
  std::optional<std::uint64_t> budget_evals;
  double eval_deadline = 300.0;
  std::string metric = "error";
  int folds = 5;
  std::string out_dir;
};

int cmd_run(const RunArgs& args) {
  BenchmarkConfig config;
  config.catalog = load_valid_catalog(args.catalog_path);

  std::set<std::string> seen_ids;
  for (const std::string& path : args.data_paths) {
    const std::string id = fs::path(path).stem().string();
    if (!seen_ids.insert(id).second) {
      throw ConfigError("two --data files share the dataset id '" + id + "'");
    }
    config.datasets.push_back({id, load_csv(path, args.label_column)});
  }

  config.optimizers = split_list(args.optimizers, ',');
  config.seeds = parse_seeds(args.seeds);
  if (!args.budget_seconds.has_value() && !args.budget_evals.has_value()) {
    throw ConfigError("a budget is required: --budget-seconds and/or --budget-evals");
  }
  if (args.budget_seconds.has_value()) config.budget.wall_limit = Seconds{*args.budget_seconds};
  config.budget.eval_limit = args.budget_evals;
  config.validation.scheme = KFoldScheme{args.folds};
  config.validation.metric = metric_from_string(args.metric);
  config.validation.per_eval_deadline = Seconds{args.eval_deadline};
  config.output_dir = args.out_dir;

  const std::vector<RunRecord> records = run_benchmark(config);

  std::size_t errored = 0;
  std::cout << records.size() << " runs written under " << config.output_dir.string() << '\n';
  for (const RunRecord& r : records) {
    std::cout << "  " << r.run_id << ": ";
    if (r.error.has_value()) {
      ++errored;
      std::cout << "error: " << *r.error;
    } else if (r.final_test_raw.has_value()) {
      std::printf("final test %s %.10g (%zu improvements, %.1f s)",
                  to_string(config.validation.metric).c_str(), *r.final_test_raw,
                  r.events.size(), r.total_wall_seconds);
    } else {
      std::cout << "no final score";
    }
    std::cout << '\n';
  }
  if (errored > 0) {
    std::cout << errored << " of " << records.size() << " runs recorded an error\n";
  }
  return 0;
}

struct AnalyzeArgs {
  std::string in_dir;
  std::string report;
  std::string format = "csv";
  std::size_t points = 200;
};

int cmd_analyze(const AnalyzeArgs& args) {
  if (args.format != "csv") {
    throw ConfigError("unsupported --format '" + args.format + "'; only csv");
  }
  const std::vector<RunRecord> records = load_run_records(args.in_dir);
  if (records.empty()) {
    throw ConfigError("no run records (*.json) under '" + args.in_dir + "'");
  }
  if (args.report == "gaps") {
    std::cout << report_gaps_csv(records, args.points);
  } else if (args.report == "ranks") {
    std::cout << report_ranks_csv(records, args.points);
  } else if (args.report == "wins") {
    std::cout << report_wins_csv(records, args.points);
  } else if (args.report == "final") {
    std::cout << report_final_csv(records);
  } else {
    throw ConfigError("unknown --report '" + args.report + "'; gaps|ranks|wins|final");
  }
  return 0;
}

struct OracleArgs {
  std::string catalog_path;
  std::string surface_path;
};

int cmd_oracle(const OracleArgs& args) {
  const Catalog catalog = load_valid_catalog(args.catalog_path);
  const SurrogateSurface surface = load_surface(args.surface_path);
  const EvaluateFn evaluate_fn = make_surrogate_evaluator(surface);

  const BruteForceResult oracle = brute_force(catalog, evaluate_fn);
  std::cout << "best pipeline: " << describe(oracle.best) << '\n';
  std::printf("oriented score: %.10g\n", oracle.oriented_score);
  std::cout << "evaluations: " << oracle.evaluations << '\n';

  const auto slot_choice = [](const std::optional<std::string>& c) {
    return c.has_value() ? *c : std::string("blank");
  };
  for (const SlotNaivetyReport& report : naivety_violation(catalog, evaluate_fn)) {
    std::cout << "slot " << report.slot << " (" << to_string(catalog.slots[report.slot].role)
              << "): " << (report.violated ? "argmax depends on the other slots" : "separable")
              << '\n';
    for (const NaivetyContext& context : report.witnesses) {
      std::cout << "  context [";
      for (std::size_t s = 0; s < context.others.size(); ++s) {
        if (s > 0) std::cout << ", ";
        std::cout << (s == report.slot ? std::string("*") : slot_choice(context.others[s]));
      }
      std::cout << "] -> " << slot_choice(context.best_candidate) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slot-local pipeline search over component catalogs"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Search CSV datasets and write run records");
  run->add_option("--catalog", run_args.catalog_path, "Catalog JSON file")->required();
  run->add_option("--data", run_args.data_paths, "CSV dataset (repeatable)")->required();
  run->add_option("--label", run_args.label_column, "Label column name")->required();
  run->add_option("--optimizers", run_args.optimizers,
                  "Comma list of naive,quasi-naive,random,brute-force");
  run->add_option("--seeds", run_args.seeds, "Seeds: '0..9' or '0,2,5'");
  run->add_option("--budget-seconds", run_args.budget_seconds, "Wall budget per run");
  run->add_option("--budget-evals", run_args.budget_evals, "Evaluation budget per run");
  run->add_option("--eval-deadline-seconds", run_args.eval_deadline,
                  "Per-evaluation deadline (default 300)");
  run->add_option("--metric", run_args.metric, "auroc|logloss|error (default error)");
  run->add_option("--folds", run_args.folds, "Inner cross-validation folds (default 5)");
  run->add_option("--out", run_args.out_dir, "Output directory")->required();

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Emit plot-ready CSV from run records");
  analyze->add_option("--in", analyze_args.in_dir, "Directory of run records")->required();
  analyze->add_option("--report", analyze_args.report, "gaps|ranks|wins|final")->required();
  analyze->add_option("--format", analyze_args.format, "Output format (csv)");
  analyze->add_option("--points", analyze_args.points, "Time-grid points (default 200)");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum and separability report");
  oracle->add_option("--catalog", oracle_args.catalog_path, "Catalog JSON file")->required();
  oracle->add_option("--surface", oracle_args.surface_path, "Surrogate surface JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    return cmd_oracle(oracle_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }
}
