#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naiveml/optimizer.hpp"

namespace naiveml {

// Anytime view of a run: (elapsed seconds, oriented score) per improvement,
// elapsed non-decreasing.
struct ScorePoint {
  double elapsed = 0.0;
  double score = 0.0;
};

using AnytimeTrace = std::vector<ScorePoint>;

AnytimeTrace to_trace(const std::vector<TraceEvent>& events);

// Step function: best score at or before time t; nullopt before the first
// point.
std::optional<double> best_so_far(const AnytimeTrace& trace, double t);

// Per-optimizer distance to the best contender at time t. The reference is
// the maximum best-so-far over the group; optimizers with nothing yet are
// absent from the result.
std::map<std::string, double> empirical_gap(const std::map<std::string, AnytimeTrace>& traces,
                                            double t);

// Log-spaced grid from lo to hi inclusive; lo must be positive.
std::vector<double> log_time_grid(double lo, double hi, std::size_t points = 200);

// Average ranks of higher-is-better values: best gets rank 1, equal values
// share the mean of their positions, absent entries (nullopt) rank worst.
std::vector<double> average_ranks(const std::vector<std::optional<double>>& values);

using TraceByOptimizer = std::map<std::string, AnytimeTrace>;
using TraceByDataset = std::map<std::string, TraceByOptimizer>;

struct RankPoint {
  double time = 0.0;
  // dataset -> optimizer -> rank at this time
  std::map<std::string, std::map<std::string, double>> per_dataset;
  // Across datasets, per optimizer: median and quartiles of the ranks.
  std::map<std::string, double> median, q25, q75;
};

std::vector<RankPoint> rank_over_time(const TraceByDataset& traces,
                                      const std::vector<double>& grid);

// Head-to-head duels at each grid time: a win is a strictly better
// best-so-far on a dataset; both absent counts as a tie.
struct WinCountPoint {
  double time = 0.0;
  std::size_t wins_a = 0, wins_b = 0, ties = 0;
};

std::vector<WinCountPoint> win_counts(const TraceByDataset& traces, const std::string& a,
                                      const std::string& b, const std::vector<double>& grid);

// Final-score summary: per dataset each optimizer is collapsed to its
// median across seeds; the gap is the distance to the best such median on
// that dataset. Whiskers per optimizer are median, q90 and max of its gaps
// across datasets.
struct GapQuantiles {
  double median = 0.0, q90 = 0.0, max = 0.0;
};

struct FinalGapSummary {
  // optimizer -> dataset -> gap
  std::map<std::string, std::map<std::string, double>> per_dataset;
  std::map<std::string, GapQuantiles> whiskers;
};

// final_scores: dataset -> optimizer -> per-seed final oriented scores.
FinalGapSummary final_gap_distribution(
    const std::map<std::string, std::map<std::string, std::vector<double>>>& final_scores);

// Linear-interpolation quantile at q in [0, 1] (position q * (n - 1)).
double quantile(std::vector<double> values, double q);

// Drops ceil(trim * n) smallest and largest values before averaging; falls
// back to the plain mean when that would drop everything.
double trimmed_mean(std::vector<double> values, double trim = 0.1);

}  // namespace naiveml
