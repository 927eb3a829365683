#include "naiveml/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace naiveml {

namespace {

std::string unit_id(const RunRecord& r) {
  return r.dataset_id + "#s" + std::to_string(r.seed);
}

// dataset#seed -> optimizer -> anytime trace
TraceByDataset traces_by_unit(const std::vector<RunRecord>& records) {
  TraceByDataset out;
  for (const RunRecord& r : records) {
    out[unit_id(r)][r.optimizer] = to_trace(r.events);
  }
  return out;
}

void write_number(std::ostream& os, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  os << buf;
}

}  // namespace

std::vector<double> report_time_grid(const std::vector<RunRecord>& records, std::size_t points) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const RunRecord& r : records) {
    for (const TraceEvent& ev : r.events) {
      const double t = ev.elapsed.count();
      if (t > 0.0) lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    hi = std::max(hi, r.total_wall_seconds);
  }
  if (!std::isfinite(lo)) lo = 1e-3;
  if (hi < lo) hi = lo;
  return log_time_grid(lo, hi, points);
}

std::string report_gaps_csv(const std::vector<RunRecord>& records, std::size_t points) {
  const auto grid = report_time_grid(records, points);
  std::ostringstream os;
  os << "time,dataset,seed,optimizer,gap\n";
  // Group records by (dataset, seed); the gap is within that group.
  std::map<std::pair<std::string, std::uint64_t>, std::map<std::string, AnytimeTrace>> groups;
  for (const RunRecord& r : records) {
    groups[{r.dataset_id, r.seed}][r.optimizer] = to_trace(r.events);
  }
  for (double t : grid) {
    for (const auto& [key, traces] : groups) {
      const auto gaps = empirical_gap(traces, t);
      for (const auto& [optimizer, gap] : gaps) {
        write_number(os, t);
        os << ',' << key.first << ',' << key.second << ',' << optimizer << ',';
        write_number(os, gap);
        os << '\n';
      }
    }
  }
  return os.str();
}

std::string report_ranks_csv(const std::vector<RunRecord>& records, std::size_t points) {
  const auto grid = report_time_grid(records, points);
  const auto ranks = rank_over_time(traces_by_unit(records), grid);
  std::ostringstream os;
  os << "time,optimizer,median_rank,q25_rank,q75_rank\n";
  for (const RankPoint& point : ranks) {
    for (const auto& [optimizer, median] : point.median) {
      write_number(os, point.time);
      os << ',' << optimizer << ',';
      write_number(os, median);
      os << ',';
      write_number(os, point.q25.at(optimizer));
      os << ',';
      write_number(os, point.q75.at(optimizer));
      os << '\n';
    }
  }
  return os.str();
}

std::string report_wins_csv(const std::vector<RunRecord>& records, std::size_t points) {
  const auto grid = report_time_grid(records, points);
  const auto traces = traces_by_unit(records);
  std::set<std::string> optimizers;
  for (const RunRecord& r : records) optimizers.insert(r.optimizer);
  std::ostringstream os;
  os << "time,optimizer_a,optimizer_b,wins_a,wins_b,ties\n";
  for (auto a = optimizers.begin(); a != optimizers.end(); ++a) {
    for (auto b = std::next(a); b != optimizers.end(); ++b) {
      const auto duel = win_counts(traces, *a, *b, grid);
      for (const WinCountPoint& point : duel) {
        write_number(os, point.time);
        os << ',' << *a << ',' << *b << ',' << point.wins_a << ',' << point.wins_b << ','
           << point.ties << '\n';
      }
    }
  }
  return os.str();
}

std::string report_final_csv(const std::vector<RunRecord>& records) {
  std::map<std::string, std::map<std::string, std::vector<double>>> final_scores;
  for (const RunRecord& r : records) {
    if (r.final_test_oriented.has_value()) {
      final_scores[r.dataset_id][r.optimizer].push_back(*r.final_test_oriented);
    }
  }
  const FinalGapSummary summary = final_gap_distribution(final_scores);
  std::ostringstream os;
  os << "optimizer,median_gap,q90_gap,max_gap\n";
  for (const auto& [optimizer, q] : summary.whiskers) {
    os << optimizer << ',';
    write_number(os, q.median);
    os << ',';
    write_number(os, q.q90);
    os << ',';
    write_number(os, q.max);
    os << '\n';
  }
  return os.str();
}

}  // namespace naiveml
