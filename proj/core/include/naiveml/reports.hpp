#pragma once

#include <string>
#include <vector>

#include "naiveml/harness.hpp"

namespace naiveml {

// CSV emitters behind the `analyze` command. All operate on loaded run
// records; optimizers are compared within a (dataset, seed) unit, which is
// exactly the unit that shares outer and inner splits. Times come from a
// log-spaced grid spanning the recorded events.

// time,dataset,seed,optimizer,gap
std::string report_gaps_csv(const std::vector<RunRecord>& records, std::size_t points = 200);

// time,optimizer,median_rank,q25_rank,q75_rank
std::string report_ranks_csv(const std::vector<RunRecord>& records, std::size_t points = 200);

// time,optimizer_a,optimizer_b,wins_a,wins_b,ties  (all unordered pairs)
std::string report_wins_csv(const std::vector<RunRecord>& records, std::size_t points = 200);

// optimizer,median_gap,q90_gap,max_gap over datasets, seeds collapsed to the
// per-dataset median of final test scores.
std::string report_final_csv(const std::vector<RunRecord>& records);

// The grid the time-based reports use: log-spaced from the earliest positive
// event time to the latest recorded time.
std::vector<double> report_time_grid(const std::vector<RunRecord>& records, std::size_t points);

}  // namespace naiveml
