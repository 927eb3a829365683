#include <doctest.h>

#include <sstream>

#include "naiveml/reports.hpp"

using namespace naiveml;

namespace {

RunRecord make_record(const std::string& dataset, const std::string& optimizer,
                      std::uint64_t seed, std::initializer_list<std::pair<double, double>> events,
                      std::optional<double> final_score) {
  RunRecord r;
  r.dataset_id = dataset;
  r.optimizer = optimizer;
  r.seed = seed;
  r.run_id = dataset + "__" + optimizer + "__s" + std::to_string(seed);
  for (const auto& [elapsed, score] : events) {
    TraceEvent ev;
    ev.elapsed = Seconds{elapsed};
    ev.oriented_score = score;
    r.events.push_back(ev);
  }
  r.final_test_oriented = final_score;
  r.total_wall_seconds = 4.0;
  return r;
}

std::vector<std::vector<std::string>> parse_csv_body(const std::string& text,
                                                     const std::string& expected_header) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == expected_header);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream fields_in(line);
    std::string field;
    while (std::getline(fields_in, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<RunRecord> fixture_records() {
  return {
      make_record("d1", "naive", 0, {{1.0, 0.5}, {2.0, 0.9}}, 0.9),
      make_record("d1", "random", 0, {{1.0, 0.84}}, 0.84),
      make_record("d2", "naive", 0, {{1.0, 0.3}}, 0.3),
      make_record("d2", "random", 0, {{2.0, 0.6}}, 0.6),
  };
}

}  // namespace

TEST_CASE("the report grid spans first positive event to the longest wall time") {
  const auto records = fixture_records();
  const auto grid = report_time_grid(records, 3);
  REQUIRE(grid.size() == 3);
  CHECK(grid.front() == 1.0);
  CHECK(grid[1] == doctest::Approx(2.0));
  CHECK(grid.back() == 4.0);

  // No events at all: the grid still exists, anchored at a millisecond.
  std::vector<RunRecord> empty_records = {make_record("d", "naive", 0, {}, std::nullopt)};
  empty_records[0].total_wall_seconds = 0.0;
  const auto fallback = report_time_grid(empty_records, 5);
  CHECK(fallback.front() == 1e-3);
  CHECK(fallback.back() == 1e-3);
}

TEST_CASE("gap report emits one row per grid time, unit and scored optimizer") {
  const auto rows = parse_csv_body(report_gaps_csv(fixture_records(), 3),
                                   "time,dataset,seed,optimizer,gap");
  // t=1: d1 both scored, d2 only naive; t=2 and t=4: both units complete.
  REQUIRE(rows.size() == 3 + 4 + 4);
  // First block, unit (d1, 0): naive at 0.5 trails random at 0.84.
  CHECK(rows[0] == std::vector<std::string>{"1", "d1", "0", "naive", "0.34"});
  CHECK(rows[1] == std::vector<std::string>{"1", "d1", "0", "random", "0"});
  CHECK(rows[2] == std::vector<std::string>{"1", "d2", "0", "naive", "0"});
  // After naive's improvement on d1 the roles flip.
  CHECK(rows[3] == std::vector<std::string>{"2", "d1", "0", "naive", "0"});
  CHECK(rows[4] == std::vector<std::string>{"2", "d1", "0", "random", "0.06"});
}

TEST_CASE("rank report medians across dataset-seed units") {
  const auto rows = parse_csv_body(report_ranks_csv(fixture_records(), 3),
                                   "time,optimizer,median_rank,q25_rank,q75_rank");
  // Two optimizers per grid time.
  REQUIRE(rows.size() == 6);
  // At t=4: d1 naive leads (0.9 beats 0.84), d2 random leads; both end
  // with ranks {1, 2} and a median of 1.5.
  CHECK(rows[4] == std::vector<std::string>{"4", "naive", "1.5", "1.25", "1.75"});
  CHECK(rows[5] == std::vector<std::string>{"4", "random", "1.5", "1.25", "1.75"});
}

TEST_CASE("win report covers every optimizer pair") {
  const auto records = fixture_records();
  const auto rows = parse_csv_body(report_wins_csv(records, 3),
                                   "time,optimizer_a,optimizer_b,wins_a,wins_b,ties");
  REQUIRE(rows.size() == 3);  // one pair, three grid times
  // t=1: naive 0.5 vs random 0.84 on d1, naive 0.3 vs nothing on d2.
  CHECK(rows[0] == std::vector<std::string>{"1", "naive", "random", "1", "1", "0"});
  // t=4: one win each.
  CHECK(rows[2] == std::vector<std::string>{"4", "naive", "random", "1", "1", "0"});
}

TEST_CASE("final report collapses seeds and summarizes gaps per optimizer") {
  std::vector<RunRecord> records = {
      make_record("d1", "naive", 0, {}, 0.90),
      make_record("d1", "naive", 1, {}, 0.90),
      make_record("d1", "random", 0, {}, 0.88),
      make_record("d1", "random", 1, {}, 0.88),
      make_record("d2", "naive", 0, {}, 0.70),
      make_record("d2", "random", 0, {}, 0.80),
      // An errored run without a final score stays out of the summary.
      make_record("d2", "random", 1, {}, std::nullopt),
  };
  const auto rows = parse_csv_body(report_final_csv(records),
                                   "optimizer,median_gap,q90_gap,max_gap");
  REQUIRE(rows.size() == 2);
  // naive gaps: d1 0, d2 0.1; random gaps: d1 0.02, d2 0.
  CHECK(rows[0][0] == "naive");
  CHECK(rows[0][1] == "0.05");
  CHECK(rows[0][3] == "0.1");
  CHECK(rows[1][0] == "random");
  CHECK(rows[1][3] == "0.02");
}
