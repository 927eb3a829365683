#pragma once

// Shared fixtures for the test suites: tiny catalogs, hand-built surrogate
// surfaces, synthetic datasets and injectable clocks.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "naiveml/catalog.hpp"
#include "naiveml/dataset.hpp"
#include "naiveml/evaluate.hpp"
#include "naiveml/rng.hpp"
#include "naiveml/surrogate.hpp"

namespace testsupport {

// Catalog with one pre-processor slot {t1} and predictors {p1, p2}, p1
// standard. Components carry no params.
inline naiveml::Catalog two_slot_catalog() {
  naiveml::Catalog c;
  naiveml::CatalogSlot pre;
  pre.role = naiveml::SlotRole::feature_preprocessor;
  pre.candidates.push_back({"t1", naiveml::SlotRole::feature_preprocessor, {}, "surrogate"});
  naiveml::CatalogSlot pred;
  pred.role = naiveml::SlotRole::predictor;
  pred.candidates.push_back({"p1", naiveml::SlotRole::predictor, {}, "surrogate"});
  pred.candidates.push_back({"p2", naiveml::SlotRole::predictor, {}, "surrogate"});
  c.slots = {pre, pred};
  c.standard_predictor = "p1";
  return c;
}

// The four-pipeline surface over two_slot_catalog():
//   (Blank, p1) = 0.6   (Blank, p2) = 0.7
//   (t1,    p1) = 0.9   (t1,    p2) = 0.65
// Expressed as bases on the predictor slot plus interactions with t1.
inline naiveml::SurrogateSurface worked_surface() {
  naiveml::SurrogateSurface s;
  s.base[{0, std::nullopt}] = 0.0;
  s.base[{0, std::optional<std::string>("t1")}] = 0.0;
  s.base[{1, std::optional<std::string>("p1")}] = 0.6;
  s.base[{1, std::optional<std::string>("p2")}] = 0.7;
  s.interactions[{0, std::optional<std::string>("t1"), 1, std::optional<std::string>("p1")}] = 0.3;
  s.interactions[{0, std::optional<std::string>("t1"), 1, std::optional<std::string>("p2")}] =
      -0.05;
  s.interaction_scale = 1.0;
  return s;
}

// Frozen clock: every reading is the epoch. Makes wall budgets inert.
inline naiveml::Clock frozen_clock() {
  return [] { return std::chrono::steady_clock::time_point{}; };
}

// Clock that leaps one hour per reading; any positive deadline or wall
// budget expires between two consecutive reads.
inline naiveml::Clock leaping_clock() {
  auto counter = std::make_shared<std::atomic<std::int64_t>>(0);
  return [counter] {
    const auto ticks = counter->fetch_add(1) + 1;
    return std::chrono::steady_clock::time_point{std::chrono::hours(ticks)};
  };
}

// Clock advancing one millisecond per reading: cheap monotone timestamps for
// determinism tests that still want distinct elapsed values.
inline naiveml::Clock ticking_clock() {
  auto counter = std::make_shared<std::atomic<std::int64_t>>(0);
  return [counter] {
    const auto ticks = counter->fetch_add(1) + 1;
    return std::chrono::steady_clock::time_point{std::chrono::milliseconds(ticks)};
  };
}

// XOR truth table: no single split separates it, a depth-2 tree does.
inline naiveml::Dataset xor_dataset() {
  naiveml::Dataset d;
  d.features = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
  d.labels = {0, 1, 1, 0};
  d.class_count = 2;
  d.task_kind = naiveml::TaskKind::binary;
  return d;
}

// Two Gaussian blobs, interleaved labels, n rows. Separation ~4 sigma.
inline naiveml::Dataset blob_dataset(std::size_t n, std::uint64_t seed) {
  naiveml::Rng rng(seed);
  auto normal = [&rng](double mean, double sd) {
    const double u1 =
        (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1], log stays finite
    const double u2 = naiveml::uniform_unit(rng);
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  naiveml::Dataset d;
  d.class_count = 2;
  d.task_kind = naiveml::TaskKind::binary;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double center = label == 0 ? -2.0 : 2.0;
    d.features.push_back({normal(center, 1.0), normal(center, 1.0)});
    d.labels.push_back(label);
  }
  return d;
}

// The bundled smoke dataset, as CSV text: 200 rows, two blob features, one
// three-way categorical noise column, exactly 30 of the 600 feature cells
// missing. data/smoke_blobs.csv is this string verbatim.
inline std::string smoke_blobs_csv() {
  naiveml::Rng rng(20260823u);
  auto normal = [&rng](double mean, double sd) {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = naiveml::uniform_unit(rng);
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  const std::size_t rows = 200;
  std::vector<std::string> x1(rows), x2(rows), color(rows), label(rows);
  const char* colors[] = {"red", "green", "blue"};
  char buf[48];
  for (std::size_t i = 0; i < rows; ++i) {
    const int y = static_cast<int>(i % 2);
    const double center = y == 0 ? -2.0 : 2.0;
    std::snprintf(buf, sizeof(buf), "%.6f", normal(center, 1.0));
    x1[i] = buf;
    std::snprintf(buf, sizeof(buf), "%.6f", normal(center, 1.0));
    x2[i] = buf;
    color[i] = colors[naiveml::uniform_index(rng, 3)];
    label[i] = y == 0 ? "a" : "b";
  }
  // 5% of the 600 feature cells go missing: numeric cells as "?", the
  // categorical ones as empty fields.
  std::vector<std::size_t> cells(rows * 3);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  naiveml::shuffle_in_place(cells, rng);
  for (std::size_t k = 0; k < 30; ++k) {
    const std::size_t row = cells[k] / 3;
    switch (cells[k] % 3) {
      case 0: x1[row] = "?"; break;
      case 1: x2[row] = "?"; break;
      default: color[row] = ""; break;
    }
  }
  std::string out = "x1,x2,color,label\n";
  for (std::size_t i = 0; i < rows; ++i) {
    out += x1[i] + "," + x2[i] + "," + color[i] + "," + label[i] + "\n";
  }
  return out;
}

}  // namespace testsupport
