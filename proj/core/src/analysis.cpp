#include "naiveml/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace naiveml {

AnytimeTrace to_trace(const std::vector<TraceEvent>& events) {
  AnytimeTrace out;
  out.reserve(events.size());
  for (const TraceEvent& ev : events) {
    out.push_back({ev.elapsed.count(), ev.oriented_score});
  }
  return out;
}

std::optional<double> best_so_far(const AnytimeTrace& trace, double t) {
  std::optional<double> best;
  for (const ScorePoint& p : trace) {
    if (p.elapsed > t) break;
    if (!best.has_value() || p.score > *best) best = p.score;
  }
  return best;
}

std::map<std::string, double> empirical_gap(const std::map<std::string, AnytimeTrace>& traces,
                                            double t) {
  std::map<std::string, double> bests;
  double reference = -std::numeric_limits<double>::infinity();
  for (const auto& [name, trace] : traces) {
    const auto b = best_so_far(trace, t);
    if (b.has_value()) {
      bests[name] = *b;
      reference = std::max(reference, *b);
    }
  }
  std::map<std::string, double> out;
  for (const auto& [name, b] : bests) out[name] = reference - b;
  return out;
}

std::vector<double> log_time_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("log_time_grid: needs 0 < lo <= hi");
  }
  if (points == 0) throw std::invalid_argument("log_time_grid: needs at least one point");
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < points; ++i) {
    out.push_back(lo * std::exp(ratio * static_cast<double>(i) /
                                static_cast<double>(points - 1)));
  }
  out.back() = hi;  // pin against rounding
  return out;
}

std::vector<double> average_ranks(const std::vector<std::optional<double>>& values) {
  const std::size_t n = values.size();
  auto key = [&values](std::size_t i) {
    return values[i].has_value() ? *values[i] : -std::numeric_limits<double>::infinity();
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&key](std::size_t a, std::size_t b) { return key(a) > key(b); });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && key(order[j]) == key(order[i])) ++j;
    const double shared = 0.5 * static_cast<double>(i + 1 + j);  // mean of positions i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

std::vector<RankPoint> rank_over_time(const TraceByDataset& traces,
                                      const std::vector<double>& grid) {
  // The optimizer set is the union over datasets; a missing run simply has
  // no score and ranks last.
  std::vector<std::string> optimizers;
  for (const auto& [dataset, by_opt] : traces) {
    for (const auto& [name, trace] : by_opt) {
      (void)trace;
      if (std::find(optimizers.begin(), optimizers.end(), name) == optimizers.end()) {
        optimizers.push_back(name);
      }
    }
  }
  std::sort(optimizers.begin(), optimizers.end());

  std::vector<RankPoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    RankPoint point;
    point.time = t;
    std::map<std::string, std::vector<double>> collected;
    for (const auto& [dataset, by_opt] : traces) {
      std::vector<std::optional<double>> values;
      values.reserve(optimizers.size());
      for (const std::string& name : optimizers) {
        auto it = by_opt.find(name);
        values.push_back(it == by_opt.end() ? std::nullopt : best_so_far(it->second, t));
      }
      const std::vector<double> ranks = average_ranks(values);
      for (std::size_t k = 0; k < optimizers.size(); ++k) {
        point.per_dataset[dataset][optimizers[k]] = ranks[k];
        collected[optimizers[k]].push_back(ranks[k]);
      }
    }
    for (const auto& [name, ranks] : collected) {
      point.median[name] = quantile(ranks, 0.5);
      point.q25[name] = quantile(ranks, 0.25);
      point.q75[name] = quantile(ranks, 0.75);
    }
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<WinCountPoint> win_counts(const TraceByDataset& traces, const std::string& a,
                                      const std::string& b, const std::vector<double>& grid) {
  std::vector<WinCountPoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    WinCountPoint point;
    point.time = t;
    for (const auto& [dataset, by_opt] : traces) {
      (void)dataset;
      auto ita = by_opt.find(a);
      auto itb = by_opt.find(b);
      const std::optional<double> va =
          ita == by_opt.end() ? std::nullopt : best_so_far(ita->second, t);
      const std::optional<double> vb =
          itb == by_opt.end() ? std::nullopt : best_so_far(itb->second, t);
      if (va.has_value() && (!vb.has_value() || *va > *vb)) ++point.wins_a;
      else if (vb.has_value() && (!va.has_value() || *vb > *va)) ++point.wins_b;
      else ++point.ties;
    }
    out.push_back(point);
  }
  return out;
}

FinalGapSummary final_gap_distribution(
    const std::map<std::string, std::map<std::string, std::vector<double>>>& final_scores) {
  FinalGapSummary out;
  for (const auto& [dataset, by_opt] : final_scores) {
    std::map<std::string, double> medians;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [name, seeds] : by_opt) {
      if (seeds.empty()) continue;
      const double m = quantile(seeds, 0.5);
      medians[name] = m;
      best = std::max(best, m);
    }
    for (const auto& [name, m] : medians) {
      out.per_dataset[name][dataset] = best - m;
    }
  }
  for (const auto& [name, gaps_by_dataset] : out.per_dataset) {
    std::vector<double> gaps;
    gaps.reserve(gaps_by_dataset.size());
    for (const auto& [dataset, gap] : gaps_by_dataset) {
      (void)dataset;
      gaps.push_back(gap);
    }
    GapQuantiles q;
    q.median = quantile(gaps, 0.5);
    q.q90 = quantile(gaps, 0.9);
    q.max = *std::max_element(gaps.begin(), gaps.end());
    out.whiskers[name] = q;
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: no values");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - std::floor(pos);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double trimmed_mean(std::vector<double> values, double trim) {
  if (values.empty()) throw std::invalid_argument("trimmed_mean: no values");
  std::sort(values.begin(), values.end());
  const auto drop = static_cast<std::size_t>(
      std::ceil(trim * static_cast<double>(values.size())));
  std::size_t lo = 0, hi = values.size();
  if (2 * drop < values.size()) {
    lo = drop;
    hi = values.size() - drop;
  }
  double sum = 0.0;
  for (std::size_t i = lo; i < hi; ++i) sum += values[i];
  return sum / static_cast<double>(hi - lo);
}

}  // namespace naiveml
