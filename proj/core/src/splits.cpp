#include "naiveml/splits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace naiveml {

namespace {

// Row indices shuffled once, then grouped by class; order inside each group
// is the shuffled order, which is what makes the dealing random.
std::vector<std::vector<std::size_t>> shuffled_class_groups(std::size_t n,
                                                            const std::vector<int>& labels,
                                                            Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle_in_place(order, rng);
  int max_label = 0;
  for (int y : labels) max_label = std::max(max_label, y);
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(max_label) + 1);
  for (std::size_t i : order) groups[static_cast<std::size_t>(labels[i])].push_back(i);
  return groups;
}

}  // namespace

std::vector<SplitPair> kfold_splits(std::size_t n, int k, const std::vector<int>& labels,
                                    std::uint64_t seed) {
  if (labels.size() != n) throw std::invalid_argument("kfold: label count mismatch");
  if (k < 2 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("kfold: k must be in [2, n]");
  }
  Rng rng(seed);
  const auto groups = shuffled_class_groups(n, labels, rng);

  // One fold cursor shared across classes: per-class counts stay within one
  // of each other, and so do total fold sizes.
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::size_t cursor = 0;
  for (const auto& group : groups) {
    for (std::size_t i : group) {
      folds[cursor % static_cast<std::size_t>(k)].push_back(i);
      ++cursor;
    }
  }

  std::vector<SplitPair> out(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < folds.size(); ++f) {
    out[f].test = folds[f];
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g == f) continue;
      out[f].train.insert(out[f].train.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(out[f].train.begin(), out[f].train.end());
    std::sort(out[f].test.begin(), out[f].test.end());
  }
  return out;
}

SplitPair stratified_split(std::size_t n, double train_fraction, const std::vector<int>& labels,
                           Rng& rng) {
  if (labels.size() != n || n == 0) throw std::invalid_argument("split: label count mismatch");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split: train_fraction must be inside (0, 1)");
  }
  const auto groups = shuffled_class_groups(n, labels, rng);
  const std::size_t train_count =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));

  // Largest-remainder allocation of the train quota across classes.
  std::vector<std::size_t> alloc(groups.size(), 0);
  std::vector<std::pair<double, std::size_t>> leftovers;  // (-fraction, class): sorts ties by class
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    const double quota = static_cast<double>(train_count) * static_cast<double>(groups[c].size()) /
                         static_cast<double>(n);
    alloc[c] = static_cast<std::size_t>(std::floor(quota));
    assigned += alloc[c];
    leftovers.emplace_back(-(quota - std::floor(quota)), c);
  }
  std::sort(leftovers.begin(), leftovers.end());
  for (const auto& [neg_frac, c] : leftovers) {
    (void)neg_frac;
    if (assigned >= train_count) break;
    if (alloc[c] < groups[c].size()) {
      ++alloc[c];
      ++assigned;
    }
  }
  // Rounding can strand quota on saturated classes; hand it to whoever has room.
  for (std::size_t c = 0; c < groups.size() && assigned < train_count; ++c) {
    while (alloc[c] < groups[c].size() && assigned < train_count) {
      ++alloc[c];
      ++assigned;
    }
  }

  SplitPair out;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (std::size_t i = 0; i < groups[c].size(); ++i) {
      (i < alloc[c] ? out.train : out.test).push_back(groups[c][i]);
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::vector<SplitPair> mccv_splits(std::size_t n, double train_fraction, int repetitions,
                                   const std::vector<int>& labels, std::uint64_t seed) {
  if (repetitions < 1) throw std::invalid_argument("mccv: repetitions must be positive");
  Rng rng(seed);
  std::vector<SplitPair> out;
  out.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    out.push_back(stratified_split(n, train_fraction, labels, rng));
  }
  return out;
}

}  // namespace naiveml
