#pragma once

#include <cstdint>
#include <vector>

#include "naiveml/rng.hpp"

namespace naiveml {

struct SplitPair {
  std::vector<std::size_t> train, test;
};

// Stratified k-fold: test folds partition the rows; per-fold counts of each
// class differ by at most one, and so do total fold sizes. Deterministic in
// the seed. k must be in [2, n].
std::vector<SplitPair> kfold_splits(std::size_t n, int k, const std::vector<int>& labels,
                                    std::uint64_t seed);

// Stratified Monte-Carlo cross-validation: each repetition draws a fresh
// train side of exactly floor(train_fraction * n) rows, allocated per class
// by largest remainder; the rest is the test side. Deterministic in the seed.
std::vector<SplitPair> mccv_splits(std::size_t n, double train_fraction, int repetitions,
                                   const std::vector<int>& labels, std::uint64_t seed);

// Single stratified shuffle split, the primitive behind mccv. Exposed for
// the outer train/test split of benchmark runs.
SplitPair stratified_split(std::size_t n, double train_fraction, const std::vector<int>& labels,
                           Rng& rng);

}  // namespace naiveml
