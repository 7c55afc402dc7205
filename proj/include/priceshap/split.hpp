/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_SPLIT_HPP_
#define PRICESHAP_SPLIT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "priceshap/frame.hpp"

namespace priceshap {

inline constexpr int kValidationFolds = 4;

struct SplitFractions {
  double train = 0.48;
  double validation = 0.32;
  double test = 0.20;
};

// Week-level partition of a frame. Rows of one ISO week always share a
// subset; the four validation folds are dealt round-robin from the shuffled
// validation weeks.
struct SplitPlan {
  uint64_t seed = 0;
  SplitFractions fractions;
  std::vector<IsoWeek> weeks;          // distinct weeks, chronological
  std::vector<int> week_ids;           // per frame row, index into weeks
  std::vector<size_t> train_rows;
  std::array<std::vector<size_t>, kValidationFolds> val_folds;
  std::vector<size_t> test_rows;

  std::vector<size_t> validation_rows() const;
  size_t total_rows() const;
};

// Shuffles whole ISO weeks with a seeded xoshiro256** Fisher-Yates pass and
// cuts train / 4 validation folds / test. Rounding: floor for train and
// validation, remainder to test.
SplitPlan weekly_shuffle_split(const TimeSeriesFrame& frame, uint64_t seed,
                               const SplitFractions& fractions = {});

// Plans for seeds base_seed .. base_seed + count - 1.
std::vector<SplitPlan> repeated_splits(const TimeSeriesFrame& frame, uint64_t base_seed,
                                       int count, const SplitFractions& fractions = {});

std::string split_plan_to_json(const SplitPlan& plan);

}  // namespace priceshap

#endif  // PRICESHAP_SPLIT_HPP_
