/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/split.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "priceshap/error.hpp"
#include "priceshap/rng.hpp"

namespace priceshap {

using nlohmann::json;

std::vector<size_t> SplitPlan::validation_rows() const {
  std::vector<size_t> rows;
  for (const auto& fold : val_folds) rows.insert(rows.end(), fold.begin(), fold.end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

size_t SplitPlan::total_rows() const { return week_ids.size(); }

SplitPlan weekly_shuffle_split(const TimeSeriesFrame& frame, uint64_t seed,
                               const SplitFractions& fractions) {
  if (frame.rows() == 0) fail(ErrorKind::kEmptyDataset, "cannot split an empty frame");
  if (fractions.train <= 0 || fractions.validation <= 0 || fractions.test <= 0) {
    fail(ErrorKind::kBadConfig, "split fractions must be positive");
  }
  const double sum = fractions.train + fractions.validation + fractions.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::kBadConfig, "split fractions must sum to 1");
  }

  SplitPlan plan;
  plan.seed = seed;
  plan.fractions = fractions;

  // Frame timestamps are increasing, so distinct weeks appear in order.
  plan.week_ids.resize(frame.rows());
  for (size_t r = 0; r < frame.rows(); ++r) {
    const IsoWeek week = iso_week_of(frame.timestamps[r]);
    if (plan.weeks.empty() || !(plan.weeks.back() == week)) plan.weeks.push_back(week);
    plan.week_ids[r] = static_cast<int>(plan.weeks.size()) - 1;
  }

  const size_t num_weeks = plan.weeks.size();
  if (num_weeks < 7) {
    fail(ErrorKind::kTooFewWeeks, "need at least 7 ISO weeks, got " + std::to_string(num_weeks));
  }

  std::vector<int> order(num_weeks);
  for (size_t i = 0; i < num_weeks; ++i) order[i] = static_cast<int>(i);
  Xoshiro256StarStar rng(seed);
  shuffle(&order, &rng);

  const size_t n_train = static_cast<size_t>(std::floor(fractions.train * static_cast<double>(num_weeks)));
  const size_t n_val = static_cast<size_t>(std::floor(fractions.validation * static_cast<double>(num_weeks)));

  // subset per week: 0 train, 1..4 folds, 5 test
  std::vector<int> subset_of_week(num_weeks, 5);
  for (size_t i = 0; i < n_train; ++i) subset_of_week[order[i]] = 0;
  for (size_t i = 0; i < n_val; ++i) subset_of_week[order[n_train + i]] = 1 + static_cast<int>(i % kValidationFolds);

  for (size_t r = 0; r < frame.rows(); ++r) {
    switch (subset_of_week[plan.week_ids[r]]) {
      case 0: plan.train_rows.push_back(r); break;
      case 5: plan.test_rows.push_back(r); break;
      default: plan.val_folds[subset_of_week[plan.week_ids[r]] - 1].push_back(r); break;
    }
  }
  return plan;
}

std::vector<SplitPlan> repeated_splits(const TimeSeriesFrame& frame, uint64_t base_seed,
                                       int count, const SplitFractions& fractions) {
  if (count < 1) fail(ErrorKind::kBadConfig, "repeated_splits count must be >= 1");
  std::vector<SplitPlan> plans;
  plans.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    plans.push_back(weekly_shuffle_split(frame, base_seed + static_cast<uint64_t>(i), fractions));
  }
  return plans;
}

std::string split_plan_to_json(const SplitPlan& plan) {
  json obj;
  obj["seed"] = plan.seed;
  obj["fractions"] = {{"train", plan.fractions.train},
                      {"validation", plan.fractions.validation},
                      {"test", plan.fractions.test}};
  std::vector<std::string> subset_of_week(plan.weeks.size(), "empty");
  auto mark = [&](const std::vector<size_t>& rows, const std::string& name) {
    for (size_t r : rows) subset_of_week[static_cast<size_t>(plan.week_ids[r])] = name;
  };
  mark(plan.train_rows, "train");
  mark(plan.test_rows, "test");
  for (int f = 0; f < kValidationFolds; ++f) mark(plan.val_folds[f], "fold" + std::to_string(f + 1));
  json weeks = json::array();
  for (size_t w = 0; w < plan.weeks.size(); ++w) {
    weeks.push_back({{"iso_year", plan.weeks[w].year},
                     {"iso_week", plan.weeks[w].week},
                     {"subset", subset_of_week[w]}});
  }
  obj["weeks"] = weeks;
  obj["counts"] = {{"train_rows", plan.train_rows.size()},
                   {"validation_rows", plan.validation_rows().size()},
                   {"test_rows", plan.test_rows.size()}};
  return obj.dump(2) + "\n";
}

}  // namespace priceshap
