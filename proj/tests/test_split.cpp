/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "priceshap/error.hpp"
#include "priceshap/rng.hpp"
#include "priceshap/split.hpp"

using namespace priceshap;

namespace {

// Full ISO weeks of hourly rows starting on a Monday.
TimeSeriesFrame make_weekly_frame(size_t weeks) {
  TimeSeriesFrame frame;
  frame.columns = {{"x", "GW", FeatureRole::kPowerSystem},
                   {"y", "EUR/MWh", FeatureRole::kTarget}};
  frame.target_name = "y";
  const EpochHour start = parse_timestamp("2017-01-02T00:00:00Z");
  Xoshiro256StarStar rng(1);
  for (size_t h = 0; h < weeks * 168; ++h) {
    frame.timestamps.push_back(start + static_cast<EpochHour>(h));
    frame.values.push_back(rng.uniform(0, 50));
    frame.values.push_back(rng.uniform(0, 90));
  }
  return frame;
}

std::set<int> weeks_of(const SplitPlan& plan, const std::vector<size_t>& rows) {
  std::set<int> weeks;
  for (size_t r : rows) weeks.insert(plan.week_ids[r]);
  return weeks;
}

void check_invariants(const SplitPlan& plan) {
  // Partition: every row exactly once.
  std::vector<int> seen(plan.total_rows(), 0);
  auto mark = [&](const std::vector<size_t>& rows) {
    for (size_t r : rows) seen[r] += 1;
  };
  mark(plan.train_rows);
  mark(plan.test_rows);
  for (const auto& fold : plan.val_folds) mark(fold);
  for (int count : seen) CHECK(count == 1);

  // Week atomicity: no week appears in two subsets.
  std::vector<std::set<int>> subsets;
  subsets.push_back(weeks_of(plan, plan.train_rows));
  subsets.push_back(weeks_of(plan, plan.test_rows));
  for (const auto& fold : plan.val_folds) subsets.push_back(weeks_of(plan, fold));
  std::set<int> all;
  size_t total = 0;
  for (const auto& s : subsets) {
    total += s.size();
    all.insert(s.begin(), s.end());
  }
  CHECK(all.size() == total);

  // Fold balance in weeks.
  size_t min_weeks = plan.weeks.size(), max_weeks = 0;
  for (const auto& fold : plan.val_folds) {
    const size_t w = weeks_of(plan, fold).size();
    min_weeks = std::min(min_weeks, w);
    max_weeks = std::max(max_weeks, w);
  }
  CHECK(max_weeks - min_weeks <= 1);
}

}  // namespace

TEST_CASE("100 weeks split 48/32/20 with folds of 8") {
  const auto frame = make_weekly_frame(100);
  const auto plan = weekly_shuffle_split(frame, 1);
  CHECK(plan.weeks.size() == 100);
  CHECK(weeks_of(plan, plan.train_rows).size() == 48);
  CHECK(weeks_of(plan, plan.test_rows).size() == 20);
  for (const auto& fold : plan.val_folds) CHECK(weeks_of(plan, fold).size() == 8);
  check_invariants(plan);
}

TEST_CASE("same seed yields the identical plan") {
  const auto frame = make_weekly_frame(30);
  const auto a = weekly_shuffle_split(frame, 1234);
  const auto b = weekly_shuffle_split(frame, 1234);
  CHECK(a.train_rows == b.train_rows);
  CHECK(a.test_rows == b.test_rows);
  for (int f = 0; f < kValidationFolds; ++f) CHECK(a.val_folds[f] == b.val_folds[f]);
  CHECK(split_plan_to_json(a) == split_plan_to_json(b));

  const auto c = weekly_shuffle_split(frame, 1235);
  CHECK(a.train_rows != c.train_rows);
}

TEST_CASE("25 weeks floor to 12/8/5") {
  const auto frame = make_weekly_frame(25);
  const auto plan = weekly_shuffle_split(frame, 7);
  CHECK(weeks_of(plan, plan.train_rows).size() == 12);
  CHECK(plan.validation_rows().size() == 8 * 168);
  CHECK(weeks_of(plan, plan.test_rows).size() == 5);
  for (const auto& fold : plan.val_folds) CHECK(weeks_of(plan, fold).size() == 2);
  check_invariants(plan);
}

TEST_CASE("fewer than 7 weeks is fatal") {
  const auto frame = make_weekly_frame(6);
  try {
    weekly_shuffle_split(frame, 1);
    FAIL("expected TooFewWeeks");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTooFewWeeks);
  }
}

TEST_CASE("bad fractions are rejected") {
  const auto frame = make_weekly_frame(10);
  CHECK_THROWS_AS(weekly_shuffle_split(frame, 1, {0.5, 0.2, 0.2}), Error);
  CHECK_THROWS_AS(weekly_shuffle_split(frame, 1, {0.0, 0.5, 0.5}), Error);
}

TEST_CASE("invariants hold over many seeds") {
  const auto frame = make_weekly_frame(13);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    check_invariants(weekly_shuffle_split(frame, seed));
  }
}

TEST_CASE("partial weeks at the edges stay atomic") {
  // Starts mid-week (Thursday) and ends mid-week.
  TimeSeriesFrame frame;
  frame.columns = {{"x", "GW", FeatureRole::kPowerSystem},
                   {"y", "EUR/MWh", FeatureRole::kTarget}};
  frame.target_name = "y";
  const EpochHour start = parse_timestamp("2017-01-05T07:00:00Z");
  Xoshiro256StarStar rng(2);
  for (size_t h = 0; h < 10 * 168 + 100; ++h) {
    frame.timestamps.push_back(start + static_cast<EpochHour>(h));
    frame.values.push_back(rng.uniform(0, 50));
    frame.values.push_back(rng.uniform(0, 90));
  }
  for (uint64_t seed = 0; seed < 20; ++seed) {
    check_invariants(weekly_shuffle_split(frame, seed));
  }
}

TEST_CASE("repeated_splits uses consecutive seeds") {
  const auto frame = make_weekly_frame(25);
  const auto plans = repeated_splits(frame, 100, 10);
  CHECK(plans.size() == 10);
  for (size_t i = 0; i < plans.size(); ++i) {
    CHECK(plans[i].seed == 100 + i);
    check_invariants(plans[i]);
  }
  // Plans differ pairwise (overwhelmingly likely over 25 weeks).
  for (size_t i = 1; i < plans.size(); ++i) {
    CHECK(plans[i].train_rows != plans[0].train_rows);
  }
}

TEST_CASE("repeated_splits of count 1 equals a single split") {
  const auto frame = make_weekly_frame(9);
  const auto plans = repeated_splits(frame, 42, 1);
  const auto single = weekly_shuffle_split(frame, 42);
  REQUIRE(plans.size() == 1);
  CHECK(plans[0].train_rows == single.train_rows);
  CHECK(plans[0].test_rows == single.test_rows);
}

TEST_CASE("two plans on a tiny 8-week frame stay valid") {
  const auto frame = make_weekly_frame(8);
  const auto plans = repeated_splits(frame, 5, 2);
  for (const auto& plan : plans) check_invariants(plan);
}

TEST_CASE("plan serializes to json with week assignments") {
  const auto frame = make_weekly_frame(14);  // floor(0.32*14) = 4, one week per fold
  const auto plan = weekly_shuffle_split(frame, 3);
  const std::string text = split_plan_to_json(plan);
  CHECK(text.find("\"seed\": 3") != std::string::npos);
  CHECK(text.find("\"iso_year\"") != std::string::npos);
  CHECK(text.find("fold4") != std::string::npos);
}
