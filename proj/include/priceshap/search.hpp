/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_SEARCH_HPP_
#define PRICESHAP_SEARCH_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "priceshap/explain.hpp"
#include "priceshap/gbt.hpp"
#include "priceshap/split.hpp"

namespace priceshap {

enum class ParamKind { kUniform, kLogUniform, kIntUniform, kIntLogUniform, kCategorical, kFixed };

struct ParamRange {
  ParamKind kind = ParamKind::kFixed;
  double low = 0.0;
  double high = 0.0;
  std::vector<double> choices;  // categorical
  double value = 0.0;           // fixed
};

// Sampling ranges per hyperparameter, keyed by the Hyperparams field name.
// Draws happen in a canonical field order so a seed pins the whole trial.
struct SearchSpace {
  std::map<std::string, ParamRange> params;

  static SearchSpace default_space();
};

Hyperparams sample_hyperparams(const SearchSpace& space, uint64_t trial_seed);

struct Trial {
  int index = 0;
  uint64_t seed = 0;
  Hyperparams hp;
  bool failed = false;
  std::string error;
  double test_r2 = 0.0;
  std::array<double, kValidationFolds> fold_r2{};
  double mean_fold_r2 = 0.0;
  int best_round = 0;
};

enum class SelectionMode { kTestR2, kMeanFoldR2 };

struct SearchResult {
  uint64_t seed = 0;
  SelectionMode selection = SelectionMode::kTestR2;
  std::vector<Trial> trials;    // trial order
  std::vector<int> ranking;     // trial indices, best first
};

// `trials` independent draws from the space, each trained with early
// stopping. Failed trials are recorded and skipped in the ranking; no
// successful trial at all is fatal. Ranking is by test R2 (the published
// protocol, which peeks at the test set) or by mean fold R2 in clean mode.
SearchResult random_search(const TimeSeriesFrame& frame, const SplitPlan& plan,
                           const SearchSpace& space, int trials, uint64_t seed,
                           SelectionMode selection = SelectionMode::kTestR2,
                           std::vector<GbtModel>* models = nullptr);

struct SlopeSample {
  std::string feature;
  uint64_t split_seed = 0;
  int trial_index = 0;
  double slope = 0.0;
};

struct SlopeSummary {
  std::string feature;
  double mean = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
};

struct SlopeStudy {
  std::vector<SlopeSample> samples;
  std::vector<SlopeSummary> summary;  // one entry per studied feature
};

struct StudyConfig {
  int splits = 10;
  int trials_per_split = 50;
  int top_k = 10;
  uint64_t base_seed = 0;
  SplitFractions fractions;
  SelectionMode selection = SelectionMode::kTestR2;
  std::vector<std::string> features;
  std::vector<std::string> flip_sign;  // renewables get their x negated
  int threads = 1;
};

// For each split seed: shuffle, search, keep the top_k models, fit the
// dependency slope of every requested feature on the test rows; aggregate.
SlopeStudy consistency_study(const TimeSeriesFrame& frame, const SearchSpace& space,
                             const StudyConfig& config);

std::string search_space_to_json(const SearchSpace& space);
SearchSpace search_space_from_json(const std::string& text);
std::string search_result_to_json(const SearchResult& result);
std::string slope_study_to_csv(const SlopeStudy& study);
std::string slope_study_summary_json(const SlopeStudy& study);

}  // namespace priceshap

#endif  // PRICESHAP_SEARCH_HPP_
