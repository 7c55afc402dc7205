/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "priceshap/csv.hpp"
#include "priceshap/error.hpp"
#include "priceshap/rng.hpp"

namespace priceshap {

using nlohmann::json;

SearchSpace SearchSpace::default_space() {
  SearchSpace space;
  space.params["num_leaves"] = {ParamKind::kIntLogUniform, 8, 256, {}, 0};
  space.params["learning_rate"] = {ParamKind::kLogUniform, 0.01, 0.3, {}, 0};
  space.params["min_data_in_leaf"] = {ParamKind::kIntUniform, 5, 100, {}, 0};
  space.params["max_bins"] = {ParamKind::kCategorical, 0, 0, {63, 127, 255}, 0};
  space.params["lambda_l2"] = {ParamKind::kUniform, 0, 10, {}, 0};
  space.params["feature_fraction"] = {ParamKind::kUniform, 0.6, 1.0, {}, 0};
  space.params["bagging_fraction"] = {ParamKind::kUniform, 0.6, 1.0, {}, 0};
  space.params["early_stopping_patience"] = {ParamKind::kIntUniform, 10, 50, {}, 0};
  space.params["max_rounds"] = {ParamKind::kFixed, 0, 0, {}, 2000};
  return space;
}

namespace {

double draw(const ParamRange& range, Xoshiro256StarStar* rng) {
  switch (range.kind) {
    case ParamKind::kUniform:
      return rng->uniform(range.low, range.high);
    case ParamKind::kLogUniform:
      if (range.low <= 0.0) fail(ErrorKind::kBadConfig, "log-uniform bounds must be positive");
      return std::exp(rng->uniform(std::log(range.low), std::log(range.high)));
    case ParamKind::kIntUniform:
      return std::floor(rng->uniform(range.low, range.high + 1.0));
    case ParamKind::kIntLogUniform: {
      if (range.low <= 0.0) fail(ErrorKind::kBadConfig, "log-uniform bounds must be positive");
      const double v = std::exp(rng->uniform(std::log(range.low), std::log(range.high + 1.0)));
      return std::min(range.high, std::floor(v));
    }
    case ParamKind::kCategorical: {
      if (range.choices.empty()) fail(ErrorKind::kBadConfig, "categorical without choices");
      return range.choices[rng->uniform_int(range.choices.size())];
    }
    case ParamKind::kFixed:
      return range.value;
  }
  return range.value;
}

// Canonical draw order; missing keys keep the Hyperparams default.
const std::vector<std::string>& field_order() {
  static const std::vector<std::string> order = {
      "num_leaves",       "min_data_in_leaf", "max_bins",
      "learning_rate",    "lambda_l2",        "feature_fraction",
      "bagging_fraction", "max_rounds",       "early_stopping_patience"};
  return order;
}

void assign_field(Hyperparams* hp, const std::string& name, double value) {
  if (name == "num_leaves") hp->num_leaves = static_cast<int>(value);
  else if (name == "min_data_in_leaf") hp->min_data_in_leaf = static_cast<int>(value);
  else if (name == "max_bins") hp->max_bins = static_cast<int>(value);
  else if (name == "learning_rate") hp->learning_rate = value;
  else if (name == "lambda_l2") hp->lambda_l2 = value;
  else if (name == "feature_fraction") hp->feature_fraction = value;
  else if (name == "bagging_fraction") hp->bagging_fraction = value;
  else if (name == "max_rounds") hp->max_rounds = static_cast<int>(value);
  else if (name == "early_stopping_patience") hp->early_stopping_patience = static_cast<int>(value);
  else fail(ErrorKind::kBadConfig, "unknown hyperparameter '" + name + "'");
}

}  // namespace

Hyperparams sample_hyperparams(const SearchSpace& space, uint64_t trial_seed) {
  for (const auto& [name, range] : space.params) {
    bool known = false;
    for (const auto& field : field_order()) known = known || field == name;
    if (!known) fail(ErrorKind::kBadConfig, "unknown hyperparameter '" + name + "'");
  }
  Xoshiro256StarStar rng(trial_seed);
  Hyperparams hp;
  for (const auto& field : field_order()) {
    const auto it = space.params.find(field);
    if (it != space.params.end()) assign_field(&hp, field, draw(it->second, &rng));
  }
  hp.seed = trial_seed;
  validate_hyperparams(hp);
  return hp;
}

SearchResult random_search(const TimeSeriesFrame& frame, const SplitPlan& plan,
                           const SearchSpace& space, int trials, uint64_t seed,
                           SelectionMode selection, std::vector<GbtModel>* models) {
  if (trials < 1) fail(ErrorKind::kBadConfig, "random search needs at least 1 trial");
  SearchResult result;
  result.seed = seed;
  result.selection = selection;

  // All trial seeds fixed up front: concurrent execution cannot change them.
  SplitMix64 seeder(seed);
  std::vector<uint64_t> trial_seeds(static_cast<size_t>(trials));
  for (auto& s : trial_seeds) s = seeder.next();

  const std::vector<double> y_test = frame.target(plan.test_rows);
  const Matrix x_test = frame.feature_matrix(plan.test_rows);

  for (int i = 0; i < trials; ++i) {
    Trial trial;
    trial.index = i;
    trial.seed = trial_seeds[static_cast<size_t>(i)];
    try {
      trial.hp = sample_hyperparams(space, trial.seed);
      GbtModel model = train(frame, plan, trial.hp);
      trial.fold_r2 = model.metrics.fold_r2;
      trial.best_round = model.metrics.best_round;
      double mean = 0.0;
      for (double r2 : trial.fold_r2) mean += r2;
      trial.mean_fold_r2 = mean / kValidationFolds;
      trial.test_r2 = plan.test_rows.size() >= 2 ? r2_score(y_test, model.predict(x_test))
                                                 : model.metrics.test_r2;
      if (models != nullptr) models->push_back(std::move(model));
    } catch (const Error& e) {
      trial.failed = true;
      trial.error = e.what();
      if (models != nullptr) models->push_back(GbtModel{});
    }
    result.trials.push_back(std::move(trial));
  }

  for (const auto& trial : result.trials) {
    if (!trial.failed) result.ranking.push_back(trial.index);
  }
  if (result.ranking.empty()) {
    fail(ErrorKind::kBadInput, "every random-search trial failed");
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(), [&](int a, int b) {
    const Trial& ta = result.trials[static_cast<size_t>(a)];
    const Trial& tb = result.trials[static_cast<size_t>(b)];
    const double sa = selection == SelectionMode::kTestR2 ? ta.test_r2 : ta.mean_fold_r2;
    const double sb = selection == SelectionMode::kTestR2 ? tb.test_r2 : tb.mean_fold_r2;
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return result;
}

SlopeStudy consistency_study(const TimeSeriesFrame& frame, const SearchSpace& space,
                             const StudyConfig& config) {
  if (config.splits < 1) fail(ErrorKind::kBadConfig, "study needs at least 1 split");
  if (config.top_k < 1 || config.top_k > config.trials_per_split) {
    fail(ErrorKind::kBadConfig, "top_k must be in [1, trials_per_split]");
  }
  if (config.features.empty()) fail(ErrorKind::kBadConfig, "study needs at least one feature");

  auto flipped = [&](const std::string& feature) {
    return std::find(config.flip_sign.begin(), config.flip_sign.end(), feature) !=
           config.flip_sign.end();
  };

  SlopeStudy study;
  for (int s = 0; s < config.splits; ++s) {
    const uint64_t split_seed = config.base_seed + static_cast<uint64_t>(s);
    const SplitPlan plan = weekly_shuffle_split(frame, split_seed, config.fractions);

    std::vector<GbtModel> models;
    // Search randomness is derived from the split seed so every (split,
    // trial) pair is reproducible in isolation.
    const SearchResult result =
        random_search(frame, plan, space, config.trials_per_split,
                      SplitMix64(split_seed).next(), config.selection, &models);

    const Matrix x_test = frame.feature_matrix(plan.test_rows);
    const int keep = std::min<int>(config.top_k, static_cast<int>(result.ranking.size()));
    for (int k = 0; k < keep; ++k) {
      const int trial_index = result.ranking[static_cast<size_t>(k)];
      const GbtModel& model = models[static_cast<size_t>(trial_index)];
      const Explanation expl = tree_shap(model, x_test, config.threads);
      for (const auto& feature : config.features) {
        const DependencyData dep = dependency(expl, x_test, feature, flipped(feature));
        study.samples.push_back(
            {feature, split_seed, trial_index, linear_slope(dep).slope});
      }
    }
  }

  for (const auto& feature : config.features) {
    std::vector<double> slopes;
    for (const auto& sample : study.samples) {
      if (sample.feature == feature) slopes.push_back(sample.slope);
    }
    if (slopes.empty()) continue;
    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(slopes.size() - 1);
      const size_t lo = static_cast<size_t>(std::floor(pos));
      const size_t hi = std::min(lo + 1, slopes.size() - 1);
      return slopes[lo] + (slopes[hi] - slopes[lo]) * (pos - std::floor(pos));
    };
    SlopeSummary summary;
    summary.feature = feature;
    summary.mean = 0.0;
    for (double v : slopes) summary.mean += v;
    summary.mean /= static_cast<double>(slopes.size());
    summary.q25 = quantile(0.25);
    summary.median = quantile(0.5);
    summary.q75 = quantile(0.75);
    study.summary.push_back(summary);
  }
  return study;
}

namespace {

std::string kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::kUniform: return "uniform";
    case ParamKind::kLogUniform: return "log-uniform";
    case ParamKind::kIntUniform: return "int-uniform";
    case ParamKind::kIntLogUniform: return "int-log-uniform";
    case ParamKind::kCategorical: return "categorical";
    case ParamKind::kFixed: return "fixed";
  }
  return "fixed";
}

ParamKind kind_from_name(const std::string& name) {
  if (name == "uniform") return ParamKind::kUniform;
  if (name == "log-uniform") return ParamKind::kLogUniform;
  if (name == "int-uniform") return ParamKind::kIntUniform;
  if (name == "int-log-uniform") return ParamKind::kIntLogUniform;
  if (name == "categorical") return ParamKind::kCategorical;
  if (name == "fixed") return ParamKind::kFixed;
  fail(ErrorKind::kBadConfig, "unknown parameter kind '" + name + "'");
}

}  // namespace

std::string search_space_to_json(const SearchSpace& space) {
  json obj;
  for (const auto& [name, range] : space.params) {
    json r;
    r["type"] = kind_name(range.kind);
    switch (range.kind) {
      case ParamKind::kCategorical: r["choices"] = range.choices; break;
      case ParamKind::kFixed: r["value"] = range.value; break;
      default:
        r["low"] = range.low;
        r["high"] = range.high;
    }
    obj[name] = r;
  }
  return obj.dump(2) + "\n";
}

SearchSpace search_space_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kBadConfig, std::string("search space parse error: ") + e.what());
  }
  SearchSpace space;
  for (const auto& [name, r] : obj.items()) {
    ParamRange range;
    range.kind = kind_from_name(r.at("type").get<std::string>());
    switch (range.kind) {
      case ParamKind::kCategorical:
        range.choices = r.at("choices").get<std::vector<double>>();
        break;
      case ParamKind::kFixed:
        range.value = r.at("value").get<double>();
        break;
      default:
        range.low = r.at("low").get<double>();
        range.high = r.at("high").get<double>();
        if (range.high < range.low) {
          fail(ErrorKind::kBadConfig, "parameter '" + name + "' has high < low");
        }
    }
    space.params[name] = range;
  }
  return space;
}

std::string search_result_to_json(const SearchResult& result) {
  json obj;
  obj["seed"] = result.seed;
  obj["selection"] = result.selection == SelectionMode::kTestR2 ? "test_r2" : "mean_fold_r2";
  if (result.selection == SelectionMode::kTestR2) {
    obj["selection_note"] = "ranking uses the test set, matching the published protocol";
  }
  json trials = json::array();
  for (const auto& trial : result.trials) {
    json t;
    t["index"] = trial.index;
    t["seed"] = trial.seed;
    t["failed"] = trial.failed;
    if (trial.failed) {
      t["error"] = trial.error;
    } else {
      t["test_r2"] = trial.test_r2;
      t["fold_r2"] = trial.fold_r2;
      t["mean_fold_r2"] = trial.mean_fold_r2;
      t["best_round"] = trial.best_round;
      t["hyperparams"] = {{"num_leaves", trial.hp.num_leaves},
                          {"min_data_in_leaf", trial.hp.min_data_in_leaf},
                          {"max_bins", trial.hp.max_bins},
                          {"learning_rate", trial.hp.learning_rate},
                          {"lambda_l2", trial.hp.lambda_l2},
                          {"feature_fraction", trial.hp.feature_fraction},
                          {"bagging_fraction", trial.hp.bagging_fraction},
                          {"max_rounds", trial.hp.max_rounds},
                          {"early_stopping_patience", trial.hp.early_stopping_patience},
                          {"seed", trial.hp.seed}};
    }
    trials.push_back(t);
  }
  obj["trials"] = trials;
  obj["ranking"] = result.ranking;
  return obj.dump(2) + "\n";
}

std::string slope_study_to_csv(const SlopeStudy& study) {
  std::ostringstream out;
  out << "feature,split_seed,trial_id,slope\n";
  for (const auto& sample : study.samples) {
    out << sample.feature << ',' << sample.split_seed << ',' << sample.trial_index << ','
        << format_double(sample.slope) << '\n';
  }
  return out.str();
}

std::string slope_study_summary_json(const SlopeStudy& study) {
  json arr = json::array();
  for (const auto& s : study.summary) {
    arr.push_back({{"feature", s.feature},
                   {"mean", s.mean},
                   {"q25", s.q25},
                   {"median", s.median},
                   {"q75", s.q75}});
  }
  json obj;
  obj["features"] = arr;
  return obj.dump(2) + "\n";
}

}  // namespace priceshap
