/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_GBT_HPP_
#define PRICESHAP_GBT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "priceshap/frame.hpp"
#include "priceshap/matrix.hpp"
#include "priceshap/split.hpp"

namespace priceshap {

struct Hyperparams {
  int num_leaves = 31;
  int min_data_in_leaf = 20;
  int max_bins = 255;
  double learning_rate = 0.05;
  double lambda_l2 = 0.0;
  double feature_fraction = 1.0;
  double bagging_fraction = 1.0;
  int max_rounds = 1000;
  int early_stopping_patience = 25;
  uint64_t seed = 0;
};

void validate_hyperparams(const Hyperparams& hp);

// Quantile bin edges per feature, built from training rows only. Bin b of
// feature f is (edge[b-1], edge[b]]; values beyond the outermost edges clamp
// into the first/last bin. A constant feature has one bin and no edges, so it
// can never split.
class BinMap {
 public:
  BinMap() = default;

  static BinMap build(const Matrix& training_rows, int max_bins);

  size_t num_features() const { return edges_.size(); }
  size_t num_bins(size_t feature) const { return edges_[feature].size() + 1; }
  const std::vector<double>& edges(size_t feature) const { return edges_[feature]; }
  uint16_t bin_index(size_t feature, double value) const;

  static BinMap from_edges(std::vector<std::vector<double>> edges);

 private:
  std::vector<std::vector<double>> edges_;
};

// feature < 0 marks a leaf. Routing rule: x[feature] <= threshold goes left.
// cover counts the (bagged) training rows through the node.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double cover = 0.0;
  double value = 0.0;  // leaf value before learning-rate shrinkage
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  bool is_leaf(int id) const { return nodes[static_cast<size_t>(id)].feature < 0; }
  double predict_row(const double* x) const;
  int max_depth() const;
};

struct TrainMetrics {
  double train_r2 = 0.0;
  std::array<double, kValidationFolds> fold_r2{};
  double test_r2 = 0.0;
  int best_round = 0;
  int rounds_run = 0;
  bool degenerate_target = false;  // constant training target, R2 undefined
};

struct GbtModel {
  double base_score = 0.0;
  double learning_rate = 0.05;
  std::vector<std::string> feature_names;
  BinMap bins;
  std::vector<Tree> trees;
  Hyperparams hp;
  TrainMetrics metrics;

  double predict_row(const double* x) const;
  // Fixed tree-order accumulation; fatal on non-finite feature values.
  std::vector<double> predict(const Matrix& rows) const;
};

// L2 boosting with leaf-wise growth and histogram split finding. After each
// round the model is scored on the four validation folds; training stops when
// any fold has not improved for `early_stopping_patience` rounds (or at
// max_rounds) and the ensemble is truncated to the round with the best mean
// fold R2.
GbtModel train(const TimeSeriesFrame& frame, const SplitPlan& plan, const Hyperparams& hp);

// 1 - SS_res / SS_tot. Fatal on length < 2 or zero variance of y_true.
double r2_score(const std::vector<double>& y_true, const std::vector<double>& y_pred);

std::string model_to_json(const GbtModel& model);
GbtModel model_from_json(const std::string& text);
void save_model(const GbtModel& model, const std::string& path);
GbtModel load_model(const std::string& path);

}  // namespace priceshap

#endif  // PRICESHAP_GBT_HPP_
