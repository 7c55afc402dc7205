/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "priceshap/csv.hpp"
#include "priceshap/error.hpp"
#include "priceshap/rng.hpp"

namespace priceshap {

using nlohmann::json;

namespace {
constexpr double kMinSplitGain = 1e-12;
}

void validate_hyperparams(const Hyperparams& hp) {
  if (hp.num_leaves < 2) fail(ErrorKind::kBadConfig, "num_leaves must be >= 2");
  if (hp.min_data_in_leaf < 1) fail(ErrorKind::kBadConfig, "min_data_in_leaf must be >= 1");
  if (hp.max_bins < 2 || hp.max_bins > 65535) {
    fail(ErrorKind::kBadConfig, "max_bins must be in [2, 65535]");
  }
  if (!(hp.learning_rate > 0.0 && hp.learning_rate <= 1.0)) {
    fail(ErrorKind::kBadConfig, "learning_rate must be in (0, 1]");
  }
  if (hp.lambda_l2 < 0.0) fail(ErrorKind::kBadConfig, "lambda_l2 must be >= 0");
  if (!(hp.feature_fraction > 0.0 && hp.feature_fraction <= 1.0)) {
    fail(ErrorKind::kBadConfig, "feature_fraction must be in (0, 1]");
  }
  if (!(hp.bagging_fraction > 0.0 && hp.bagging_fraction <= 1.0)) {
    fail(ErrorKind::kBadConfig, "bagging_fraction must be in (0, 1]");
  }
  if (hp.max_rounds < 1) fail(ErrorKind::kBadConfig, "max_rounds must be >= 1");
  if (hp.early_stopping_patience < 1) {
    fail(ErrorKind::kBadConfig, "early_stopping_patience must be >= 1");
  }
}

BinMap BinMap::from_edges(std::vector<std::vector<double>> edges) {
  BinMap map;
  map.edges_ = std::move(edges);
  return map;
}

BinMap BinMap::build(const Matrix& training_rows, int max_bins) {
  if (training_rows.rows == 0) fail(ErrorKind::kEmptyDataset, "cannot build bins from zero rows");
  BinMap map;
  map.edges_.resize(training_rows.cols);
  std::vector<double> col(training_rows.rows);
  for (size_t f = 0; f < training_rows.cols; ++f) {
    for (size_t r = 0; r < training_rows.rows; ++r) col[r] = training_rows.at(r, f);
    std::sort(col.begin(), col.end());

    // distinct values with multiplicities
    std::vector<double> distinct;
    std::vector<size_t> count;
    for (double v : col) {
      if (distinct.empty() || v != distinct.back()) {
        distinct.push_back(v);
        count.push_back(1);
      } else {
        ++count.back();
      }
    }

    auto& edges = map.edges_[f];
    const size_t bins = std::min<size_t>(static_cast<size_t>(max_bins), distinct.size());
    if (distinct.size() <= static_cast<size_t>(max_bins)) {
      for (size_t i = 0; i + 1 < distinct.size(); ++i) {
        edges.push_back((distinct[i] + distinct[i + 1]) / 2.0);
      }
      continue;
    }
    // Greedy quantile packing: close a bin once it holds its fair share of
    // the remaining rows.
    size_t remaining = training_rows.rows;
    size_t bins_left = bins;
    size_t acc = 0;
    for (size_t i = 0; i + 1 < distinct.size(); ++i) {
      acc += count[i];
      const double fair = static_cast<double>(remaining) / static_cast<double>(bins_left);
      if (static_cast<double>(acc) >= fair && edges.size() + 1 < bins) {
        edges.push_back((distinct[i] + distinct[i + 1]) / 2.0);
        remaining -= acc;
        acc = 0;
        --bins_left;
      }
    }
  }
  return map;
}

uint16_t BinMap::bin_index(size_t feature, double value) const {
  const auto& edges = edges_[feature];
  const auto it = std::lower_bound(edges.begin(), edges.end(), value);
  return static_cast<uint16_t>(it - edges.begin());
}

double Tree::predict_row(const double* x) const {
  int id = 0;
  while (!is_leaf(id)) {
    const TreeNode& node = nodes[static_cast<size_t>(id)];
    id = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes[static_cast<size_t>(id)].value;
}

int Tree::max_depth() const {
  int deepest = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, depth);
    if (!is_leaf(id)) {
      stack.push_back({nodes[static_cast<size_t>(id)].left, depth + 1});
      stack.push_back({nodes[static_cast<size_t>(id)].right, depth + 1});
    }
  }
  return deepest;
}

double GbtModel::predict_row(const double* x) const {
  double acc = base_score;
  for (const auto& tree : trees) acc += learning_rate * tree.predict_row(x);
  return acc;
}

std::vector<double> GbtModel::predict(const Matrix& rows) const {
  if (rows.cols != feature_names.size()) {
    fail(ErrorKind::kBadInput, "prediction rows have " + std::to_string(rows.cols) +
                                   " features, model expects " +
                                   std::to_string(feature_names.size()));
  }
  std::string bad_rows;
  int bad_count = 0;
  for (size_t r = 0; r < rows.rows; ++r) {
    for (size_t c = 0; c < rows.cols; ++c) {
      if (!std::isfinite(rows.at(r, c))) {
        if (bad_count < 8) bad_rows += (bad_count ? "," : "") + std::to_string(r);
        ++bad_count;
        break;
      }
    }
  }
  if (bad_count > 0) {
    fail(ErrorKind::kNonFinite, "non-finite feature value in " + std::to_string(bad_count) +
                                    " row(s): [" + bad_rows + (bad_count > 8 ? ",..." : "") + "]");
  }
  std::vector<double> out(rows.rows);
  for (size_t r = 0; r < rows.rows; ++r) out[r] = predict_row(rows.row(r));
  return out;
}

double r2_score(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size()) {
    fail(ErrorKind::kBadInput, "r2_score length mismatch");
  }
  if (y_true.size() < 2) fail(ErrorKind::kBadInput, "r2_score needs at least 2 samples");
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= static_cast<double>(y_true.size());
  double ss_tot = 0.0, ss_res = 0.0;
  for (size_t i = 0; i < y_true.size(); ++i) {
    ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
    ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
  }
  if (ss_tot <= 0.0) fail(ErrorKind::kZeroVariance, "r2_score target has zero variance");
  return 1.0 - ss_res / ss_tot;
}

namespace {

// Row ids live in the frame; positions index the per-round bag.
struct LeafState {
  int node_id = 0;
  std::vector<uint32_t> positions;
  double sum_grad = 0.0;
  // cached best split
  bool splittable = false;
  double gain = 0.0;
  int feature = -1;
  int bin = -1;
  double threshold = 0.0;
};

struct HistBin {
  double grad = 0.0;
  uint32_t count = 0;
};

class TreeGrower {
 public:
  TreeGrower(const std::vector<uint32_t>& bag,
             const std::vector<double>& grad, const BinMap& bins,
             const std::vector<uint16_t>& binned, const std::vector<int32_t>& train_pos,
             const std::vector<int>& allowed_features, const Hyperparams& hp)
      : bag_(bag),
        grad_(grad),
        bins_(bins),
        binned_(binned),
        train_pos_(train_pos),
        allowed_(allowed_features),
        hp_(hp) {}

  Tree grow() {
    Tree tree;
    tree.nodes.push_back(TreeNode{});
    tree.nodes[0].cover = static_cast<double>(bag_.size());

    LeafState root;
    root.node_id = 0;
    root.positions.resize(bag_.size());
    std::iota(root.positions.begin(), root.positions.end(), 0u);
    root.sum_grad = std::accumulate(grad_.begin(), grad_.end(), 0.0);
    find_best_split(&root);

    std::vector<LeafState> leaves;
    leaves.push_back(std::move(root));

    while (static_cast<int>(leaves.size()) < hp_.num_leaves) {
      int best = -1;
      for (size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].splittable) continue;
        if (best < 0 || leaves[i].gain > leaves[best].gain) best = static_cast<int>(i);
      }
      if (best < 0) break;
      apply_split(&tree, &leaves, best);
    }

    for (const auto& leaf : leaves) {
      TreeNode& node = tree.nodes[static_cast<size_t>(leaf.node_id)];
      node.value = -leaf.sum_grad / (static_cast<double>(leaf.positions.size()) + hp_.lambda_l2);
    }
    return tree;
  }

 private:
  uint16_t bin_of(uint32_t position, int feature) const {
    const uint32_t row = bag_[position];
    return binned_[static_cast<size_t>(train_pos_[row]) * bins_.num_features() +
                   static_cast<size_t>(feature)];
  }

  void find_best_split(LeafState* leaf) const {
    leaf->splittable = false;
    const double total_grad = leaf->sum_grad;
    const double total_hess = static_cast<double>(leaf->positions.size());
    if (leaf->positions.size() < 2 * static_cast<size_t>(hp_.min_data_in_leaf)) return;
    const double parent_score = total_grad * total_grad / (total_hess + hp_.lambda_l2);

    std::vector<HistBin> hist;
    for (int f : allowed_) {
      const size_t nbins = bins_.num_bins(static_cast<size_t>(f));
      if (nbins < 2) continue;
      hist.assign(nbins, HistBin{});
      for (uint32_t pos : leaf->positions) {
        HistBin& cell = hist[bin_of(pos, f)];
        cell.grad += grad_[pos];
        cell.count += 1;
      }
      double left_grad = 0.0;
      uint32_t left_count = 0;
      for (size_t b = 0; b + 1 < nbins; ++b) {
        left_grad += hist[b].grad;
        left_count += hist[b].count;
        const uint32_t right_count = static_cast<uint32_t>(leaf->positions.size()) - left_count;
        if (right_count < static_cast<uint32_t>(hp_.min_data_in_leaf)) break;
        if (left_count < static_cast<uint32_t>(hp_.min_data_in_leaf)) continue;
        const double right_grad = total_grad - left_grad;
        const double gain = left_grad * left_grad / (static_cast<double>(left_count) + hp_.lambda_l2) +
                            right_grad * right_grad / (static_cast<double>(right_count) + hp_.lambda_l2) -
                            parent_score;
        if (gain > kMinSplitGain && (!leaf->splittable || gain > leaf->gain)) {
          leaf->splittable = true;
          leaf->gain = gain;
          leaf->feature = f;
          leaf->bin = static_cast<int>(b);
          leaf->threshold = bins_.edges(static_cast<size_t>(f))[b];
        }
      }
    }
  }

  void apply_split(Tree* tree, std::vector<LeafState>* leaves, int index) {
    LeafState leaf = std::move((*leaves)[index]);
    const int left_id = static_cast<int>(tree->nodes.size());
    const int right_id = left_id + 1;
    tree->nodes.push_back(TreeNode{});
    tree->nodes.push_back(TreeNode{});

    LeafState left, right;
    left.node_id = left_id;
    right.node_id = right_id;
    for (uint32_t pos : leaf.positions) {
      if (bin_of(pos, leaf.feature) <= static_cast<uint16_t>(leaf.bin)) {
        left.positions.push_back(pos);
        left.sum_grad += grad_[pos];
      } else {
        right.positions.push_back(pos);
        right.sum_grad += grad_[pos];
      }
    }

    TreeNode& node = tree->nodes[static_cast<size_t>(leaf.node_id)];
    node.feature = leaf.feature;
    node.threshold = leaf.threshold;
    node.left = left_id;
    node.right = right_id;
    tree->nodes[static_cast<size_t>(left_id)].cover = static_cast<double>(left.positions.size());
    tree->nodes[static_cast<size_t>(right_id)].cover = static_cast<double>(right.positions.size());

    find_best_split(&left);
    find_best_split(&right);
    (*leaves)[index] = std::move(left);
    leaves->push_back(std::move(right));
  }

  const std::vector<uint32_t>& bag_;
  const std::vector<double>& grad_;
  const BinMap& bins_;
  const std::vector<uint16_t>& binned_;
  const std::vector<int32_t>& train_pos_;
  const std::vector<int>& allowed_;
  const Hyperparams hp_;
};

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

GbtModel train(const TimeSeriesFrame& frame, const SplitPlan& plan, const Hyperparams& hp) {
  validate_hyperparams(hp);
  if (plan.total_rows() != frame.rows()) {
    fail(ErrorKind::kBadInput, "split plan covers " + std::to_string(plan.total_rows()) +
                                   " rows, frame has " + std::to_string(frame.rows()));
  }
  if (plan.train_rows.empty()) fail(ErrorKind::kEmptyDataset, "split plan has no training rows");
  for (int f = 0; f < kValidationFolds; ++f) {
    if (plan.val_folds[f].empty()) {
      fail(ErrorKind::kEmptyDataset, "validation fold " + std::to_string(f + 1) + " is empty");
    }
  }

  const Matrix features = frame.feature_matrix();
  const std::vector<double> y = frame.target();

  GbtModel model;
  model.feature_names = frame.feature_names();
  model.learning_rate = hp.learning_rate;
  model.hp = hp;

  std::vector<double> y_train(plan.train_rows.size());
  for (size_t i = 0; i < plan.train_rows.size(); ++i) y_train[i] = y[plan.train_rows[i]];
  for (double v : y_train) {
    if (!std::isfinite(v)) fail(ErrorKind::kNonFinite, "non-finite training target");
  }
  model.base_score = mean_of(y_train);

  Matrix train_features(plan.train_rows.size(), features.cols);
  for (size_t i = 0; i < plan.train_rows.size(); ++i) {
    for (size_t c = 0; c < features.cols; ++c) {
      const double v = features.at(plan.train_rows[i], c);
      if (!std::isfinite(v)) fail(ErrorKind::kNonFinite, "non-finite training feature");
      train_features.at(i, c) = v;
    }
  }
  model.bins = BinMap::build(train_features, hp.max_bins);

  double train_var = 0.0;
  for (double v : y_train) train_var += (v - model.base_score) * (v - model.base_score);
  if (train_var <= 0.0) {
    // Constant target: the optimal model is the base score alone. R2 is
    // undefined, which the metrics flag instead of faking a number.
    model.metrics.degenerate_target = true;
    model.metrics.train_r2 = std::numeric_limits<double>::quiet_NaN();
    model.metrics.fold_r2.fill(std::numeric_limits<double>::quiet_NaN());
    model.metrics.test_r2 = std::numeric_limits<double>::quiet_NaN();
    return model;
  }

  // Pre-binned training matrix; fold rows are routed on raw values instead.
  std::vector<int32_t> train_pos(frame.rows(), -1);
  for (size_t i = 0; i < plan.train_rows.size(); ++i) {
    train_pos[plan.train_rows[i]] = static_cast<int32_t>(i);
  }
  std::vector<uint16_t> binned(plan.train_rows.size() * features.cols);
  for (size_t i = 0; i < plan.train_rows.size(); ++i) {
    for (size_t c = 0; c < features.cols; ++c) {
      binned[i * features.cols + c] = model.bins.bin_index(c, train_features.at(i, c));
    }
  }

  std::vector<double> pred(frame.rows(), model.base_score);
  auto fold_truth = [&](int f) {
    std::vector<double> out(plan.val_folds[f].size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = y[plan.val_folds[f][i]];
    return out;
  };
  auto fold_pred = [&](int f) {
    std::vector<double> out(plan.val_folds[f].size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = pred[plan.val_folds[f][i]];
    return out;
  };
  std::array<std::vector<double>, kValidationFolds> fold_y;
  for (int f = 0; f < kValidationFolds; ++f) fold_y[f] = fold_truth(f);

  std::array<double, kValidationFolds> best_fold_r2;
  std::array<int, kValidationFolds> stale_rounds{};
  double best_mean_r2 = 0.0;
  int best_round = 0;
  {
    double mean_acc = 0.0;
    for (int f = 0; f < kValidationFolds; ++f) {
      best_fold_r2[f] = r2_score(fold_y[f], fold_pred(f));
      mean_acc += best_fold_r2[f];
    }
    best_mean_r2 = mean_acc / kValidationFolds;
  }

  std::vector<uint32_t> all_train(plan.train_rows.size());
  std::iota(all_train.begin(), all_train.end(), 0u);
  std::vector<int> all_features;
  for (size_t c = 0; c < features.cols; ++c) all_features.push_back(static_cast<int>(c));

  SplitMix64 round_seeds(hp.seed);
  int rounds_run = 0;
  for (int round = 1; round <= hp.max_rounds; ++round) {
    Xoshiro256StarStar round_rng(round_seeds.next());

    std::vector<uint32_t> bag;
    if (hp.bagging_fraction < 1.0) {
      const size_t k = static_cast<size_t>(std::floor(hp.bagging_fraction *
                                                      static_cast<double>(all_train.size())));
      if (k == 0) fail(ErrorKind::kEmptyDataset, "bagging produced an empty sample");
      bag = sample_without_replacement(all_train, k, &round_rng);
      std::sort(bag.begin(), bag.end());
    } else {
      bag = all_train;
    }

    std::vector<int> allowed;
    if (hp.feature_fraction < 1.0) {
      const size_t k = std::max<size_t>(
          1, static_cast<size_t>(std::ceil(hp.feature_fraction *
                                           static_cast<double>(all_features.size()))));
      allowed = sample_without_replacement(all_features, k, &round_rng);
      std::sort(allowed.begin(), allowed.end());
    } else {
      allowed = all_features;
    }

    std::vector<double> grad(bag.size());
    for (size_t i = 0; i < bag.size(); ++i) {
      const size_t row = plan.train_rows[bag[i]];
      grad[i] = pred[row] - y[row];
      if (!std::isfinite(grad[i])) {
        fail(ErrorKind::kNonFinite, "non-finite gradient in round " + std::to_string(round));
      }
    }

    // Bag positions index plan.train_rows here, matching train_pos lookups.
    std::vector<uint32_t> bag_rows(bag.size());
    for (size_t i = 0; i < bag.size(); ++i) bag_rows[i] = static_cast<uint32_t>(plan.train_rows[bag[i]]);

    TreeGrower grower(bag_rows, grad, model.bins, binned, train_pos, allowed, hp);
    model.trees.push_back(grower.grow());
    rounds_run = round;

    const Tree& tree = model.trees.back();
    for (size_t r : plan.train_rows) {
      pred[r] += hp.learning_rate * tree.predict_row(features.row(r));
    }
    for (int f = 0; f < kValidationFolds; ++f) {
      for (size_t r : plan.val_folds[f]) {
        pred[r] += hp.learning_rate * tree.predict_row(features.row(r));
      }
    }

    bool stop = false;
    double mean_acc = 0.0;
    for (int f = 0; f < kValidationFolds; ++f) {
      const double r2 = r2_score(fold_y[f], fold_pred(f));
      mean_acc += r2;
      if (r2 > best_fold_r2[f]) {
        best_fold_r2[f] = r2;
        stale_rounds[f] = 0;
      } else if (++stale_rounds[f] >= hp.early_stopping_patience) {
        stop = true;
      }
    }
    const double mean_r2 = mean_acc / kValidationFolds;
    if (mean_r2 > best_mean_r2) {
      best_mean_r2 = mean_r2;
      best_round = round;
    }
    if (stop) break;
  }

  model.trees.resize(static_cast<size_t>(best_round));
  model.metrics.best_round = best_round;
  model.metrics.rounds_run = rounds_run;

  // Final metrics from the truncated ensemble.
  auto eval_rows = [&](const std::vector<size_t>& rows) {
    std::vector<double> truth(rows.size()), estimate(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      truth[i] = y[rows[i]];
      estimate[i] = model.predict_row(features.row(rows[i]));
    }
    return r2_score(truth, estimate);
  };
  model.metrics.train_r2 = eval_rows(plan.train_rows);
  for (int f = 0; f < kValidationFolds; ++f) model.metrics.fold_r2[f] = eval_rows(plan.val_folds[f]);
  model.metrics.test_r2 = plan.test_rows.size() >= 2 ? eval_rows(plan.test_rows)
                                                     : std::numeric_limits<double>::quiet_NaN();
  return model;
}

static json hp_to_json(const Hyperparams& hp) {
  return json{{"num_leaves", hp.num_leaves},
              {"min_data_in_leaf", hp.min_data_in_leaf},
              {"max_bins", hp.max_bins},
              {"learning_rate", hp.learning_rate},
              {"lambda_l2", hp.lambda_l2},
              {"feature_fraction", hp.feature_fraction},
              {"bagging_fraction", hp.bagging_fraction},
              {"max_rounds", hp.max_rounds},
              {"early_stopping_patience", hp.early_stopping_patience},
              {"seed", hp.seed}};
}

static Hyperparams hp_from_json(const json& obj) {
  Hyperparams hp;
  hp.num_leaves = obj.value("num_leaves", hp.num_leaves);
  hp.min_data_in_leaf = obj.value("min_data_in_leaf", hp.min_data_in_leaf);
  hp.max_bins = obj.value("max_bins", hp.max_bins);
  hp.learning_rate = obj.value("learning_rate", hp.learning_rate);
  hp.lambda_l2 = obj.value("lambda_l2", hp.lambda_l2);
  hp.feature_fraction = obj.value("feature_fraction", hp.feature_fraction);
  hp.bagging_fraction = obj.value("bagging_fraction", hp.bagging_fraction);
  hp.max_rounds = obj.value("max_rounds", hp.max_rounds);
  hp.early_stopping_patience = obj.value("early_stopping_patience", hp.early_stopping_patience);
  hp.seed = obj.value("seed", hp.seed);
  return hp;
}

std::string model_to_json(const GbtModel& model) {
  json obj;
  obj["format"] = "priceshap-gbt-1";
  obj["base_score"] = model.base_score;
  obj["learning_rate"] = model.learning_rate;
  obj["feature_names"] = model.feature_names;
  json bins = json::array();
  for (size_t f = 0; f < model.bins.num_features(); ++f) bins.push_back(model.bins.edges(f));
  obj["bin_edges"] = bins;
  json trees = json::array();
  for (const auto& tree : model.trees) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
      nodes.push_back({{"feature", node.feature},
                       {"threshold", node.threshold},
                       {"left", node.left},
                       {"right", node.right},
                       {"cover", node.cover},
                       {"value", node.value}});
    }
    trees.push_back({{"nodes", nodes}});
  }
  obj["trees"] = trees;
  obj["metadata"] = {{"hyperparams", hp_to_json(model.hp)},
                     {"best_round", model.metrics.best_round},
                     {"rounds_run", model.metrics.rounds_run},
                     {"degenerate_target", model.metrics.degenerate_target},
                     {"train_r2", model.metrics.train_r2},
                     {"fold_r2", model.metrics.fold_r2},
                     {"test_r2", model.metrics.test_r2}};
  return obj.dump(2) + "\n";
}

GbtModel model_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kBadInput, std::string("model JSON parse error: ") + e.what());
  }
  if (obj.value("format", std::string()) != "priceshap-gbt-1") {
    fail(ErrorKind::kBadInput, "unknown model format");
  }
  GbtModel model;
  model.base_score = obj.at("base_score").get<double>();
  model.learning_rate = obj.at("learning_rate").get<double>();
  model.feature_names = obj.at("feature_names").get<std::vector<std::string>>();
  std::vector<std::vector<double>> edges;
  for (const auto& e : obj.at("bin_edges")) edges.push_back(e.get<std::vector<double>>());
  if (edges.size() != model.feature_names.size()) {
    fail(ErrorKind::kBadInput, "model bin_edges/feature_names size mismatch");
  }
  model.bins = BinMap::from_edges(std::move(edges));
  for (const auto& jt : obj.at("trees")) {
    Tree tree;
    for (const auto& jn : jt.at("nodes")) {
      TreeNode node;
      node.feature = jn.at("feature").get<int>();
      node.threshold = jn.at("threshold").get<double>();
      node.left = jn.at("left").get<int>();
      node.right = jn.at("right").get<int>();
      node.cover = jn.at("cover").get<double>();
      node.value = jn.at("value").get<double>();
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) fail(ErrorKind::kBadInput, "model tree without nodes");
    model.trees.push_back(std::move(tree));
  }
  const json& meta = obj.at("metadata");
  model.hp = hp_from_json(meta.at("hyperparams"));
  model.metrics.best_round = meta.value("best_round", 0);
  model.metrics.rounds_run = meta.value("rounds_run", 0);
  model.metrics.degenerate_target = meta.value("degenerate_target", false);
  auto opt_double = [&](const char* key) {
    return meta.contains(key) && meta[key].is_number()
               ? meta[key].get<double>()
               : std::numeric_limits<double>::quiet_NaN();
  };
  model.metrics.train_r2 = opt_double("train_r2");
  model.metrics.test_r2 = opt_double("test_r2");
  if (meta.contains("fold_r2") && meta["fold_r2"].is_array()) {
    for (int f = 0; f < kValidationFolds; ++f) {
      model.metrics.fold_r2[f] = meta["fold_r2"][static_cast<size_t>(f)].is_number()
                                     ? meta["fold_r2"][static_cast<size_t>(f)].get<double>()
                                     : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return model;
}

void save_model(const GbtModel& model, const std::string& path) {
  write_file(path, model_to_json(model));
}

GbtModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

}  // namespace priceshap
