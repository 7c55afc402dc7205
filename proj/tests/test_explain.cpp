/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "priceshap/error.hpp"
#include "priceshap/explain.hpp"
#include "priceshap/rng.hpp"
#include "support/test_models.hpp"

using namespace priceshap;
using namespace priceshap::testsupport;

namespace {

GbtModel single_leaf_model(double value, double base, double lr) {
  GbtModel model;
  model.base_score = base;
  model.learning_rate = lr;
  model.feature_names = {"f0", "f1"};
  model.bins = BinMap::from_edges({{}, {}});
  Tree tree;
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 10.0, value});
  model.trees.push_back(tree);
  return model;
}

// Stump on feature 0 at 0.5 with leaves (a at cover wa, b at cover wb).
GbtModel stump_model(double a, double wa, double b, double wb, double base, double lr,
                     int num_features = 3) {
  GbtModel model;
  model.base_score = base;
  model.learning_rate = lr;
  for (int f = 0; f < num_features; ++f) model.feature_names.push_back("f" + std::to_string(f));
  model.bins =
      BinMap::from_edges(std::vector<std::vector<double>>(static_cast<size_t>(num_features)));
  Tree tree;
  tree.nodes.push_back(TreeNode{0, 0.5, 1, 2, wa + wb, 0.0});
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, wa, a});
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, wb, b});
  model.trees.push_back(tree);
  return model;
}

// Depth-2 tree computing x0*x1 on {0,1}^2 inputs, uniform covers.
GbtModel product_model() {
  GbtModel model;
  model.base_score = 0.0;
  model.learning_rate = 1.0;
  model.feature_names = {"f0", "f1"};
  model.bins = BinMap::from_edges({{}, {}});
  Tree tree;
  tree.nodes.push_back(TreeNode{0, 0.5, 1, 2, 100.0, 0.0});  // root on x0
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 50.0, 0.0});
  tree.nodes.push_back(TreeNode{1, 0.5, 3, 4, 50.0, 0.0});   // x0=1 branch on x1
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 25.0, 0.0});
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 25.0, 1.0});
  model.trees.push_back(tree);
  return model;
}

}  // namespace

TEST_CASE("single-leaf tree attributes nothing to features") {
  const GbtModel model = single_leaf_model(3.0, 10.0, 0.5);
  Matrix rows(4, 2);
  const Explanation expl = tree_shap(model, rows);
  CHECK(expl.base_value == doctest::Approx(10.0 + 0.5 * 3.0).epsilon(1e-15));
  for (size_t r = 0; r < 4; ++r) {
    CHECK(expl.phi.at(r, 0) == 0.0);
    CHECK(expl.phi.at(r, 1) == 0.0);
  }
}

TEST_CASE("stump attribution is the deviation from the cover-weighted mean") {
  const double a = 4.0, wa = 30.0, b = -2.0, wb = 10.0, base = 1.0, lr = 0.7;
  const GbtModel model = stump_model(a, wa, b, wb, base, lr);
  const double mean = (wa * a + wb * b) / (wa + wb);

  Matrix rows(2, 3);
  rows.at(0, 0) = 0.2;  // routes to leaf a
  rows.at(1, 0) = 0.9;  // routes to leaf b
  const Explanation expl = tree_shap(model, rows);

  CHECK(expl.base_value == doctest::Approx(base + lr * mean).epsilon(1e-15));
  CHECK(expl.phi.at(0, 0) == doctest::Approx(lr * (a - mean)).epsilon(1e-12));
  CHECK(expl.phi.at(1, 0) == doctest::Approx(lr * (b - mean)).epsilon(1e-12));
  CHECK(expl.phi.at(0, 1) == 0.0);
  CHECK(expl.phi.at(0, 2) == 0.0);
}

TEST_CASE("tree_shap matches brute force on random ensembles") {
  // spec-sized case: 20 trees, depth <= 4, 8 features, 100 rows
  const GbtModel model = random_ensemble(101, 8, 20, 4);
  const Matrix rows = random_rows(202, 100, 8);
  const Explanation expl = tree_shap(model, rows);
  double worst = 0.0;
  for (size_t r = 0; r < rows.rows; ++r) {
    const auto brute = brute_force_shapley(model, rows.row(r));
    for (size_t c = 0; c < 8; ++c) {
      worst = std::max(worst, std::abs(expl.phi.at(r, c) - brute[c]));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("oracle equivalence across feature counts and depths") {
  const int configs[4][3] = {{2, 3, 2}, {5, 8, 3}, {8, 12, 5}, {12, 10, 5}};
  for (const auto& cfg : configs) {
    const int n = cfg[0], trees = cfg[1], depth = cfg[2];
    const GbtModel model = random_ensemble(300 + n, n, trees, depth);
    const Matrix rows = random_rows(400 + n, 200, static_cast<size_t>(n));
    const Explanation expl = tree_shap(model, rows);
    double worst = 0.0;
    for (size_t r = 0; r < rows.rows; ++r) {
      const auto brute = brute_force_shapley(model, rows.row(r));
      for (int c = 0; c < n; ++c) {
        worst = std::max(worst, std::abs(expl.phi.at(r, static_cast<size_t>(c)) -
                                         brute[static_cast<size_t>(c)]));
      }
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("local accuracy: base plus phi equals the prediction") {
  const GbtModel model = random_ensemble(107, 6, 15, 5);
  const Matrix rows = random_rows(208, 300, 6);
  const Explanation expl = tree_shap(model, rows);
  const auto pred = model.predict(rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    double total = expl.base_value;
    for (size_t c = 0; c < 6; ++c) total += expl.phi.at(r, c);
    CHECK(std::abs(total - pred[r]) <= 1e-8);
  }
}

TEST_CASE("brute force on a constant model is zero") {
  const GbtModel model = single_leaf_model(2.5, 1.0, 1.0);
  const double x[2] = {0.3, 0.7};
  for (double phi : brute_force_shapley(model, x)) CHECK(phi == 0.0);
}

TEST_CASE("brute force separates additive single-feature trees") {
  // Two stumps on different features: phi_0 from tree 0 only.
  GbtModel model = stump_model(2.0, 10.0, -2.0, 10.0, 0.0, 1.0, 2);
  Tree t2;
  t2.nodes.push_back(TreeNode{1, 0.5, 1, 2, 20.0, 0.0});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 5.0, 1.0});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 15.0, 3.0});
  model.trees.push_back(t2);

  const double x[2] = {0.2, 0.8};
  const auto phi = brute_force_shapley(model, x);

  GbtModel only_first = model;
  only_first.trees.resize(1);
  const auto phi_first = brute_force_shapley(only_first, x);
  CHECK(phi[0] == doctest::Approx(phi_first[0]).epsilon(1e-14));

  GbtModel only_second = model;
  only_second.trees.erase(only_second.trees.begin());
  const auto phi_second = brute_force_shapley(only_second, x);
  CHECK(phi[1] == doctest::Approx(phi_second[1]).epsilon(1e-14));
}

TEST_CASE("brute force satisfies the efficiency axiom exactly") {
  const GbtModel model = random_ensemble(113, 5, 10, 4);
  const Matrix rows = random_rows(214, 20, 5);
  for (size_t r = 0; r < rows.rows; ++r) {
    const auto phi = brute_force_shapley(model, rows.row(r));
    const double v_empty = coalition_value(model, rows.row(r), 0);
    const double v_full = coalition_value(model, rows.row(r), (1u << 5) - 1);
    double total = 0.0;
    for (double p : phi) total += p;
    CHECK(std::abs(total - (v_full - v_empty)) <= 1e-10);
    CHECK(v_full == model.predict_row(rows.row(r)));
  }
}

TEST_CASE("brute force rejects too many features") {
  GbtModel model = single_leaf_model(1.0, 0.0, 1.0);
  model.feature_names.assign(21, "f");
  const std::vector<double> x(21, 0.0);
  CHECK_THROWS_AS(brute_force_shapley(model, x.data()), Error);
}

TEST_CASE("a feature used by no tree gets exactly zero") {
  // Model splits only on features 0 and 1; matrix carries 5 features.
  GbtModel model = random_ensemble(119, 2, 8, 4);
  model.feature_names = {"f0", "f1", "f2", "f3", "f4"};
  model.bins = BinMap::from_edges(std::vector<std::vector<double>>(5));
  const Matrix rows = random_rows(220, 50, 5);
  const Explanation expl = tree_shap(model, rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    CHECK(expl.phi.at(r, 2) == 0.0);
    CHECK(expl.phi.at(r, 3) == 0.0);
    CHECK(expl.phi.at(r, 4) == 0.0);
  }
}

TEST_CASE("ensemble explanation is the sum of per-tree explanations") {
  const GbtModel model = random_ensemble(127, 6, 12, 5);
  const Matrix rows = random_rows(228, 40, 6);
  const Explanation whole = tree_shap(model, rows);

  Matrix summed(rows.rows, 6);
  double base_sum = model.base_score;
  for (const auto& tree : model.trees) {
    GbtModel single;
    single.base_score = 0.0;
    single.learning_rate = model.learning_rate;
    single.feature_names = model.feature_names;
    single.bins = model.bins;
    single.trees.push_back(tree);
    const Explanation part = tree_shap(single, rows);
    base_sum += part.base_value;
    for (size_t r = 0; r < rows.rows; ++r) {
      for (size_t c = 0; c < 6; ++c) summed.at(r, c) += part.phi.at(r, c);
    }
  }
  CHECK(std::abs(base_sum - whole.base_value) <= 1e-10);
  for (size_t r = 0; r < rows.rows; ++r) {
    for (size_t c = 0; c < 6; ++c) {
      CHECK(std::abs(summed.at(r, c) - whole.phi.at(r, c)) <= 1e-10);
    }
  }
}

TEST_CASE("explanations are identical across thread counts") {
  const GbtModel model = random_ensemble(131, 7, 10, 5);
  const Matrix rows = random_rows(232, 64, 7);
  const Explanation a = tree_shap(model, rows, 1);
  const Explanation b = tree_shap(model, rows, 4);
  CHECK(a.phi.data == b.phi.data);
}

TEST_CASE("interactions of a purely additive model vanish") {
  GbtModel model = stump_model(2.0, 10.0, -2.0, 10.0, 0.5, 0.8, 2);
  Tree t2;
  t2.nodes.push_back(TreeNode{1, 0.3, 1, 2, 20.0, 0.0});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 8.0, 1.5});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 12.0, -4.0});
  model.trees.push_back(t2);

  const Matrix rows = random_rows(240, 30, 2);
  const InteractionExplanation inter = shap_interactions(model, rows);
  const Explanation expl = tree_shap(model, rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    CHECK(inter.phi[r].at(0, 1) == 0.0);
    CHECK(inter.phi[r].at(1, 0) == 0.0);
    CHECK(inter.phi[r].at(0, 0) == doctest::Approx(expl.phi.at(r, 0)).epsilon(1e-12));
    CHECK(inter.phi[r].at(1, 1) == doctest::Approx(expl.phi.at(r, 1)).epsilon(1e-12));
  }
}

TEST_CASE("product model has a genuine pairwise interaction") {
  const GbtModel model = product_model();
  Matrix rows(4, 2);
  rows.at(0, 0) = 0;
  rows.at(0, 1) = 0;
  rows.at(1, 0) = 0;
  rows.at(1, 1) = 1;
  rows.at(2, 0) = 1;
  rows.at(2, 1) = 0;
  rows.at(3, 0) = 1;
  rows.at(3, 1) = 1;
  const InteractionExplanation inter = shap_interactions(model, rows);
  const Explanation expl = tree_shap(model, rows);

  CHECK(std::abs(inter.phi[3].at(0, 1)) > 0.01);
  for (size_t r = 0; r < 4; ++r) {
    const Matrix brute = brute_force_interactions(model, rows.row(r));
    for (size_t i = 0; i < 2; ++i) {
      for (size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(inter.phi[r].at(i, j) - brute.at(i, j)) <= 1e-9);
      }
    }
    // Row sums recover the SHAP values.
    for (size_t i = 0; i < 2; ++i) {
      const double row_sum = inter.phi[r].at(i, 0) + inter.phi[r].at(i, 1);
      CHECK(std::abs(row_sum - expl.phi.at(r, i)) <= 1e-8);
    }
  }
}

TEST_CASE("interactions match the brute-force interaction index") {
  const int configs[3][3] = {{3, 6, 3}, {5, 8, 4}, {8, 6, 5}};
  for (const auto& cfg : configs) {
    const int n = cfg[0], trees = cfg[1], depth = cfg[2];
    const GbtModel model = random_ensemble(500 + n, n, trees, depth);
    const Matrix rows = random_rows(600 + n, 15, static_cast<size_t>(n));
    const InteractionExplanation inter = shap_interactions(model, rows);
    for (size_t r = 0; r < rows.rows; ++r) {
      const Matrix brute = brute_force_interactions(model, rows.row(r));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(inter.phi[r].at(static_cast<size_t>(i), static_cast<size_t>(j)) -
                         brute.at(static_cast<size_t>(i), static_cast<size_t>(j))) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("interaction matrices are symmetric and consistent") {
  const GbtModel model = random_ensemble(137, 6, 10, 5);
  const Matrix rows = random_rows(238, 25, 6);
  const InteractionExplanation inter = shap_interactions(model, rows);
  const Explanation expl = tree_shap(model, rows);
  const auto pred = model.predict(rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    double grand = inter.base_value;
    for (size_t i = 0; i < 6; ++i) {
      double row_sum = 0.0;
      for (size_t j = 0; j < 6; ++j) {
        CHECK(inter.phi[r].at(i, j) == inter.phi[r].at(j, i));  // exact symmetry
        row_sum += inter.phi[r].at(i, j);
        grand += inter.phi[r].at(i, j);
      }
      CHECK(std::abs(row_sum - expl.phi.at(r, i)) <= 1e-8);
    }
    CHECK(std::abs(grand - pred[r]) <= 1e-8);
  }
}

TEST_CASE("single stump cannot interact") {
  const GbtModel model = stump_model(3.0, 12.0, -1.0, 8.0, 0.0, 1.0, 3);
  const Matrix rows = random_rows(250, 10, 3);
  const InteractionExplanation inter = shap_interactions(model, rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    for (size_t i = 0; i < 3; ++i) {
      for (size_t j = 0; j < 3; ++j) {
        if (i != j) CHECK(inter.phi[r].at(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("importance normalizes by the top feature") {
  Explanation expl;
  expl.feature_names = {"a", "b"};
  expl.phi = Matrix(2, 2);
  expl.phi.at(0, 0) = 1.0;
  expl.phi.at(0, 1) = -1.0;
  expl.phi.at(1, 0) = 3.0;
  expl.phi.at(1, 1) = 1.0;
  const ImportanceReport report = feature_importance(expl);
  REQUIRE(report.features.size() == 2);
  CHECK(report.features[0].name == "a");
  CHECK(report.features[0].mean_abs_phi == 2.0);
  CHECK(report.features[0].score == 1.0);
  CHECK(report.features[1].score == 0.5);
  CHECK(!report.degenerate);
}

TEST_CASE("importance of a single-feature model") {
  const GbtModel model = stump_model(2.0, 10.0, -2.0, 10.0, 0.0, 1.0, 3);
  const Matrix rows = random_rows(260, 30, 3);
  const ImportanceReport report = feature_importance(tree_shap(model, rows));
  CHECK(report.features[0].name == "f0");
  CHECK(report.features[0].score == 1.0);
  CHECK(report.features[1].score == 0.0);
  CHECK(report.features[2].score == 0.0);
}

TEST_CASE("all-zero attributions are flagged degenerate") {
  Explanation expl;
  expl.feature_names = {"a", "b"};
  expl.phi = Matrix(3, 2);
  const ImportanceReport report = feature_importance(expl);
  CHECK(report.degenerate);
  for (const auto& f : report.features) CHECK(f.score == 0.0);
}

TEST_CASE("equal-scoring features are ordered by name") {
  Explanation expl;
  expl.feature_names = {"zeta", "alpha"};
  expl.phi = Matrix(1, 2);
  expl.phi.at(0, 0) = 2.0;
  expl.phi.at(0, 1) = 2.0;
  const ImportanceReport report = feature_importance(expl);
  CHECK(report.features[0].name == "alpha");
  CHECK(report.features[1].name == "zeta");
}

TEST_CASE("dependency extracts pairs and flips only x") {
  const GbtModel model = stump_model(2.0, 10.0, -2.0, 10.0, 0.0, 1.0, 2);
  const Matrix rows = random_rows(270, 20, 2);
  const Explanation expl = tree_shap(model, rows);

  const DependencyData plain = dependency(expl, rows, "f0", false);
  const DependencyData flipped = dependency(expl, rows, "f0", true);
  for (size_t r = 0; r < 20; ++r) {
    CHECK(plain.x[r] == rows.at(r, 0));
    CHECK(flipped.x[r] == -rows.at(r, 0));
    CHECK(plain.phi[r] == flipped.phi[r]);
  }
  CHECK_THROWS_AS(dependency(expl, rows, "nope", false), Error);
}

TEST_CASE("main effects equal the full dependency for additive models") {
  GbtModel model = stump_model(2.0, 10.0, -2.0, 10.0, 0.0, 1.0, 2);
  Tree t2;
  t2.nodes.push_back(TreeNode{1, 0.6, 1, 2, 20.0, 0.0});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 10.0, 2.0});
  t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 10.0, -2.0});
  model.trees.push_back(t2);

  const Matrix rows = random_rows(280, 25, 2);
  const Explanation expl = tree_shap(model, rows);
  const InteractionExplanation inter = shap_interactions(model, rows);
  const DependencyData full = dependency(expl, rows, "f0", false);
  const DependencyData main = main_effect_dependency(inter, rows, "f0", false);
  for (size_t r = 0; r < 25; ++r) {
    CHECK(main.x[r] == full.x[r]);
    CHECK(std::abs(main.phi[r] - full.phi[r]) <= 1e-12);
  }
}

TEST_CASE("interaction slices carry the interacting value") {
  const GbtModel model = product_model();
  Matrix rows(2, 2);
  rows.at(0, 0) = 1;
  rows.at(0, 1) = 1;
  rows.at(1, 0) = 0;
  rows.at(1, 1) = 1;
  const InteractionExplanation inter = shap_interactions(model, rows);
  const DependencyData slice = dependency(inter, rows, "f0", false, "f1");
  REQUIRE(slice.interacting.has_value());
  CHECK(slice.x_interacting[0] == 1.0);
  CHECK(slice.phi[0] == doctest::Approx(inter.phi[0].at(0, 1)).epsilon(1e-15));
  CHECK(std::abs(slice.phi[0]) > 0.01);
}

TEST_CASE("linear fit interpolates an exact line") {
  DependencyData dep;
  for (int i = 0; i < 10; ++i) {
    dep.x.push_back(i);
    dep.phi.push_back(2.0 * i + 1.0);
  }
  const LinearFit fit = linear_slope(dep);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric scatter has zero slope") {
  DependencyData dep;
  dep.x = {-2, -1, 1, 2, -2, -1, 1, 2};
  dep.phi = {1, 1, 1, 1, -1, -1, -1, -1};
  CHECK(linear_slope(dep).slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ols hand value") {
  DependencyData dep;
  dep.x = {0, 1, 2};
  dep.phi = {0, 1, 1};
  const LinearFit fit = linear_slope(dep);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("linear fit needs distinct x") {
  DependencyData dep;
  dep.x = {1, 1, 1};
  dep.phi = {0, 1, 2};
  CHECK_THROWS_AS(linear_slope(dep), Error);
  dep.x = {1};
  dep.phi = {0};
  CHECK_THROWS_AS(linear_slope(dep), Error);
}

TEST_CASE("threshold scan finds an exact step") {
  DependencyData dep;
  for (int i = 0; i < 200; ++i) {
    const double x = i * 0.05;
    dep.x.push_back(x);
    dep.phi.push_back(x < 5.0 ? 0.0 : 1.0);
  }
  const ThresholdScan scan = threshold_scan(dep, 10);
  CHECK(scan.threshold == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(scan.gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scan.significant);
}

TEST_CASE("constant data has no significant threshold") {
  DependencyData dep;
  for (int i = 0; i < 200; ++i) {
    dep.x.push_back(i);
    dep.phi.push_back(3.0);
  }
  const ThresholdScan scan = threshold_scan(dep, 10);
  CHECK(scan.gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(!scan.significant);
}

TEST_CASE("noisy step at 2.75 is recovered within 0.1") {
  Xoshiro256StarStar rng(61);
  DependencyData dep;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(1.5, 4.0);
    dep.x.push_back(x);
    dep.phi.push_back((x >= 2.75 ? 1.0 : 0.0) + rng.normal(0.0, 0.1));
  }
  const ThresholdScan scan = threshold_scan(dep, 50);
  CHECK(std::abs(scan.threshold - 2.75) <= 0.1);
  CHECK(scan.significant);
}

TEST_CASE("threshold scan demands enough points") {
  DependencyData dep;
  dep.x = {1, 2, 3};
  dep.phi = {1, 2, 3};
  CHECK_THROWS_AS(threshold_scan(dep, 50), Error);
}

TEST_CASE("explanations reject width mismatches and non-finite rows") {
  const GbtModel model = stump_model(1.0, 5.0, -1.0, 5.0, 0.0, 1.0, 2);
  Matrix narrow(3, 1);
  CHECK_THROWS_AS(tree_shap(model, narrow), Error);
  Matrix bad(1, 2);
  bad.at(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(tree_shap(model, bad), Error);
}
