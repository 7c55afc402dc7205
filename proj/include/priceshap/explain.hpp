/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_EXPLAIN_HPP_
#define PRICESHAP_EXPLAIN_HPP_

#include <optional>
#include <string>
#include <vector>

#include "priceshap/gbt.hpp"
#include "priceshap/matrix.hpp"

namespace priceshap {

// Additive attribution of predictions: prediction = base_value + sum(phi).
struct Explanation {
  double base_value = 0.0;
  Matrix phi;  // samples x features, target units
  std::vector<std::string> feature_names;
};

// Pairwise decomposition: prediction = base_value + sum over j,k of Phi_jk.
// Diagonals are main effects; rows sum to the plain SHAP values.
struct InteractionExplanation {
  double base_value = 0.0;
  size_t num_features = 0;
  std::vector<Matrix> phi;  // one symmetric features x features matrix per sample
  std::vector<std::string> feature_names;
};

// Path-dependent TreeSHAP: the coalition value function follows splits whose
// feature is in the coalition and cover-averages the children otherwise.
// base_value is the empty-coalition expectation computed from the tree
// structure (cover-weighted leaf mean), not from a background sample.
Explanation tree_shap(const GbtModel& model, const Matrix& rows, int threads = 1);

// Expected model output under a coalition: the cover-weighted traversal used
// by both tree_shap and the brute-force oracle. Features are "in" when their
// bit is set in `coalition`.
double coalition_value(const GbtModel& model, const double* x, uint64_t coalition);

// Exact Shapley values by direct enumeration of all 2^n coalitions. The
// independent cross-check for tree_shap; n <= 20.
std::vector<double> brute_force_shapley(const GbtModel& model, const double* x);

// Shapley interaction values from paired conditional TreeSHAP runs, halved
// and symmetrized; Phi_jj makes each row sum to phi_j exactly.
InteractionExplanation shap_interactions(const GbtModel& model, const Matrix& rows,
                                         int threads = 1);

struct FeatureImportance {
  std::string name;
  double mean_abs_phi = 0.0;
  double score = 0.0;  // normalized by the largest mean |phi|
};

struct ImportanceReport {
  std::vector<FeatureImportance> features;  // sorted by score, name tie-break
  bool degenerate = false;                  // every phi was zero
};

ImportanceReport feature_importance(const Explanation& expl);

// Scatter data behind a dependency plot: one (x, phi) pair per explained row,
// optionally x sign-flipped, optionally carrying the interacting feature.
struct DependencyData {
  std::string feature;
  bool flipped = false;
  std::optional<std::string> interacting;
  std::vector<double> x;
  std::vector<double> phi;
  std::vector<double> x_interacting;  // aligned with x when interacting is set
};

DependencyData dependency(const Explanation& expl, const Matrix& rows,
                          const std::string& feature, bool flip_sign);

// Interaction slice (x_j, Phi_jk, x_k).
DependencyData dependency(const InteractionExplanation& inter, const Matrix& rows,
                          const std::string& feature, bool flip_sign,
                          const std::string& interacting);

// Main effect (x_j, Phi_jj): the dependency with all interactions removed.
DependencyData main_effect_dependency(const InteractionExplanation& inter, const Matrix& rows,
                                      const std::string& feature, bool flip_sign);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares line through the (x, phi) pairs.
LinearFit linear_slope(const DependencyData& dep);

struct ThresholdScan {
  double threshold = 0.0;
  double gap = 0.0;  // |mean phi above - mean phi below|
  bool significant = false;
};

// Best split of the sorted scatter into low/high halves with at least
// `window` points on each side, maximizing the gap in mean phi.
ThresholdScan threshold_scan(const DependencyData& dep, size_t window = 50);

}  // namespace priceshap

#endif  // PRICESHAP_EXPLAIN_HPP_
