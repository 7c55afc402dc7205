/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/explain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "priceshap/error.hpp"
#include "priceshap/parallel.hpp"

namespace priceshap {

namespace {

// One deduplicated split feature on the current tree path. pweight[i] carries
// the Shapley-kernel-weighted mass of all feature subsets of size i drawn
// from the path, given each element's probability of being "on" (followed,
// one_fraction) or "off" (cover-averaged, zero_fraction).
struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void extend_path(PathElement* path, int depth, double zero_fraction, double one_fraction,
                 int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  const double dp1 = static_cast<double>(depth + 1);
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight * static_cast<double>(i + 1) / dp1;
    path[i].pweight = zero_fraction * path[i].pweight * static_cast<double>(depth - i) / dp1;
  }
}

// Inverse of extend_path for the element at `index`; shifts the tail down.
void unwind_path(PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  const double dp1 = static_cast<double>(depth + 1);
  double next_one = path[depth].pweight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one * dp1 / (static_cast<double>(i + 1) * one_fraction);
      next_one = tmp - path[i].pweight * zero_fraction * static_cast<double>(depth - i) / dp1;
    } else {
      path[i].pweight = path[i].pweight * dp1 / (zero_fraction * static_cast<double>(depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

// Total kernel weight of the path with the element at `index` removed,
// without mutating the path.
double unwound_path_sum(const PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  const double dp1 = static_cast<double>(depth + 1);
  double next_one = path[depth].pweight;
  double total = 0.0;
  if (one_fraction != 0.0) {
    for (int i = depth - 1; i >= 0; --i) {
      const double tmp = next_one * dp1 / (static_cast<double>(i + 1) * one_fraction);
      total += tmp;
      next_one = path[i].pweight - tmp * zero_fraction * static_cast<double>(depth - i) / dp1;
    }
  } else {
    for (int i = depth - 1; i >= 0; --i) {
      total += path[i].pweight * dp1 / (zero_fraction * static_cast<double>(depth - i));
    }
  }
  return total;
}

// condition: 0 plain run; +1 treat condition_feature as always followed;
// -1 treat it as always cover-averaged. Conditioned features never enter the
// path; their routing mass accumulates in condition_fraction instead.
void shap_recurse(const Tree& tree, const double* x, double* phi, double scale, int node,
                  int unique_depth, PathElement* parent_path, double parent_zero,
                  double parent_one, int parent_feature, int condition, int condition_feature,
                  double condition_fraction) {
  if (condition_fraction == 0.0) return;
  const TreeNode& n = tree.nodes[static_cast<size_t>(node)];

  PathElement* path = parent_path + unique_depth + 1;
  std::copy(parent_path, parent_path + unique_depth + 1, path);
  if (condition == 0 || condition_feature != parent_feature) {
    extend_path(path, unique_depth, parent_zero, parent_one, parent_feature);
  }

  if (n.feature < 0) {  // leaf
    for (int i = 1; i <= unique_depth; ++i) {
      const double w = unwound_path_sum(path, unique_depth, i);
      phi[path[i].feature] +=
          w * (path[i].one_fraction - path[i].zero_fraction) * n.value * scale * condition_fraction;
    }
    return;
  }

  const int hot = x[n.feature] <= n.threshold ? n.left : n.right;
  const int cold = hot == n.left ? n.right : n.left;
  const double hot_zero = tree.nodes[static_cast<size_t>(hot)].cover / n.cover;
  const double cold_zero = tree.nodes[static_cast<size_t>(cold)].cover / n.cover;

  double incoming_zero = 1.0;
  double incoming_one = 1.0;
  int path_index = 0;
  for (; path_index <= unique_depth; ++path_index) {
    if (path[path_index].feature == n.feature) break;
  }
  if (path_index != unique_depth + 1) {
    incoming_zero = path[path_index].zero_fraction;
    incoming_one = path[path_index].one_fraction;
    unwind_path(path, unique_depth, path_index);
    unique_depth -= 1;
  }

  double hot_condition = condition_fraction;
  double cold_condition = condition_fraction;
  if (condition > 0 && n.feature == condition_feature) {
    cold_condition = 0.0;
    unique_depth -= 1;  // children skip the extend for this feature
  } else if (condition < 0 && n.feature == condition_feature) {
    hot_condition *= hot_zero;
    cold_condition *= cold_zero;
    unique_depth -= 1;
  }

  shap_recurse(tree, x, phi, scale, hot, unique_depth + 1, path, hot_zero * incoming_zero,
               incoming_one, n.feature, condition, condition_feature, hot_condition);
  shap_recurse(tree, x, phi, scale, cold, unique_depth + 1, path, cold_zero * incoming_zero, 0.0,
               n.feature, condition, condition_feature, cold_condition);
}

double expected_leaf_value(const Tree& tree, int node) {
  const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
  if (n.feature < 0) return n.value;
  const double left_cover = tree.nodes[static_cast<size_t>(n.left)].cover;
  const double right_cover = tree.nodes[static_cast<size_t>(n.right)].cover;
  return (left_cover * expected_leaf_value(tree, n.left) +
          right_cover * expected_leaf_value(tree, n.right)) /
         n.cover;
}

size_t path_buffer_size(const GbtModel& model) {
  int deepest = 0;
  for (const auto& tree : model.trees) deepest = std::max(deepest, tree.max_depth());
  const size_t maxd = static_cast<size_t>(deepest) + 2;
  return (maxd + 1) * (maxd + 2) / 2;
}

void check_rows(const GbtModel& model, const Matrix& rows) {
  if (rows.cols != model.feature_names.size()) {
    fail(ErrorKind::kBadInput, "explanation rows have " + std::to_string(rows.cols) +
                                   " features, model expects " +
                                   std::to_string(model.feature_names.size()));
  }
  for (size_t r = 0; r < rows.rows; ++r) {
    for (size_t c = 0; c < rows.cols; ++c) {
      if (!std::isfinite(rows.at(r, c))) {
        fail(ErrorKind::kNonFinite, "non-finite feature value in row " + std::to_string(r));
      }
    }
  }
}

void validate_covers(const GbtModel& model) {
  for (const auto& tree : model.trees) {
    for (const auto& node : tree.nodes) {
      if (node.cover <= 0.0) {
        fail(ErrorKind::kBadInput, "tree node without cover statistics");
      }
    }
  }
}

// phi for one row of one model under one condition; phi has model width.
void explain_row(const GbtModel& model, const double* x, PathElement* scratch, double* phi,
                 int condition, int condition_feature) {
  for (const auto& tree : model.trees) {
    shap_recurse(tree, x, phi, model.learning_rate, 0, 0, scratch, 1.0, 1.0, -1, condition,
                 condition_feature, 1.0);
  }
}

std::vector<bool> features_used(const GbtModel& model) {
  std::vector<bool> used(model.feature_names.size(), false);
  for (const auto& tree : model.trees) {
    for (const auto& node : tree.nodes) {
      if (node.feature >= 0) used[static_cast<size_t>(node.feature)] = true;
    }
  }
  return used;
}

double model_base_value(const GbtModel& model) {
  double base = model.base_score;
  for (const auto& tree : model.trees) {
    base += model.learning_rate * expected_leaf_value(tree, 0);
  }
  return base;
}

}  // namespace

Explanation tree_shap(const GbtModel& model, const Matrix& rows, int threads) {
  check_rows(model, rows);
  validate_covers(model);

  Explanation expl;
  expl.feature_names = model.feature_names;
  expl.base_value = model_base_value(model);
  expl.phi = Matrix(rows.rows, model.feature_names.size());

  const size_t scratch_size = path_buffer_size(model);
  parallel_for(rows.rows, threads, [&](size_t r) {
    std::vector<PathElement> scratch(scratch_size);
    explain_row(model, rows.row(r), scratch.data(), expl.phi.row(r), 0, -1);
  });
  return expl;
}

double coalition_value(const GbtModel& model, const double* x, uint64_t coalition) {
  struct Walker {
    const Tree& tree;
    const double* x;
    uint64_t coalition;

    double value(int node) const {
      const TreeNode& n = tree.nodes[static_cast<size_t>(node)];
      if (n.feature < 0) return n.value;
      if (coalition >> n.feature & 1u) {
        return value(x[n.feature] <= n.threshold ? n.left : n.right);
      }
      const double left_cover = tree.nodes[static_cast<size_t>(n.left)].cover;
      const double right_cover = tree.nodes[static_cast<size_t>(n.right)].cover;
      return (left_cover * value(n.left) + right_cover * value(n.right)) / n.cover;
    }
  };
  double total = model.base_score;
  for (const auto& tree : model.trees) {
    total += model.learning_rate * Walker{tree, x, coalition}.value(0);
  }
  return total;
}

std::vector<double> brute_force_shapley(const GbtModel& model, const double* x) {
  const size_t n = model.feature_names.size();
  if (n > 20) {
    fail(ErrorKind::kBadInput,
         "brute-force Shapley supports at most 20 features, got " + std::to_string(n));
  }
  validate_covers(model);

  const uint64_t subsets = 1ull << n;
  std::vector<double> value(subsets);
  for (uint64_t mask = 0; mask < subsets; ++mask) {
    value[mask] = coalition_value(model, x, mask);
  }

  // w(s) = s! (n-s-1)! / n! = 1 / (n * C(n-1, s))
  std::vector<double> weight(n);
  double binom = 1.0;
  for (size_t s = 0; s < n; ++s) {
    weight[s] = 1.0 / (static_cast<double>(n) * binom);
    binom = binom * static_cast<double>(n - 1 - s) / static_cast<double>(s + 1);
  }

  std::vector<double> phi(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    const uint64_t bit = 1ull << j;
    for (uint64_t mask = 0; mask < subsets; ++mask) {
      if (mask & bit) continue;
      phi[j] += weight[static_cast<size_t>(std::popcount(mask))] * (value[mask | bit] - value[mask]);
    }
  }
  return phi;
}

InteractionExplanation shap_interactions(const GbtModel& model, const Matrix& rows, int threads) {
  check_rows(model, rows);
  validate_covers(model);

  const size_t n = model.feature_names.size();
  InteractionExplanation inter;
  inter.feature_names = model.feature_names;
  inter.num_features = n;
  inter.base_value = model_base_value(model);
  inter.phi.assign(rows.rows, Matrix(n, n));

  const std::vector<bool> used = features_used(model);
  const size_t scratch_size = path_buffer_size(model);

  parallel_for(rows.rows, threads, [&](size_t r) {
    std::vector<PathElement> scratch(scratch_size);
    const double* x = rows.row(r);

    std::vector<double> phi_plain(n, 0.0);
    explain_row(model, x, scratch.data(), phi_plain.data(), 0, -1);

    // C(i, j) = (phi_i with j forced on - phi_i with j forced off) / 2
    Matrix columns(n, n);
    std::vector<double> phi_on(n), phi_off(n);
    for (size_t j = 0; j < n; ++j) {
      if (!used[j]) continue;  // conditioning on an unused feature is a no-op
      std::fill(phi_on.begin(), phi_on.end(), 0.0);
      std::fill(phi_off.begin(), phi_off.end(), 0.0);
      explain_row(model, x, scratch.data(), phi_on.data(), 1, static_cast<int>(j));
      explain_row(model, x, scratch.data(), phi_off.data(), -1, static_cast<int>(j));
      for (size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        columns.at(i, j) = (phi_on[i] - phi_off[i]) / 2.0;
      }
    }

    Matrix& out = inter.phi[r];
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        const double sym = (columns.at(i, j) + columns.at(j, i)) / 2.0;
        out.at(i, j) = sym;
        out.at(j, i) = sym;
      }
    }
    for (size_t j = 0; j < n; ++j) {
      double off_diag = 0.0;
      for (size_t k = 0; k < n; ++k) {
        if (k != j) off_diag += out.at(j, k);
      }
      out.at(j, j) = phi_plain[j] - off_diag;
    }
  });
  return inter;
}

ImportanceReport feature_importance(const Explanation& expl) {
  if (expl.phi.rows == 0) fail(ErrorKind::kBadInput, "importance needs at least one sample");
  ImportanceReport report;
  const size_t n = expl.feature_names.size();
  std::vector<double> mean_abs(n, 0.0);
  for (size_t r = 0; r < expl.phi.rows; ++r) {
    for (size_t c = 0; c < n; ++c) mean_abs[c] += std::abs(expl.phi.at(r, c));
  }
  double top = 0.0;
  for (size_t c = 0; c < n; ++c) {
    mean_abs[c] /= static_cast<double>(expl.phi.rows);
    top = std::max(top, mean_abs[c]);
  }
  report.degenerate = top == 0.0;
  for (size_t c = 0; c < n; ++c) {
    FeatureImportance fi;
    fi.name = expl.feature_names[c];
    fi.mean_abs_phi = mean_abs[c];
    fi.score = report.degenerate ? 0.0 : mean_abs[c] / top;
    report.features.push_back(fi);
  }
  std::sort(report.features.begin(), report.features.end(),
            [](const FeatureImportance& a, const FeatureImportance& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.name < b.name;
            });
  return report;
}

namespace {

size_t feature_index_of(const std::vector<std::string>& names, const std::string& feature) {
  const auto it = std::find(names.begin(), names.end(), feature);
  if (it == names.end()) fail(ErrorKind::kMissingColumn, "unknown feature '" + feature + "'");
  return static_cast<size_t>(it - names.begin());
}

}  // namespace

DependencyData dependency(const Explanation& expl, const Matrix& rows, const std::string& feature,
                          bool flip_sign) {
  if (rows.rows != expl.phi.rows) fail(ErrorKind::kBadInput, "rows/explanation size mismatch");
  const size_t j = feature_index_of(expl.feature_names, feature);
  DependencyData dep;
  dep.feature = feature;
  dep.flipped = flip_sign;
  dep.x.resize(rows.rows);
  dep.phi.resize(rows.rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    dep.x[r] = flip_sign ? -rows.at(r, j) : rows.at(r, j);
    dep.phi[r] = expl.phi.at(r, j);
  }
  return dep;
}

DependencyData dependency(const InteractionExplanation& inter, const Matrix& rows,
                          const std::string& feature, bool flip_sign,
                          const std::string& interacting) {
  if (rows.rows != inter.phi.size()) fail(ErrorKind::kBadInput, "rows/explanation size mismatch");
  const size_t j = feature_index_of(inter.feature_names, feature);
  const size_t k = feature_index_of(inter.feature_names, interacting);
  DependencyData dep;
  dep.feature = feature;
  dep.flipped = flip_sign;
  dep.interacting = interacting;
  dep.x.resize(rows.rows);
  dep.phi.resize(rows.rows);
  dep.x_interacting.resize(rows.rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    dep.x[r] = flip_sign ? -rows.at(r, j) : rows.at(r, j);
    dep.phi[r] = inter.phi[r].at(j, k);
    dep.x_interacting[r] = rows.at(r, k);
  }
  return dep;
}

DependencyData main_effect_dependency(const InteractionExplanation& inter, const Matrix& rows,
                                      const std::string& feature, bool flip_sign) {
  if (rows.rows != inter.phi.size()) fail(ErrorKind::kBadInput, "rows/explanation size mismatch");
  const size_t j = feature_index_of(inter.feature_names, feature);
  DependencyData dep;
  dep.feature = feature;
  dep.flipped = flip_sign;
  dep.x.resize(rows.rows);
  dep.phi.resize(rows.rows);
  for (size_t r = 0; r < rows.rows; ++r) {
    dep.x[r] = flip_sign ? -rows.at(r, j) : rows.at(r, j);
    dep.phi[r] = inter.phi[r].at(j, j);
  }
  return dep;
}

LinearFit linear_slope(const DependencyData& dep) {
  const size_t n = dep.x.size();
  if (n < 2) fail(ErrorKind::kBadInput, "linear fit needs at least 2 points");
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += dep.x[i];
    mean_y += dep.phi[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = dep.x[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (dep.phi[i] - mean_y);
  }
  if (sxx <= 0.0) fail(ErrorKind::kBadInput, "linear fit needs at least 2 distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  return fit;
}

ThresholdScan threshold_scan(const DependencyData& dep, size_t window) {
  const size_t n = dep.x.size();
  if (window < 1) fail(ErrorKind::kBadConfig, "threshold window must be >= 1");
  if (n < 2 * window) {
    fail(ErrorKind::kBadInput, "threshold scan needs at least " + std::to_string(2 * window) +
                                   " points, got " + std::to_string(n));
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (dep.x[a] != dep.x[b]) return dep.x[a] < dep.x[b];
    return a < b;
  });

  std::vector<double> prefix(n + 1, 0.0);
  double max_abs_phi = 0.0;
  for (size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + dep.phi[order[i]];
    max_abs_phi = std::max(max_abs_phi, std::abs(dep.phi[order[i]]));
  }

  ThresholdScan scan;
  bool first = true;
  for (size_t i = window; i + window <= n; ++i) {
    const double below = prefix[i] / static_cast<double>(i);
    const double above = (prefix[n] - prefix[i]) / static_cast<double>(n - i);
    const double gap = std::abs(above - below);
    if (first || gap > scan.gap) {
      first = false;
      scan.gap = gap;
      scan.threshold = dep.x[order[i]];  // first x of the upper group
    }
  }
  scan.significant = scan.gap > 1e-12 * std::max(1.0, max_abs_phi);
  return scan;
}

}  // namespace priceshap
