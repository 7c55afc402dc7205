/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

#include "priceshap/error.hpp"

namespace priceshap {

using nlohmann::json;

std::vector<double> residual_load(const TimeSeriesFrame& frame,
                                  const ResidualLoadColumns& columns) {
  const std::vector<double> load = frame.column(columns.load);
  const std::vector<double> wind = frame.column(columns.wind);
  const std::vector<double> solar = frame.column(columns.solar);
  std::vector<double> residual(frame.rows());
  for (size_t r = 0; r < frame.rows(); ++r) residual[r] = load[r] - wind[r] - solar[r];
  return residual;
}

namespace {

constexpr size_t kTerms = 4;  // cubic

// Householder QR least squares for a tall n x 4 system; returns beta and the
// diagonal-ratio condition estimate of R.
void solve_least_squares(std::vector<double>& a, std::vector<double>& b, size_t rows,
                         std::array<double, kTerms>* beta, double* condition) {
  for (size_t k = 0; k < kTerms; ++k) {
    double norm = 0.0;
    for (size_t i = k; i < rows; ++i) norm += a[i * kTerms + k] * a[i * kTerms + k];
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      fail(ErrorKind::kRankDeficient, "design matrix column " + std::to_string(k) + " is zero");
    }
    if (a[k * kTerms + k] > 0) norm = -norm;

    // Householder vector stored in place of column k below the diagonal.
    const double head = a[k * kTerms + k] - norm;
    a[k * kTerms + k] = head;
    double vtv = 0.0;
    for (size_t i = k; i < rows; ++i) vtv += a[i * kTerms + k] * a[i * kTerms + k];
    if (vtv == 0.0) {
      fail(ErrorKind::kRankDeficient, "degenerate reflector at column " + std::to_string(k));
    }
    for (size_t j = k + 1; j < kTerms; ++j) {
      double dot = 0.0;
      for (size_t i = k; i < rows; ++i) dot += a[i * kTerms + k] * a[i * kTerms + j];
      const double factor = 2.0 * dot / vtv;
      for (size_t i = k; i < rows; ++i) a[i * kTerms + j] -= factor * a[i * kTerms + k];
    }
    double dot_b = 0.0;
    for (size_t i = k; i < rows; ++i) dot_b += a[i * kTerms + k] * b[i];
    const double factor_b = 2.0 * dot_b / vtv;
    for (size_t i = k; i < rows; ++i) b[i] -= factor_b * a[i * kTerms + k];
    a[k * kTerms + k] = norm;  // diagonal of R
  }

  double diag_max = 0.0, diag_min = 0.0;
  for (size_t k = 0; k < kTerms; ++k) {
    const double d = std::abs(a[k * kTerms + k]);
    diag_max = std::max(diag_max, d);
    diag_min = k == 0 ? d : std::min(diag_min, d);
  }
  *condition = diag_min > 0.0 ? diag_max / diag_min : std::numeric_limits<double>::infinity();
  if (diag_min <= 1e-12 * diag_max) {
    fail(ErrorKind::kRankDeficient,
         "rank-deficient cubic fit, condition estimate " + std::to_string(*condition));
  }

  for (int k = kTerms - 1; k >= 0; --k) {
    double sum = b[static_cast<size_t>(k)];
    for (size_t j = static_cast<size_t>(k) + 1; j < kTerms; ++j) {
      sum -= a[static_cast<size_t>(k) * kTerms + j] * (*beta)[j];
    }
    (*beta)[static_cast<size_t>(k)] = sum / a[static_cast<size_t>(k) * kTerms + k];
  }
}

}  // namespace

BenchmarkModel fit_benchmark(const std::vector<double>& residual,
                             const std::vector<double>& price) {
  if (residual.size() != price.size()) {
    fail(ErrorKind::kBadInput, "residual/price length mismatch");
  }
  const size_t n = residual.size();
  std::set<double> distinct(residual.begin(), residual.end());
  if (distinct.size() < kTerms) {
    fail(ErrorKind::kBadInput, "cubic fit needs at least 4 distinct residual values");
  }

  BenchmarkModel model;
  double mean = 0.0;
  for (double r : residual) mean += r;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double r : residual) var += (r - mean) * (r - mean);
  var /= static_cast<double>(n);
  model.input_mean = mean;
  model.input_scale = std::sqrt(var);

  std::vector<double> a(n * kTerms);
  std::vector<double> b(price);
  for (size_t i = 0; i < n; ++i) {
    const double u = (residual[i] - model.input_mean) / model.input_scale;
    double p = 1.0;
    for (size_t k = 0; k < kTerms; ++k) {
      a[i * kTerms + k] = p;
      p *= u;
    }
  }
  std::array<double, kTerms> beta{};
  solve_least_squares(a, b, n, &beta, &model.condition_estimate);

  // De-standardize: sum_k beta_k ((r - m)/s)^k expanded into powers of r.
  const double m = model.input_mean;
  const double s = model.input_scale;
  std::array<double, kTerms> c{};
  std::array<std::array<double, kTerms>, kTerms> binom{};
  for (size_t k = 0; k < kTerms; ++k) {
    binom[k][0] = 1.0;
    for (size_t j = 1; j <= k; ++j) {
      binom[k][j] = binom[k - 1][j - 1] + (j <= k - 1 ? binom[k - 1][j] : 0.0);
    }
  }
  for (size_t k = 0; k < kTerms; ++k) {
    const double scale_k = beta[k] / std::pow(s, static_cast<double>(k));
    for (size_t j = 0; j <= k; ++j) {
      c[j] += scale_k * binom[k][j] * std::pow(-m, static_cast<double>(k - j));
    }
  }
  model.coefficients = c;

  const std::vector<double> fitted = predict_benchmark(model, residual);
  double ss_tot = 0.0, ss_res = 0.0, price_mean = 0.0;
  for (double p : price) price_mean += p;
  price_mean /= static_cast<double>(n);
  for (size_t i = 0; i < n; ++i) {
    ss_tot += (price[i] - price_mean) * (price[i] - price_mean);
    ss_res += (price[i] - fitted[i]) * (price[i] - fitted[i]);
  }
  model.train_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return model;
}

std::vector<double> predict_benchmark(const BenchmarkModel& model,
                                      const std::vector<double>& residual) {
  const auto& c = model.coefficients;
  std::vector<double> out(residual.size());
  for (size_t i = 0; i < residual.size(); ++i) {
    const double r = residual[i];
    out[i] = ((c[3] * r + c[2]) * r + c[1]) * r + c[0];
  }
  return out;
}

std::string benchmark_to_json(const BenchmarkModel& model) {
  json obj;
  obj["format"] = "priceshap-benchmark-1";
  obj["coefficients"] = model.coefficients;
  obj["input_mean"] = model.input_mean;
  obj["input_scale"] = model.input_scale;
  obj["condition_estimate"] = model.condition_estimate;
  obj["train_r2"] = model.train_r2;
  return obj.dump(2) + "\n";
}

BenchmarkModel benchmark_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kBadInput, std::string("benchmark JSON parse error: ") + e.what());
  }
  if (obj.value("format", std::string()) != "priceshap-benchmark-1") {
    fail(ErrorKind::kBadInput, "unknown benchmark format");
  }
  BenchmarkModel model;
  const auto c = obj.at("coefficients").get<std::vector<double>>();
  if (c.size() != 4) fail(ErrorKind::kBadInput, "benchmark must have 4 coefficients");
  std::copy(c.begin(), c.end(), model.coefficients.begin());
  model.input_mean = obj.value("input_mean", 0.0);
  model.input_scale = obj.value("input_scale", 1.0);
  model.condition_estimate = obj.value("condition_estimate", 0.0);
  model.train_r2 = obj.value("train_r2", 0.0);
  return model;
}

}  // namespace priceshap
