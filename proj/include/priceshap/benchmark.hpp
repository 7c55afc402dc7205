/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_BENCHMARK_HPP_
#define PRICESHAP_BENCHMARK_HPP_

#include <array>
#include <string>
#include <vector>

#include "priceshap/frame.hpp"

namespace priceshap {

struct ResidualLoadColumns {
  std::string load = "load";
  std::string wind = "wind";
  std::string solar = "solar";
};

// Cubic price model in the residual load, fitted least-squares on
// standardized inputs via Householder QR and mapped back to raw units.
struct BenchmarkModel {
  std::array<double, 4> coefficients{};  // c0 + c1 r + c2 r^2 + c3 r^3, raw units
  double input_mean = 0.0;
  double input_scale = 1.0;
  double condition_estimate = 0.0;  // diag-ratio estimate from the QR factor
  double train_r2 = 0.0;
};

// load - wind - solar, elementwise.
std::vector<double> residual_load(const TimeSeriesFrame& frame,
                                  const ResidualLoadColumns& columns = {});

BenchmarkModel fit_benchmark(const std::vector<double>& residual,
                             const std::vector<double>& price);

// Horner evaluation in a fixed order.
std::vector<double> predict_benchmark(const BenchmarkModel& model,
                                      const std::vector<double>& residual);

std::string benchmark_to_json(const BenchmarkModel& model);
BenchmarkModel benchmark_from_json(const std::string& text);

}  // namespace priceshap

#endif  // PRICESHAP_BENCHMARK_HPP_
