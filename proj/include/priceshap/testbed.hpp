/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_TESTBED_HPP_
#define PRICESHAP_TESTBED_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "priceshap/frame.hpp"

namespace priceshap {

// Synthetic market-like dataset with known ground truth. The price is
//   cubic(load_coeff*L - wind_coeff*W - solar_coeff*S)
//   + gas_interaction * (gas - gas_ref) * max(0, L - load_high)
//   + oil_step * 1[oil > oil_threshold]
//   + Normal(0, noise_sigma)
// so a cubic benchmark over the plain residual load is exact when the
// coefficients are (1,1,1) and the extra terms vanish.
struct SyntheticSpec {
  size_t hours = 17520;  // two years
  uint64_t seed = 20170102;
  double load_coeff = 1.0;
  double wind_coeff = 0.8;
  double solar_coeff = 0.65;
  std::array<double, 4> cubic = {-33.575, 4.46, -0.111, 0.0012};
  double gas_interaction = 2.0;
  double gas_ref = 2.7;
  double load_high = 48.0;
  double oil_step = 7.0;
  double oil_threshold = 69.0;
  double noise_sigma = 4.3;
};

// Spec whose extra terms vanish: price is exactly cubic in the residual load.
SyntheticSpec noiseless_cubic_spec(size_t hours = 17520, uint64_t seed = 20170102);

Schema default_synthetic_schema();

// Raw table in the ingest CSV shape: wind split into on/offshore sources,
// fuels present only at daily 00:00 anchors.
RawTable generate_raw(const SyntheticSpec& spec);

// generate_raw pushed through the regular ingest pipeline; metadata records
// the generator parameters.
TimeSeriesFrame generate(const SyntheticSpec& spec);

// Raw CSV serialization (empty cells for missing values).
std::string raw_to_csv(const RawTable& table);

std::string synthetic_spec_to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const std::string& text);

}  // namespace priceshap

#endif  // PRICESHAP_TESTBED_HPP_
