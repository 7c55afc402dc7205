/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/testbed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "priceshap/csv.hpp"
#include "priceshap/error.hpp"
#include "priceshap/ingest.hpp"
#include "priceshap/rng.hpp"

namespace priceshap {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr size_t kMinHours = 24 * 7 * 8;  // enough weeks to split

void validate_spec(const SyntheticSpec& spec) {
  if (spec.hours < kMinHours) {
    fail(ErrorKind::kBadConfig,
         "synthetic spec needs at least " + std::to_string(kMinHours) + " hours");
  }
  if (spec.noise_sigma < 0.0) fail(ErrorKind::kBadConfig, "noise_sigma must be >= 0");
}

}  // namespace

SyntheticSpec noiseless_cubic_spec(size_t hours, uint64_t seed) {
  SyntheticSpec spec;
  spec.hours = hours;
  spec.seed = seed;
  spec.load_coeff = 1.0;
  spec.wind_coeff = 1.0;
  spec.solar_coeff = 1.0;
  spec.gas_interaction = 0.0;
  spec.oil_step = 0.0;
  spec.noise_sigma = 0.0;
  return spec;
}

Schema default_synthetic_schema() {
  Schema schema;
  schema.push_back({"load", FeatureRole::kPowerSystem, "GW", {}, Resolution::kHourly, true});
  schema.push_back({"wind", FeatureRole::kPowerSystem, "GW",
                    {"wind_onshore", "wind_offshore"}, Resolution::kHourly, true});
  schema.push_back({"solar", FeatureRole::kPowerSystem, "GW", {}, Resolution::kHourly, true});
  schema.push_back({"oil", FeatureRole::kFuel, "USD/bbl", {}, Resolution::kDaily, false});
  schema.push_back({"gas", FeatureRole::kFuel, "USD/mmBTu", {}, Resolution::kDaily, false});
  schema.push_back({"price", FeatureRole::kTarget, "EUR/MWh", {}, Resolution::kHourly, false});
  return schema;
}

RawTable generate_raw(const SyntheticSpec& spec) {
  validate_spec(spec);

  SplitMix64 seeder(spec.seed);
  Xoshiro256StarStar rng_load(seeder.next());
  Xoshiro256StarStar rng_wind_on(seeder.next());
  Xoshiro256StarStar rng_wind_off(seeder.next());
  Xoshiro256StarStar rng_oil(seeder.next());
  Xoshiro256StarStar rng_gas(seeder.next());
  Xoshiro256StarStar rng_noise(seeder.next());

  const EpochHour start = days_from_civil(2017, 1, 2) * 24;  // a Monday
  const size_t hours = spec.hours;

  std::vector<double> load(hours), wind_on(hours), wind_off(hours), solar(hours);
  double ar_load = 0.0, ar_on = 0.0, ar_off = 0.0;
  for (size_t t = 0; t < hours; ++t) {
    const EpochHour ts = start + static_cast<EpochHour>(t);
    const CivilDateTime dt = civil_from_hour(ts);
    const int hour = dt.hour;
    const int doy = static_cast<int>(ts / 24 - days_from_civil(dt.year, 1, 1)) + 1;
    const int weekday = iso_weekday(ts / 24);

    ar_load = 0.8 * ar_load + rng_load.normal(0.0, 0.75);
    const double weekend = weekday >= 6 ? -5.0 : 0.0;
    load[t] = 46.0 + 8.0 * std::sin(kTwoPi * (hour - 9) / 24.0) + weekend +
              3.0 * std::cos(kTwoPi * doy / 365.25) + ar_load;

    ar_on = 0.97 * ar_on + rng_wind_on.normal(0.0, 0.9);
    wind_on[t] = std::clamp(8.0 + ar_on, 0.0, 24.0);
    ar_off = 0.97 * ar_off + rng_wind_off.normal(0.0, 0.35);
    wind_off[t] = std::clamp(3.0 + ar_off, 0.0, 9.0);

    const double amp = 12.0 * (1.0 + 0.45 * std::cos(kTwoPi * (doy - 172) / 365.25));
    const double diurnal = std::sin(3.14159265358979323846 * (hour - 6) / 12.0);
    solar[t] = hour >= 6 && hour <= 18 ? std::max(0.0, amp * diurnal) : 0.0;
  }

  // Mean-reverting daily fuel anchors.
  const size_t days = (hours + 23) / 24;
  std::vector<double> oil_anchor(days), gas_anchor(days);
  double oil = 62.0, gas = 2.6;
  for (size_t d = 0; d < days; ++d) {
    oil_anchor[d] = oil;
    gas_anchor[d] = gas;
    oil = std::clamp(oil + 0.04 * (65.0 - oil) + rng_oil.normal(0.0, 1.1), 40.0, 95.0);
    gas = std::clamp(gas + 0.05 * (2.7 - gas) + rng_gas.normal(0.0, 0.09), 1.5, 4.5);
  }

  RawTable table;
  table.column_names = {"load", "wind_onshore", "wind_offshore", "solar", "oil", "gas", "price"};
  table.column_units = {{"load", "GW"},         {"wind_onshore", "GW"}, {"wind_offshore", "GW"},
                        {"solar", "GW"},        {"oil", "USD/bbl"},     {"gas", "USD/mmBTu"},
                        {"price", "EUR/MWh"}};
  table.timestamps.resize(hours);
  table.values.assign(hours * table.cols(), kMissing);
  for (size_t t = 0; t < hours; ++t) {
    const EpochHour ts = start + static_cast<EpochHour>(t);
    table.timestamps[t] = ts;
    table.at(t, 0) = load[t];
    table.at(t, 1) = wind_on[t];
    table.at(t, 2) = wind_off[t];
    table.at(t, 3) = solar[t];
    if (ts % 24 == 0) {
      table.at(t, 4) = oil_anchor[static_cast<size_t>(t / 24)];
      table.at(t, 5) = gas_anchor[static_cast<size_t>(t / 24)];
    }
  }

  // Hourly fuels through the same interpolation the ingest pipeline applies,
  // so the price is consistent with what a model will see.
  RawTable hourly = interpolate_daily(interpolate_daily(table, "oil"), "gas");
  for (size_t t = 0; t < hours; ++t) {
    const double wind_total = wind_on[t] + wind_off[t];
    const double x =
        spec.load_coeff * load[t] - spec.wind_coeff * wind_total - spec.solar_coeff * solar[t];
    const auto& c = spec.cubic;
    double price = ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
    price += spec.gas_interaction * (hourly.at(t, 5) - spec.gas_ref) *
             std::max(0.0, load[t] - spec.load_high);
    if (hourly.at(t, 4) > spec.oil_threshold) price += spec.oil_step;
    if (spec.noise_sigma > 0.0) price += rng_noise.normal(0.0, spec.noise_sigma);
    table.at(t, 6) = price;
  }
  return table;
}

TimeSeriesFrame generate(const SyntheticSpec& spec) {
  TimeSeriesFrame frame = ingest_raw(generate_raw(spec), default_synthetic_schema());
  frame.metadata["generator"] = synthetic_spec_to_json(spec);
  return frame;
}

std::string raw_to_csv(const RawTable& table) {
  std::ostringstream out;
  out << "timestamp";
  for (const auto& name : table.column_names) out << ',' << name;
  out << '\n';
  for (size_t r = 0; r < table.rows(); ++r) {
    out << format_timestamp(table.timestamps[r]);
    for (size_t c = 0; c < table.cols(); ++c) {
      out << ',';
      if (!is_missing(table.at(r, c))) out << format_double(table.at(r, c));
    }
    out << '\n';
  }
  return out.str();
}

std::string synthetic_spec_to_json(const SyntheticSpec& spec) {
  json obj;
  obj["hours"] = spec.hours;
  obj["seed"] = spec.seed;
  obj["load_coeff"] = spec.load_coeff;
  obj["wind_coeff"] = spec.wind_coeff;
  obj["solar_coeff"] = spec.solar_coeff;
  obj["cubic"] = spec.cubic;
  obj["gas_interaction"] = spec.gas_interaction;
  obj["gas_ref"] = spec.gas_ref;
  obj["load_high"] = spec.load_high;
  obj["oil_step"] = spec.oil_step;
  obj["oil_threshold"] = spec.oil_threshold;
  obj["noise_sigma"] = spec.noise_sigma;
  return obj.dump(2) + "\n";
}

SyntheticSpec synthetic_spec_from_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kBadConfig, std::string("synthetic spec parse error: ") + e.what());
  }
  SyntheticSpec spec;
  spec.hours = obj.value("hours", spec.hours);
  spec.seed = obj.value("seed", spec.seed);
  spec.load_coeff = obj.value("load_coeff", spec.load_coeff);
  spec.wind_coeff = obj.value("wind_coeff", spec.wind_coeff);
  spec.solar_coeff = obj.value("solar_coeff", spec.solar_coeff);
  if (obj.contains("cubic")) {
    const auto c = obj["cubic"].get<std::vector<double>>();
    if (c.size() != 4) fail(ErrorKind::kBadConfig, "cubic must have 4 coefficients");
    std::copy(c.begin(), c.end(), spec.cubic.begin());
  }
  spec.gas_interaction = obj.value("gas_interaction", spec.gas_interaction);
  spec.gas_ref = obj.value("gas_ref", spec.gas_ref);
  spec.load_high = obj.value("load_high", spec.load_high);
  spec.oil_step = obj.value("oil_step", spec.oil_step);
  spec.oil_threshold = obj.value("oil_threshold", spec.oil_threshold);
  spec.noise_sigma = obj.value("noise_sigma", spec.noise_sigma);
  validate_spec(spec);
  return spec;
}

}  // namespace priceshap
