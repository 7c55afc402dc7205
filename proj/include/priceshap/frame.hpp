/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_FRAME_HPP_
#define PRICESHAP_FRAME_HPP_

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "priceshap/dates.hpp"
#include "priceshap/matrix.hpp"

namespace priceshap {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

enum class FeatureRole { kPowerSystem, kFuel, kTarget };
enum class Resolution { kHourly, kDaily };

std::string role_name(FeatureRole role);
FeatureRole role_from_name(const std::string& name);

// One engineered feature of the final dataset. Aggregates name their raw
// source columns; daily series get interpolated to hourly; make_ramp adds a
// companion "<name>_ramp" column holding the hour-over-hour difference.
struct FeatureSpec {
  std::string name;
  FeatureRole role = FeatureRole::kPowerSystem;
  std::string unit;
  std::vector<std::string> aggregate_of;
  Resolution resolution = Resolution::kHourly;
  bool make_ramp = false;
};

using Schema = std::vector<FeatureSpec>;

// Throws BadConfig unless: exactly one target, unique names, daily resolution
// only on fuel columns, no ramp on the target.
void validate_schema(const Schema& schema);

Schema load_schema(const std::string& path);
std::string schema_to_json(const Schema& schema);
Schema schema_from_json(const std::string& text);

// Raw hourly table straight from CSV: strictly increasing hourly timestamps,
// NaN cells mark missing values.
struct RawTable {
  std::vector<EpochHour> timestamps;
  std::vector<std::string> column_names;
  std::map<std::string, std::string> column_units;
  std::vector<double> values;  // row-major, rows x column_names.size()

  size_t rows() const { return timestamps.size(); }
  size_t cols() const { return column_names.size(); }
  double at(size_t r, size_t c) const { return values[r * cols() + c]; }
  double& at(size_t r, size_t c) { return values[r * cols() + c]; }
  int column_index(const std::string& name) const;
};

struct ColumnInfo {
  std::string name;
  std::string unit;
  FeatureRole role = FeatureRole::kPowerSystem;
};

// Finished modeling dataset: dense, no missing values, fixed column order.
struct TimeSeriesFrame {
  std::vector<EpochHour> timestamps;
  std::vector<ColumnInfo> columns;
  std::vector<double> values;  // row-major
  std::string target_name;
  std::map<std::string, std::string> metadata;

  size_t rows() const { return timestamps.size(); }
  size_t cols() const { return columns.size(); }
  double at(size_t r, size_t c) const { return values[r * cols() + c]; }
  double& at(size_t r, size_t c) { return values[r * cols() + c]; }
  int column_index(const std::string& name) const;
  size_t target_index() const;

  std::vector<std::string> feature_names() const;  // all non-target columns
  Matrix feature_matrix() const;
  Matrix feature_matrix(const std::vector<size_t>& row_ids) const;
  std::vector<double> target() const;
  std::vector<double> target(const std::vector<size_t>& row_ids) const;
  std::vector<double> column(const std::string& name) const;
};

// Frame CSV: header "timestamp,<col>,...", ISO-8601 hours, shortest
// round-trip numbers. Writing then reading is lossless.
std::string frame_to_csv(const TimeSeriesFrame& frame);
void save_frame_csv(const TimeSeriesFrame& frame, const std::string& path);

// Reads a frame produced by frame_to_csv; the schema supplies units, roles
// and the target. Missing cells are not allowed here.
TimeSeriesFrame load_frame_csv(const std::string& path, const Schema& schema);

// Column layout implied by a schema: base columns in schema order, then ramp
// columns in schema order.
std::vector<ColumnInfo> frame_columns_for(const Schema& schema);

}  // namespace priceshap

#endif  // PRICESHAP_FRAME_HPP_
