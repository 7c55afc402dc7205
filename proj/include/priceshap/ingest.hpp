/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_INGEST_HPP_
#define PRICESHAP_INGEST_HPP_

#include <string>
#include <vector>

#include "priceshap/frame.hpp"

namespace priceshap {

// Raw hourly CSV -> RawTable. Required columns are the schema's raw inputs
// (aggregate sources for aggregates, the column itself otherwise) plus
// "timestamp". Extra columns are ignored, unparseable numeric cells become
// missing, duplicate timestamps are fatal. Rows come back sorted by time.
RawTable load_csv(const std::string& path, const Schema& schema);

RawTable raw_from_csv_text(const std::string& content, const Schema& schema,
                           const std::string& origin);

// Concatenates non-overlapping segments with identical column sets into one
// series. Hours covered by no segment stay absent.
RawTable join_series(const std::vector<RawTable>& segments);

// Adds spec.name = elementwise sum of spec.aggregate_of; the sum is missing
// whenever any source is missing. Source columns are retained.
RawTable aggregate_columns(const RawTable& table, const FeatureSpec& spec);

// Linear interpolation of a daily-anchored column (values at 00:00) onto all
// hours of the table. Hours outside the anchor range hold the nearest anchor.
RawTable interpolate_daily(const RawTable& table, const std::string& column);

// Adds "<name>_ramp" = f(t) - f(t-1) per listed column; missing when the
// predecessor hour is absent or either value is missing.
RawTable compute_ramps(const RawTable& table, const std::vector<std::string>& columns);

struct ColumnStats {
  std::string name;
  std::string unit;
  FeatureRole role = FeatureRole::kPowerSystem;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  size_t missing_before_drop = 0;
};

struct IngestReport {
  size_t rows_in = 0;
  size_t rows_out = 0;
  size_t rows_dropped = 0;
  std::vector<ColumnStats> columns;
};

// Drops every row with a missing value in any schema (or ramp) column and
// fixes the column order. Fatal when nothing survives.
TimeSeriesFrame finalize(const RawTable& table, const Schema& schema,
                         IngestReport* report = nullptr);

// load -> join -> aggregate -> interpolate -> ramps -> finalize.
TimeSeriesFrame run_ingest(const std::vector<std::string>& csv_paths, const Schema& schema,
                           IngestReport* report = nullptr);

TimeSeriesFrame ingest_raw(RawTable table, const Schema& schema, IngestReport* report = nullptr);

}  // namespace priceshap

#endif  // PRICESHAP_INGEST_HPP_
