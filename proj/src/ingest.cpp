/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/ingest.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "priceshap/csv.hpp"
#include "priceshap/error.hpp"

namespace priceshap {

namespace {

// Raw input columns demanded by a schema: aggregate sources for aggregates,
// the named column otherwise.
std::vector<std::string> required_raw_columns(const Schema& schema) {
  std::vector<std::string> cols;
  std::set<std::string> seen;
  auto add = [&](const std::string& name) {
    if (seen.insert(name).second) cols.push_back(name);
  };
  for (const auto& spec : schema) {
    if (!spec.aggregate_of.empty()) {
      for (const auto& src : spec.aggregate_of) add(src);
    } else {
      add(spec.name);
    }
  }
  return cols;
}

std::string unit_for_raw_column(const Schema& schema, const std::string& name) {
  for (const auto& spec : schema) {
    if (spec.name == name) return spec.unit;
    for (const auto& src : spec.aggregate_of) {
      if (src == name) return spec.unit;
    }
  }
  return "";
}

}  // namespace

RawTable raw_from_csv_text(const std::string& content, const Schema& schema,
                           const std::string& origin) {
  validate_schema(schema);
  const auto lines = csv_lines(content);
  if (lines.empty()) fail(ErrorKind::kEmptyDataset, "'" + origin + "' is empty");

  const auto header = split_csv_line(lines[0]);
  const auto ts_it = std::find(header.begin(), header.end(), "timestamp");
  if (ts_it == header.end()) {
    fail(ErrorKind::kMissingColumn, "'" + origin + "' lacks the 'timestamp' column");
  }
  const size_t ts_field = static_cast<size_t>(ts_it - header.begin());

  RawTable table;
  std::vector<size_t> field_of_column;
  for (const auto& name : required_raw_columns(schema)) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      fail(ErrorKind::kMissingColumn, "'" + origin + "' lacks required column '" + name + "'");
    }
    field_of_column.push_back(static_cast<size_t>(it - header.begin()));
    table.column_names.push_back(name);
    table.column_units[name] = unit_for_raw_column(schema, name);
  }

  struct Row {
    EpochHour ts;
    std::vector<double> vals;
  };
  std::vector<Row> rows;
  rows.reserve(lines.size() - 1);
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != header.size()) {
      fail(ErrorKind::kBadInput, "'" + origin + "' row " + std::to_string(i) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
    }
    Row row;
    row.ts = parse_timestamp(fields[ts_field]);
    row.vals.resize(table.cols());
    for (size_t c = 0; c < table.cols(); ++c) {
      double v;
      row.vals[c] = parse_double(fields[field_of_column[c]], &v) ? v : kMissing;
    }
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.ts < b.ts; });
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ts == rows[i - 1].ts) {
      fail(ErrorKind::kDuplicateTimestamp,
           "'" + origin + "' has two rows at " + format_timestamp(rows[i].ts));
    }
  }

  table.timestamps.reserve(rows.size());
  table.values.reserve(rows.size() * table.cols());
  for (const auto& row : rows) {
    table.timestamps.push_back(row.ts);
    table.values.insert(table.values.end(), row.vals.begin(), row.vals.end());
  }
  return table;
}

RawTable load_csv(const std::string& path, const Schema& schema) {
  return raw_from_csv_text(read_file(path), schema, path);
}

RawTable join_series(const std::vector<RawTable>& segments) {
  if (segments.empty()) fail(ErrorKind::kEmptyDataset, "join_series got no segments");
  const auto& columns = segments[0].column_names;
  for (const auto& seg : segments) {
    if (seg.column_names != columns) {
      fail(ErrorKind::kBadInput, "join_series segments have differing column sets");
    }
  }

  struct Row {
    EpochHour ts;
    const RawTable* seg;
    size_t idx;
  };
  std::vector<Row> rows;
  for (const auto& seg : segments) {
    for (size_t r = 0; r < seg.rows(); ++r) rows.push_back({seg.timestamps[r], &seg, r});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.ts < b.ts; });
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].ts == rows[i - 1].ts) {
      fail(ErrorKind::kOverlapDetected,
           "segments overlap at " + format_timestamp(rows[i].ts));
    }
  }

  RawTable out;
  out.column_names = columns;
  out.column_units = segments[0].column_units;
  out.timestamps.reserve(rows.size());
  out.values.reserve(rows.size() * columns.size());
  for (const auto& row : rows) {
    out.timestamps.push_back(row.ts);
    for (size_t c = 0; c < columns.size(); ++c) out.values.push_back(row.seg->at(row.idx, c));
  }
  return out;
}

RawTable aggregate_columns(const RawTable& table, const FeatureSpec& spec) {
  if (spec.aggregate_of.empty()) {
    fail(ErrorKind::kBadConfig, "'" + spec.name + "' has no aggregate_of sources");
  }
  std::vector<size_t> src_cols;
  for (const auto& src : spec.aggregate_of) {
    const int idx = table.column_index(src);
    if (idx < 0) fail(ErrorKind::kMissingColumn, "aggregate source '" + src + "' not in table");
    src_cols.push_back(static_cast<size_t>(idx));
  }

  RawTable out = table;
  out.column_names.push_back(spec.name);
  out.column_units[spec.name] = spec.unit;
  std::vector<double> values;
  values.reserve(table.rows() * out.cols());
  for (size_t r = 0; r < table.rows(); ++r) {
    for (size_t c = 0; c < table.cols(); ++c) values.push_back(table.at(r, c));
    double sum = 0.0;
    for (size_t c : src_cols) sum += table.at(r, c);  // NaN propagates
    values.push_back(sum);
  }
  out.values = std::move(values);
  return out;
}

RawTable interpolate_daily(const RawTable& table, const std::string& column) {
  const int idx = table.column_index(column);
  if (idx < 0) fail(ErrorKind::kMissingColumn, "column '" + column + "' not in table");
  const size_t col = static_cast<size_t>(idx);

  struct Anchor {
    EpochHour ts;
    double value;
  };
  std::vector<Anchor> anchors;
  for (size_t r = 0; r < table.rows(); ++r) {
    const double v = table.at(r, col);
    if (table.timestamps[r] % 24 == 0 && !is_missing(v)) {
      anchors.push_back({table.timestamps[r], v});
    }
  }
  if (anchors.size() < 2) {
    fail(ErrorKind::kBadInput, "column '" + column + "' has fewer than two daily anchors");
  }

  RawTable out = table;
  size_t seg = 0;
  for (size_t r = 0; r < out.rows(); ++r) {
    const EpochHour ts = out.timestamps[r];
    double v;
    if (ts <= anchors.front().ts) {
      v = anchors.front().value;
    } else if (ts >= anchors.back().ts) {
      v = anchors.back().value;
    } else {
      while (anchors[seg + 1].ts < ts) ++seg;
      const Anchor& a = anchors[seg];
      const Anchor& b = anchors[seg + 1];
      const double frac = static_cast<double>(ts - a.ts) / static_cast<double>(b.ts - a.ts);
      v = a.value + (b.value - a.value) * frac;
    }
    out.at(r, col) = v;
  }
  return out;
}

RawTable compute_ramps(const RawTable& table, const std::vector<std::string>& columns) {
  std::vector<size_t> src_cols;
  for (const auto& name : columns) {
    const int idx = table.column_index(name);
    if (idx < 0) fail(ErrorKind::kMissingColumn, "column '" + name + "' not in table");
    src_cols.push_back(static_cast<size_t>(idx));
  }

  RawTable out = table;
  for (size_t k = 0; k < columns.size(); ++k) {
    out.column_names.push_back(columns[k] + "_ramp");
    out.column_units[columns[k] + "_ramp"] = table.column_units.count(columns[k])
                                                 ? table.column_units.at(columns[k])
                                                 : "";
  }

  const size_t old_cols = table.cols();
  const size_t new_cols = out.cols();
  std::vector<double> values(table.rows() * new_cols, kMissing);
  for (size_t r = 0; r < table.rows(); ++r) {
    for (size_t c = 0; c < old_cols; ++c) values[r * new_cols + c] = table.at(r, c);
    const bool has_prev_hour = r > 0 && table.timestamps[r - 1] == table.timestamps[r] - 1;
    for (size_t k = 0; k < src_cols.size(); ++k) {
      double ramp = kMissing;
      if (has_prev_hour) {
        ramp = table.at(r, src_cols[k]) - table.at(r - 1, src_cols[k]);  // NaN propagates
      }
      values[r * new_cols + old_cols + k] = ramp;
    }
  }
  out.values = std::move(values);
  return out;
}

TimeSeriesFrame finalize(const RawTable& table, const Schema& schema, IngestReport* report) {
  validate_schema(schema);
  const auto columns = frame_columns_for(schema);
  std::vector<size_t> src_cols;
  for (const auto& col : columns) {
    const int idx = table.column_index(col.name);
    if (idx < 0) fail(ErrorKind::kMissingColumn, "column '" + col.name + "' not in table");
    src_cols.push_back(static_cast<size_t>(idx));
  }

  TimeSeriesFrame frame;
  frame.columns = columns;
  for (const auto& spec : schema) {
    if (spec.role == FeatureRole::kTarget) frame.target_name = spec.name;
  }

  std::vector<size_t> missing_per_col(columns.size(), 0);
  for (size_t r = 0; r < table.rows(); ++r) {
    bool keep = true;
    for (size_t c = 0; c < src_cols.size(); ++c) {
      if (is_missing(table.at(r, src_cols[c]))) {
        ++missing_per_col[c];
        keep = false;
      }
    }
    if (!keep) continue;
    frame.timestamps.push_back(table.timestamps[r]);
    for (size_t c : src_cols) frame.values.push_back(table.at(r, c));
  }
  if (frame.rows() == 0) {
    fail(ErrorKind::kEmptyDataset, "no rows survive the missing-value drop");
  }

  if (report != nullptr) {
    report->rows_in = table.rows();
    report->rows_out = frame.rows();
    report->rows_dropped = table.rows() - frame.rows();
    report->columns.clear();
    for (size_t c = 0; c < columns.size(); ++c) {
      ColumnStats stats;
      stats.name = columns[c].name;
      stats.unit = columns[c].unit;
      stats.role = columns[c].role;
      stats.missing_before_drop = missing_per_col[c];
      double lo = frame.at(0, c), hi = frame.at(0, c), sum = 0.0;
      for (size_t r = 0; r < frame.rows(); ++r) {
        const double v = frame.at(r, c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
      }
      stats.min = lo;
      stats.max = hi;
      stats.mean = sum / static_cast<double>(frame.rows());
      report->columns.push_back(stats);
    }
  }
  return frame;
}

TimeSeriesFrame ingest_raw(RawTable table, const Schema& schema, IngestReport* report) {
  for (const auto& spec : schema) {
    if (!spec.aggregate_of.empty()) table = aggregate_columns(table, spec);
  }
  for (const auto& spec : schema) {
    if (spec.resolution == Resolution::kDaily) table = interpolate_daily(table, spec.name);
  }
  std::vector<std::string> ramp_columns;
  for (const auto& spec : schema) {
    if (spec.make_ramp) ramp_columns.push_back(spec.name);
  }
  if (!ramp_columns.empty()) table = compute_ramps(table, ramp_columns);
  return finalize(table, schema, report);
}

TimeSeriesFrame run_ingest(const std::vector<std::string>& csv_paths, const Schema& schema,
                           IngestReport* report) {
  if (csv_paths.empty()) fail(ErrorKind::kBadConfig, "no input CSV files given");
  std::vector<RawTable> segments;
  segments.reserve(csv_paths.size());
  for (const auto& path : csv_paths) segments.push_back(load_csv(path, schema));
  RawTable joined = segments.size() == 1 ? std::move(segments[0]) : join_series(segments);
  return ingest_raw(std::move(joined), schema, report);
}

}  // namespace priceshap
