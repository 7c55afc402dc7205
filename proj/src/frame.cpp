/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/frame.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "priceshap/csv.hpp"
#include "priceshap/error.hpp"

namespace priceshap {

using nlohmann::json;

std::string role_name(FeatureRole role) {
  switch (role) {
    case FeatureRole::kPowerSystem: return "power-system";
    case FeatureRole::kFuel: return "fuel";
    case FeatureRole::kTarget: return "target";
  }
  return "power-system";
}

FeatureRole role_from_name(const std::string& name) {
  if (name == "power-system") return FeatureRole::kPowerSystem;
  if (name == "fuel") return FeatureRole::kFuel;
  if (name == "target") return FeatureRole::kTarget;
  fail(ErrorKind::kBadConfig, "unknown feature role '" + name + "'");
}

void validate_schema(const Schema& schema) {
  if (schema.empty()) fail(ErrorKind::kBadConfig, "schema is empty");
  std::set<std::string> names;
  int targets = 0;
  for (const auto& spec : schema) {
    if (spec.name.empty()) fail(ErrorKind::kBadConfig, "schema entry without a name");
    if (!names.insert(spec.name).second) {
      fail(ErrorKind::kBadConfig, "duplicate schema column '" + spec.name + "'");
    }
    if (spec.role == FeatureRole::kTarget) {
      ++targets;
      if (spec.make_ramp) fail(ErrorKind::kBadConfig, "target column cannot have a ramp");
    }
    if (spec.resolution == Resolution::kDaily && spec.role != FeatureRole::kFuel) {
      fail(ErrorKind::kBadConfig,
           "daily resolution is only supported for fuel columns ('" + spec.name + "')");
    }
    if (!spec.aggregate_of.empty() && spec.resolution == Resolution::kDaily) {
      fail(ErrorKind::kBadConfig, "aggregate column '" + spec.name + "' cannot be daily");
    }
  }
  if (targets != 1) {
    fail(ErrorKind::kBadConfig,
         "schema must contain exactly one target column, found " + std::to_string(targets));
  }
}

std::string schema_to_json(const Schema& schema) {
  json arr = json::array();
  for (const auto& spec : schema) {
    json obj;
    obj["name"] = spec.name;
    obj["role"] = role_name(spec.role);
    obj["unit"] = spec.unit;
    if (!spec.aggregate_of.empty()) obj["aggregate_of"] = spec.aggregate_of;
    obj["resolution"] = spec.resolution == Resolution::kDaily ? "daily" : "hourly";
    obj["make_ramp"] = spec.make_ramp;
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

Schema schema_from_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kBadConfig, std::string("schema JSON parse error: ") + e.what());
  }
  if (!arr.is_array()) fail(ErrorKind::kBadConfig, "schema JSON must be a list");
  Schema schema;
  for (const auto& obj : arr) {
    FeatureSpec spec;
    spec.name = obj.at("name").get<std::string>();
    spec.role = role_from_name(obj.value("role", std::string("power-system")));
    spec.unit = obj.value("unit", std::string());
    if (obj.contains("aggregate_of")) {
      spec.aggregate_of = obj["aggregate_of"].get<std::vector<std::string>>();
    }
    const std::string res = obj.value("resolution", std::string("hourly"));
    if (res == "daily") {
      spec.resolution = Resolution::kDaily;
    } else if (res == "hourly") {
      spec.resolution = Resolution::kHourly;
    } else {
      fail(ErrorKind::kBadConfig, "unknown resolution '" + res + "'");
    }
    spec.make_ramp = obj.value("make_ramp", false);
    schema.push_back(std::move(spec));
  }
  validate_schema(schema);
  return schema;
}

Schema load_schema(const std::string& path) { return schema_from_json(read_file(path)); }

int RawTable::column_index(const std::string& name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  return it == column_names.end() ? -1 : static_cast<int>(it - column_names.begin());
}

int TimeSeriesFrame::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

size_t TimeSeriesFrame::target_index() const {
  const int idx = column_index(target_name);
  if (idx < 0) fail(ErrorKind::kMissingColumn, "target column '" + target_name + "' not in frame");
  return static_cast<size_t>(idx);
}

std::vector<std::string> TimeSeriesFrame::feature_names() const {
  std::vector<std::string> names;
  for (const auto& col : columns) {
    if (col.name != target_name) names.push_back(col.name);
  }
  return names;
}

Matrix TimeSeriesFrame::feature_matrix() const {
  std::vector<size_t> all(rows());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return feature_matrix(all);
}

Matrix TimeSeriesFrame::feature_matrix(const std::vector<size_t>& row_ids) const {
  const size_t target = target_index();
  Matrix m(row_ids.size(), cols() - 1);
  for (size_t r = 0; r < row_ids.size(); ++r) {
    size_t out = 0;
    for (size_t c = 0; c < cols(); ++c) {
      if (c == target) continue;
      m.at(r, out++) = at(row_ids[r], c);
    }
  }
  return m;
}

std::vector<double> TimeSeriesFrame::target() const {
  std::vector<size_t> all(rows());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return target(all);
}

std::vector<double> TimeSeriesFrame::target(const std::vector<size_t>& row_ids) const {
  const size_t target_col = target_index();
  std::vector<double> y(row_ids.size());
  for (size_t i = 0; i < row_ids.size(); ++i) y[i] = at(row_ids[i], target_col);
  return y;
}

std::vector<double> TimeSeriesFrame::column(const std::string& name) const {
  const int idx = column_index(name);
  if (idx < 0) fail(ErrorKind::kMissingColumn, "column '" + name + "' not in frame");
  std::vector<double> v(rows());
  for (size_t r = 0; r < rows(); ++r) v[r] = at(r, static_cast<size_t>(idx));
  return v;
}

std::string frame_to_csv(const TimeSeriesFrame& frame) {
  std::ostringstream out;
  out << "timestamp";
  for (const auto& col : frame.columns) out << ',' << col.name;
  out << '\n';
  for (size_t r = 0; r < frame.rows(); ++r) {
    out << format_timestamp(frame.timestamps[r]);
    for (size_t c = 0; c < frame.cols(); ++c) out << ',' << format_double(frame.at(r, c));
    out << '\n';
  }
  return out.str();
}

void save_frame_csv(const TimeSeriesFrame& frame, const std::string& path) {
  write_file(path, frame_to_csv(frame));
}

std::vector<ColumnInfo> frame_columns_for(const Schema& schema) {
  std::vector<ColumnInfo> columns;
  for (const auto& spec : schema) {
    columns.push_back({spec.name, spec.unit, spec.role});
  }
  for (const auto& spec : schema) {
    if (spec.make_ramp) {
      columns.push_back({spec.name + "_ramp", spec.unit, spec.role});
    }
  }
  return columns;
}

TimeSeriesFrame load_frame_csv(const std::string& path, const Schema& schema) {
  validate_schema(schema);
  const auto lines = csv_lines(read_file(path));
  if (lines.empty()) fail(ErrorKind::kEmptyDataset, "frame CSV '" + path + "' is empty");

  const auto header = split_csv_line(lines[0]);
  if (header.empty() || header[0] != "timestamp") {
    fail(ErrorKind::kBadInput, "frame CSV must start with a 'timestamp' column");
  }

  TimeSeriesFrame frame;
  const auto wanted = frame_columns_for(schema);
  std::vector<size_t> field_of_column;
  for (const auto& col : wanted) {
    const auto it = std::find(header.begin(), header.end(), col.name);
    if (it == header.end()) {
      fail(ErrorKind::kMissingColumn, "frame CSV lacks column '" + col.name + "'");
    }
    field_of_column.push_back(static_cast<size_t>(it - header.begin()));
    frame.columns.push_back(col);
  }
  for (const auto& spec : schema) {
    if (spec.role == FeatureRole::kTarget) frame.target_name = spec.name;
  }

  frame.values.reserve((lines.size() - 1) * frame.cols());
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != header.size()) {
      fail(ErrorKind::kBadInput,
           "frame CSV row " + std::to_string(i) + " has " + std::to_string(fields.size()) +
               " fields, expected " + std::to_string(header.size()));
    }
    const EpochHour ts = parse_timestamp(fields[0]);
    if (!frame.timestamps.empty() && ts <= frame.timestamps.back()) {
      fail(ErrorKind::kBadInput, "frame CSV timestamps not strictly increasing at row " +
                                     std::to_string(i));
    }
    frame.timestamps.push_back(ts);
    for (size_t c = 0; c < frame.cols(); ++c) {
      double v;
      if (!parse_double(fields[field_of_column[c]], &v)) {
        fail(ErrorKind::kBadInput, "frame CSV has a non-numeric cell in column '" +
                                       frame.columns[c].name + "' at row " + std::to_string(i));
      }
      frame.values.push_back(v);
    }
  }
  if (frame.rows() == 0) fail(ErrorKind::kEmptyDataset, "frame CSV '" + path + "' has no rows");
  return frame;
}

}  // namespace priceshap
