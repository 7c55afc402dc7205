/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_CSV_HPP_
#define PRICESHAP_CSV_HPP_

#include <charconv>
#include <cstdlib>
#include <string>
#include <vector>

namespace priceshap {

// Shortest round-trip representation; the backbone of byte-stable outputs.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

// Strict double parse: the whole field must be consumed.
inline bool parse_double(const std::string& field, double* out) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + field.size()) return false;
  *out = v;
  return true;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Splits file content into lines; '#'-prefixed leading lines are provenance
// comments and are skipped.
std::vector<std::string> csv_lines(const std::string& content);

}  // namespace priceshap

#endif  // PRICESHAP_CSV_HPP_
