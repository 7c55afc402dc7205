/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/csv.hpp"

#include <fstream>
#include <sstream>

#include "priceshap/error.hpp"

namespace priceshap {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoError, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::kIoError, "read failure on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIoError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(ErrorKind::kIoError, "write failure on '" + path + "'");
}

std::vector<std::string> csv_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::string cur;
  bool leading = true;
  auto flush = [&]() {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    if (!cur.empty()) {
      if (!(leading && cur[0] == '#')) {
        lines.push_back(cur);
        leading = false;
      }
    }
    cur.clear();
  };
  for (char c : content) {
    if (c == '\n') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return lines;
}

}  // namespace priceshap
