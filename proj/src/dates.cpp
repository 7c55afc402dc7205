/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#include "priceshap/dates.hpp"

#include <cstdio>

#include "priceshap/error.hpp"

namespace priceshap {

int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

static void civil_from_days(int64_t days, int* year, int* month, int* day) {
  days += 719468;
  const int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  *day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  *month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  *year = static_cast<int>(y + (*month <= 2));
}

CivilDateTime civil_from_hour(EpochHour hour) {
  int64_t days = hour / 24;
  int64_t h = hour % 24;
  if (h < 0) {
    h += 24;
    days -= 1;
  }
  CivilDateTime dt;
  civil_from_days(days, &dt.year, &dt.month, &dt.day);
  dt.hour = static_cast<int>(h);
  return dt;
}

EpochHour hour_from_civil(const CivilDateTime& dt) {
  return days_from_civil(dt.year, dt.month, dt.day) * 24 + dt.hour;
}

int iso_weekday(int64_t days) {
  // 1970-01-01 was a Thursday (ISO weekday 4).
  return static_cast<int>(((days + 3) % 7 + 7) % 7) + 1;
}

static int iso_weeks_in_year(int year) {
  auto p = [](int y) { return (y + y / 4 - y / 100 + y / 400) % 7; };
  return 52 + ((p(year) == 4 || p(year - 1) == 3) ? 1 : 0);
}

IsoWeek iso_week_of(EpochHour hour) {
  int64_t days = hour / 24;
  if (hour % 24 < 0) days -= 1;
  int year, month, day;
  civil_from_days(days, &year, &month, &day);
  const int ordinal = static_cast<int>(days - days_from_civil(year, 1, 1)) + 1;
  const int weekday = iso_weekday(days);
  int week = (ordinal - weekday + 10) / 7;
  if (week < 1) return {year - 1, iso_weeks_in_year(year - 1)};
  if (week > iso_weeks_in_year(year)) return {year + 1, 1};
  return {year, week};
}

EpochHour parse_timestamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int consumed = 0;
  int fields = std::sscanf(text.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d%n", &y, &mo, &d, &h, &mi, &s,
                           &consumed);
  if (fields != 6) {
    consumed = 0;
    fields = std::sscanf(text.c_str(), "%d-%d-%d%*1[T ]%d:%d%n", &y, &mo, &d, &h, &mi, &consumed);
    s = 0;
    if (fields != 5) fail(ErrorKind::kBadInput, "unparseable timestamp '" + text + "'");
  }
  std::string rest = text.substr(static_cast<size_t>(consumed));
  if (!rest.empty() && rest != "Z") {
    fail(ErrorKind::kBadInput, "unparseable timestamp suffix '" + text + "'");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23) {
    fail(ErrorKind::kBadInput, "timestamp out of range '" + text + "'");
  }
  if (mi != 0 || s != 0) {
    fail(ErrorKind::kBadInput, "timestamp not on a whole hour '" + text + "'");
  }
  return days_from_civil(y, mo, d) * 24 + h;
}

std::string format_timestamp(EpochHour hour) {
  const CivilDateTime dt = civil_from_hour(hour);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", dt.year, dt.month, dt.day, dt.hour);
  return buf;
}

}  // namespace priceshap
