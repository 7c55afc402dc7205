/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_DATES_HPP_
#define PRICESHAP_DATES_HPP_

#include <cstdint>
#include <string>

namespace priceshap {

// All timestamps in the project are whole UTC hours counted from
// 1970-01-01T00:00:00Z. Calendar math uses Howard Hinnant's civil-date
// algorithms, which are exact over the full int64 range we care about.
using EpochHour = int64_t;

struct CivilDateTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;   // 0..23
};

struct IsoWeek {
  int year = 1970;
  int week = 1;  // 1..53

  friend bool operator==(const IsoWeek&, const IsoWeek&) = default;
  friend auto operator<=>(const IsoWeek&, const IsoWeek&) = default;
};

int64_t days_from_civil(int year, int month, int day);
CivilDateTime civil_from_hour(EpochHour hour);
EpochHour hour_from_civil(const CivilDateTime& dt);

// ISO-8601 weekday, Monday = 1 .. Sunday = 7.
int iso_weekday(int64_t days);

IsoWeek iso_week_of(EpochHour hour);

// Parses "2017-01-01T00:00:00Z" (seconds optional, trailing Z optional,
// space accepted instead of 'T'). Minutes and seconds must be zero.
EpochHour parse_timestamp(const std::string& text);

std::string format_timestamp(EpochHour hour);

}  // namespace priceshap

#endif  // PRICESHAP_DATES_HPP_
