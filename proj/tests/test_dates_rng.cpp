/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "priceshap/dates.hpp"
#include "priceshap/error.hpp"
#include "priceshap/rng.hpp"

using namespace priceshap;

TEST_CASE("epoch day zero") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(1970, 1, 2) == 1);
  CHECK(days_from_civil(1969, 12, 31) == -1);
  CHECK(days_from_civil(2000, 3, 1) == 11017);
}

TEST_CASE("civil round trip") {
  for (EpochHour h : {0L, 17'000'000L, 423'456L, -20L, 999'999L}) {
    const CivilDateTime dt = civil_from_hour(h);
    CHECK(hour_from_civil(dt) == h);
  }
}

TEST_CASE("timestamp parse and format") {
  const EpochHour h = parse_timestamp("2017-01-01T00:00:00Z");
  CHECK(format_timestamp(h) == "2017-01-01T00:00:00Z");
  CHECK(parse_timestamp("2017-01-01T05:00:00Z") == h + 5);
  CHECK(parse_timestamp("2017-01-01 05:00:00") == h + 5);
  CHECK(parse_timestamp("2017-01-01T05:00") == h + 5);
  CHECK_THROWS_AS(parse_timestamp("2017-01-01T05:30:00Z"), Error);
  CHECK_THROWS_AS(parse_timestamp("not a date"), Error);
  CHECK_THROWS_AS(parse_timestamp("2017-13-01T00:00:00Z"), Error);
}

TEST_CASE("iso weeks at year boundaries") {
  auto week_of = [](const char* ts) { return iso_week_of(parse_timestamp(ts)); };
  CHECK(week_of("2017-01-01T00:00:00Z") == IsoWeek{2016, 52});  // a Sunday
  CHECK(week_of("2017-01-02T00:00:00Z") == IsoWeek{2017, 1});   // first Monday
  CHECK(week_of("2018-12-31T23:00:00Z") == IsoWeek{2019, 1});
  CHECK(week_of("2015-12-28T00:00:00Z") == IsoWeek{2015, 53});  // 53-week year
  CHECK(week_of("2016-01-03T00:00:00Z") == IsoWeek{2015, 53});
  CHECK(week_of("2016-01-04T00:00:00Z") == IsoWeek{2016, 1});
}

TEST_CASE("iso weekday") {
  CHECK(iso_weekday(days_from_civil(1970, 1, 1)) == 4);  // Thursday
  CHECK(iso_weekday(days_from_civil(2017, 1, 2)) == 1);  // Monday
  CHECK(iso_weekday(days_from_civil(2017, 1, 1)) == 7);  // Sunday
}

TEST_CASE("rng determinism and independence of streams") {
  Xoshiro256StarStar a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t va = a.next();
    all_equal = all_equal && va == b.next();
    any_diff = any_diff || va != c.next();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform stays in bounds, normal has sane moments") {
  Xoshiro256StarStar rng(7);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("shuffle is a permutation and is seed-stable") {
  std::vector<int> items(50);
  for (int i = 0; i < 50; ++i) items[i] = i;
  auto once = items;
  Xoshiro256StarStar rng(99);
  shuffle(&once, &rng);
  CHECK(std::set<int>(once.begin(), once.end()).size() == 50);

  auto again = items;
  Xoshiro256StarStar rng2(99);
  shuffle(&again, &rng2);
  CHECK(once == again);
  CHECK(once != items);  // 50 elements, overwhelmingly unlikely to be identity
}

TEST_CASE("sample_without_replacement picks distinct items") {
  std::vector<int> items(30);
  for (int i = 0; i < 30; ++i) items[i] = i;
  Xoshiro256StarStar rng(5);
  const auto picked = sample_without_replacement(items, 10, &rng);
  CHECK(picked.size() == 10);
  CHECK(std::set<int>(picked.begin(), picked.end()).size() == 10);
}
