// Copyright 2026 The jguard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace jguard::ap {

/// Which AP rule a date phrase breaks.
enum class DateRule {
  kNone,
  kSpelledMonthWithDay,      // "January 5" where AP abbreviates
  kNonApAbbreviationWithDay, // "Sep. 5", "Jan 5", "Mar. 5"
  kAbbreviatedMonthYear,     // "Jan. 2021"
  kCommaMonthYear,           // "January, 2021"
};

enum class TimeRule {
  kNone,
  kMeridiemForm,  // "PM", "a.m" ... anything but "a.m."/"p.m."
  kSpelledHour,   // "eight p.m."
};

/// Byte span [begin, end) of a recognized phrase in the scanned text.
struct DatePhrase {
  std::size_t begin;
  std::size_t end;
  bool has_day;
  DateRule violation;
};

struct TimePhrase {
  std::size_t begin;
  std::size_t end;
  TimeRule violation;
};

/// Phrases of the form  month [day] [, year]  or  month [,] year.
///
/// Months must be capitalized; a bare month without day or year is not a
/// phrase. Recognition is conservative: anything outside this grammar is
/// ignored rather than guessed at.
std::vector<DatePhrase> find_dates(std::string_view text);

/// An hour (numeral, H:MM, or a number word one..twelve) followed by an
/// a.m./p.m. marker in any spelling ("am", "PM", "a.m", "A.M.").
std::vector<TimePhrase> find_times(std::string_view text);

std::size_t count_date_violations(std::string_view text);
std::size_t count_time_violations(std::string_view text);

/// Standalone numerals 0-9 and spelled-out numbers from ten upward
/// ("twelve", "twenty-five"). Numerals inside a recognized date or time
/// phrase are exempt. Ages, addresses and percentages are not special-cased.
std::size_t count_number_violations(std::string_view text);

}  // namespace jguard::ap
