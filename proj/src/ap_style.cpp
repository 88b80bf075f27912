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

#include "jguard/ap_style.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>

#include "text_util.hpp"

namespace jguard::ap {
namespace {

using text::is_alnum;
using text::is_alpha;
using text::is_digit;
using text::is_space;

struct Token {
  enum class Kind { kWord, kNumber, kPunct };
  Kind kind;
  std::size_t begin;
  std::size_t end;
};

std::vector<Token> scan(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (is_alpha(c)) {
      while (i < s.size() && is_alpha(s[i])) ++i;
      out.push_back({Token::Kind::kWord, begin, i});
    } else if (is_digit(c)) {
      while (i < s.size() && is_digit(s[i])) ++i;
      out.push_back({Token::Kind::kNumber, begin, i});
    } else {
      // Keep multi-byte UTF-8 sequences together as one punctuation token.
      ++i;
      while (i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) ++i;
      out.push_back({Token::Kind::kPunct, begin, i});
    }
  }
  return out;
}

class Cursor {
 public:
  Cursor(std::string_view s, const std::vector<Token>& toks) : s_(s), toks_(toks) {}

  std::size_t size() const { return toks_.size(); }
  const Token& at(std::size_t i) const { return toks_[i]; }
  std::string_view text(std::size_t i) const {
    return s_.substr(toks_[i].begin, toks_[i].end - toks_[i].begin);
  }
  bool is(std::size_t i, Token::Kind kind) const { return i < toks_.size() && toks_[i].kind == kind; }
  bool is_punct(std::size_t i, char c) const {
    return is(i, Token::Kind::kPunct) && toks_[i].end - toks_[i].begin == 1 && s_[toks_[i].begin] == c;
  }
  // Token i+1 starts exactly where token i ends.
  bool adjacent(std::size_t i) const {
    return i + 1 < toks_.size() && toks_[i].end == toks_[i + 1].begin;
  }
  // Only spaces or tabs (no line break) between tokens i and i+1.
  bool same_line(std::size_t i) const {
    if (i + 1 >= toks_.size()) return false;
    for (std::size_t k = toks_[i].end; k < toks_[i + 1].begin; ++k) {
      if (s_[k] == '\n' || s_[k] == '\r') return false;
    }
    return true;
  }
  int number_value(std::size_t i) const {
    const std::string_view t = text(i);
    if (t.size() > 4) return -1;
    return std::stoi(std::string(t));
  }

 private:
  std::string_view s_;
  const std::vector<Token>& toks_;
};

struct MonthWord {
  std::string_view word;
  int month;  // 1-12
  bool abbreviation;
};

constexpr std::array<MonthWord, 24> kMonths = {{
    {"January", 1, false}, {"February", 2, false}, {"March", 3, false},
    {"April", 4, false},   {"May", 5, false},      {"June", 6, false},
    {"July", 7, false},    {"August", 8, false},   {"September", 9, false},
    {"October", 10, false}, {"November", 11, false}, {"December", 12, false},
    {"Jan", 1, true},      {"Feb", 2, true},       {"Mar", 3, true},
    {"Apr", 4, true},      {"Jun", 6, true},       {"Jul", 7, true},
    {"Aug", 8, true},      {"Sep", 9, true},       {"Sept", 9, true},
    {"Oct", 10, true},     {"Nov", 11, true},      {"Dec", 12, true},
}};

// Abbreviated with a day, AP accepts exactly Jan. Feb. Aug. Sept. Oct. Nov. Dec.
constexpr std::array<std::string_view, 7> kApAbbreviations = {"Jan", "Feb", "Aug", "Sept",
                                                              "Oct", "Nov", "Dec"};

// Months that take the AP abbreviation when used with a specific date.
bool month_abbreviates(int month) {
  return month == 1 || month == 2 || month >= 8;
}

std::optional<MonthWord> month_word(std::string_view w) {
  for (const MonthWord& m : kMonths) {
    if (m.word == w) return m;
  }
  return std::nullopt;
}

bool is_ordinal_suffix(std::string_view w) {
  return w == "st" || w == "nd" || w == "rd" || w == "th";
}

constexpr std::array<std::string_view, 12> kHourWords = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve"};

constexpr std::array<std::string_view, 18> kTenAndAbove = {
    "ten",      "eleven",  "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen",  "seventeen", "eighteen", "nineteen", "twenty", "thirty",
    "forty",    "fifty",   "sixty",  "seventy",  "eighty",   "ninety"};

template <std::size_t N>
bool one_of(const std::array<std::string_view, N>& words, std::string_view w) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

// Parses an a.m./p.m. marker beginning at token k; returns the index one past
// its last token.
std::optional<std::size_t> match_meridiem(const Cursor& c, std::size_t k) {
  if (!c.is(k, Token::Kind::kWord)) return std::nullopt;
  const std::string lower = text::to_lower(c.text(k));
  if (lower == "am" || lower == "pm") {
    std::size_t end = k + 1;
    if (c.adjacent(k) && c.is_punct(k + 1, '.')) ++end;
    return end;
  }
  if ((lower == "a" || lower == "p") && c.adjacent(k) && c.is_punct(k + 1, '.') &&
      c.same_line(k + 1) && c.is(k + 2, Token::Kind::kWord) &&
      text::to_lower(c.text(k + 2)) == "m") {
    // Allow "a. m." but not a line break inside the marker.
    std::size_t end = k + 3;
    if (c.adjacent(k + 2) && c.is_punct(k + 3, '.')) ++end;
    return end;
  }
  return std::nullopt;
}

bool inside(std::size_t pos, std::size_t begin, std::size_t end) {
  return pos >= begin && pos < end;
}

bool blocks_standalone(char c) {
  return is_alnum(c) || c == '$' || c == '%' || c == '-' || c == '/' || c == '#' ||
         c == '\'' || c == '_' || (static_cast<unsigned char>(c) & 0x80) != 0;
}

}  // namespace

std::vector<DatePhrase> find_dates(std::string_view s) {
  const std::vector<Token> toks = scan(s);
  const Cursor c(s, toks);
  std::vector<DatePhrase> out;
  std::size_t i = 0;
  while (i < c.size()) {
    if (!c.is(i, Token::Kind::kWord)) {
      ++i;
      continue;
    }
    const auto month = month_word(c.text(i));
    if (!month) {
      ++i;
      continue;
    }
    // A month word glued to a preceding letter or digit is not a month.
    if (c.at(i).begin > 0 && is_alnum(s[c.at(i).begin - 1])) {
      ++i;
      continue;
    }
    std::size_t next = i + 1;
    bool period = false;
    if (month->abbreviation && c.adjacent(i) && c.is_punct(i + 1, '.')) {
      period = true;
      ++next;
    }
    const bool ap_form = month->abbreviation && period && one_of(kApAbbreviations, c.text(i));

    DatePhrase phrase{c.at(i).begin, 0, false, DateRule::kNone};
    std::size_t after = next;

    if (c.is(next, Token::Kind::kNumber) && c.same_line(next - 1) && c.text(next).size() <= 2 &&
        c.number_value(next) >= 1 && c.number_value(next) <= 31) {
      std::size_t day_end = next + 1;
      // Reject times ("Jan 5:30") and decimals ("Mar. 5.5").
      const bool continues =
          c.adjacent(next) && (c.is_punct(next + 1, ':') || c.is_punct(next + 1, '.')) &&
          c.adjacent(next + 1) && c.is(next + 2, Token::Kind::kNumber);
      if (continues) {
        i = next + 1;
        continue;
      }
      if (c.adjacent(next) && c.is(next + 1, Token::Kind::kWord)) {
        if (!is_ordinal_suffix(text::to_lower(c.text(next + 1)))) {
          i = next + 1;
          continue;
        }
        ++day_end;
      }
      phrase.has_day = true;
      after = day_end;
      if (c.is_punct(day_end, ',') && c.adjacent(day_end - 1) && c.same_line(day_end) &&
          c.is(day_end + 1, Token::Kind::kNumber) && c.text(day_end + 1).size() == 4) {
        after = day_end + 2;
      }
      if (month->abbreviation && !ap_form) {
        phrase.violation = DateRule::kNonApAbbreviationWithDay;
      } else if (!month->abbreviation && month_abbreviates(month->month)) {
        phrase.violation = DateRule::kSpelledMonthWithDay;
      }
    } else {
      bool comma = false;
      std::size_t year = next;
      if (c.is_punct(next, ',') && c.adjacent(next - 1)) {
        comma = true;
        ++year;
      }
      if (!(c.is(year, Token::Kind::kNumber) && c.text(year).size() == 4 &&
            c.same_line(year - 1))) {
        i = next;
        continue;
      }
      if (c.adjacent(year) && c.is(year + 1, Token::Kind::kWord)) {  // "2020s"
        i = year + 1;
        continue;
      }
      after = year + 1;
      if (month->abbreviation) {
        phrase.violation = DateRule::kAbbreviatedMonthYear;
      } else if (comma) {
        phrase.violation = DateRule::kCommaMonthYear;
      }
    }
    phrase.end = c.at(after - 1).end;
    out.push_back(phrase);
    i = after;
  }
  return out;
}

std::vector<TimePhrase> find_times(std::string_view s) {
  const std::vector<Token> toks = scan(s);
  const Cursor c(s, toks);
  std::vector<TimePhrase> out;
  std::size_t i = 0;
  while (i < c.size()) {
    std::size_t hour_end = 0;
    bool spelled = false;
    if (c.is(i, Token::Kind::kNumber) && c.text(i).size() <= 2 && c.number_value(i) <= 23) {
      const std::size_t begin = c.at(i).begin;
      if (begin > 0 && (is_alpha(s[begin - 1]) || s[begin - 1] == '.' || s[begin - 1] == ':')) {
        ++i;
        continue;
      }
      hour_end = i + 1;
      if (c.adjacent(i) && c.is_punct(i + 1, ':') && c.adjacent(i + 1) &&
          c.is(i + 2, Token::Kind::kNumber) && c.text(i + 2).size() == 2 &&
          c.number_value(i + 2) < 60) {
        hour_end = i + 3;
      }
    } else if (c.is(i, Token::Kind::kWord) && one_of(kHourWords, text::to_lower(c.text(i)))) {
      hour_end = i + 1;
      spelled = true;
    } else {
      ++i;
      continue;
    }
    if (!c.same_line(hour_end - 1)) {
      i = hour_end;
      continue;
    }
    const auto marker_end = match_meridiem(c, hour_end);
    if (!marker_end) {
      i = hour_end;
      continue;
    }
    // "5 amps", "5 am-" : the marker must not run into further letters.
    const std::size_t end_byte = c.at(*marker_end - 1).end;
    if (end_byte < s.size() && is_alnum(s[end_byte])) {
      i = *marker_end;
      continue;
    }
    const std::size_t marker_begin = c.at(hour_end).begin;
    const std::string_view marker = s.substr(marker_begin, end_byte - marker_begin);
    TimePhrase phrase{c.at(i).begin, end_byte, TimeRule::kNone};
    if (spelled) {
      phrase.violation = TimeRule::kSpelledHour;
    } else if (marker != "a.m." && marker != "p.m.") {
      phrase.violation = TimeRule::kMeridiemForm;
    }
    out.push_back(phrase);
    i = *marker_end;
  }
  return out;
}

std::size_t count_date_violations(std::string_view text) {
  const auto dates = find_dates(text);
  return static_cast<std::size_t>(std::count_if(
      dates.begin(), dates.end(), [](const DatePhrase& d) { return d.violation != DateRule::kNone; }));
}

std::size_t count_time_violations(std::string_view text) {
  const auto times = find_times(text);
  return static_cast<std::size_t>(std::count_if(
      times.begin(), times.end(), [](const TimePhrase& t) { return t.violation != TimeRule::kNone; }));
}

std::size_t count_number_violations(std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> exempt;
  for (const DatePhrase& d : find_dates(s)) exempt.emplace_back(d.begin, d.end);
  for (const TimePhrase& t : find_times(s)) exempt.emplace_back(t.begin, t.end);
  auto is_exempt = [&](std::size_t pos) {
    return std::any_of(exempt.begin(), exempt.end(),
                       [&](const auto& span) { return inside(pos, span.first, span.second); });
  };

  const std::vector<Token> toks = scan(s);
  const Cursor c(s, toks);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Token& t = c.at(i);
    if (is_exempt(t.begin)) continue;
    if (t.kind == Token::Kind::kNumber) {
      if (t.begin > 0) {
        const char before = s[t.begin - 1];
        if (blocks_standalone(before) || before == '.' || before == ',' || before == ':') continue;
      }
      if (t.end < s.size()) {
        const char after = s[t.end];
        if (blocks_standalone(after)) continue;
        if ((after == '.' || after == ',' || after == ':') && t.end + 1 < s.size() &&
            is_digit(s[t.end + 1])) {
          continue;
        }
      }
      if (c.text(i).size() <= 3 && c.number_value(i) <= 9) ++violations;
    } else if (t.kind == Token::Kind::kWord) {
      if (one_of(kTenAndAbove, text::to_lower(c.text(i)))) ++violations;
    }
  }
  return violations;
}

}  // namespace jguard::ap
