#include "mtcheck/date.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <string_view>

namespace mtcheck {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> d{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && leap(y)) return 29;
  return d[m - 1];
}

int month_from_name(std::string_view w) {
  static constexpr std::pair<std::string_view, int> table[] = {
      {"january", 1}, {"february", 2}, {"march", 3},     {"april", 4},
      {"may", 5},     {"june", 6},     {"july", 7},      {"august", 8},
      {"september", 9}, {"october", 10}, {"november", 11}, {"december", 12},
      {"jan", 1},     {"feb", 2},      {"mar", 3},       {"apr", 4},
      {"jun", 6},     {"jul", 7},      {"aug", 8},       {"sep", 9},
      {"sept", 9},    {"oct", 10},     {"nov", 11},      {"dec", 12},
  };
  for (const auto& [name, month] : table)
    if (w == name) return month;
  return 0;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Scanner {
  const std::string& s;
  std::size_t pos = 0;

  bool digit_at(std::size_t i) const { return i < s.size() && is_digit(s[i]); }

  // Reads exactly min..max digits starting at i; fails if a digit follows.
  bool number(std::size_t& i, int min_len, int max_len, int& out) const {
    int len = 0, value = 0;
    while (len < max_len && digit_at(i + len)) {
      value = value * 10 + (s[i + len] - '0');
      ++len;
    }
    if (len < min_len || digit_at(i + len)) return false;
    out = value;
    i += len;
    return true;
  }
};

bool make_date(int y, int m, int d, Date& out) {
  Date cand{y, m, d};
  if (!cand.valid()) return false;
  out = cand;
  return true;
}

// Numeric forms: YYYY-MM-DD, YYYY/MM/DD, DD-MM-YYYY, DD/MM/YYYY. The leading
// position must not follow a digit (checked by the caller).
bool match_numeric(const Scanner& sc, std::size_t start, DateSpan& out) {
  std::size_t i = start;
  int first = 0;
  std::size_t first_begin = i;
  if (!sc.number(i, 1, 4, first)) return false;
  std::size_t first_len = i - first_begin;
  if (i >= sc.s.size() || (sc.s[i] != '-' && sc.s[i] != '/')) return false;
  char sep = sc.s[i];
  ++i;
  int second = 0;
  if (!sc.number(i, 1, 2, second)) return false;
  if (i >= sc.s.size() || sc.s[i] != sep) return false;
  ++i;

  Date date;
  int third = 0;
  if (first_len == 4) { // YYYY-MM-DD
    if (!sc.number(i, 1, 2, third)) return false;
    if (!make_date(first, second, third, date)) return false;
  } else { // DD-MM-YYYY; two-digit years rejected by the 4-digit minimum
    if (!sc.number(i, 4, 4, third)) return false;
    if (!make_date(third, second, first, date)) return false;
  }
  out = DateSpan{date, start, i - start};
  return true;
}

bool letter_at(const std::string& s, std::size_t i) {
  return i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])) != 0;
}

// "January 19, 2021" / "Jan 19 2021", with an optional ordinal suffix.
bool match_month_first(const Scanner& sc, std::size_t start, DateSpan& out) {
  const std::string& s = sc.s;
  std::size_t i = start;
  std::string word;
  while (letter_at(s, i)) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i++]))));
  int month = month_from_name(word);
  if (month == 0) return false;
  if (i < s.size() && s[i] == '.') ++i;
  std::size_t ws = i;
  while (i < s.size() && s[i] == ' ') ++i;
  if (i == ws) return false;
  int day = 0;
  if (!sc.number(i, 1, 2, day)) return false;
  for (std::string_view suf : {"st", "nd", "rd", "th"}) {
    if (i + suf.size() <= s.size() && std::string_view(s).substr(i, suf.size()) == suf) {
      i += suf.size();
      break;
    }
  }
  if (i < s.size() && s[i] == ',') ++i;
  ws = i;
  while (i < s.size() && s[i] == ' ') ++i;
  if (i == ws) return false;
  int year = 0;
  if (!sc.number(i, 4, 4, year)) return false;
  Date date;
  if (!make_date(year, month, day, date)) return false;
  out = DateSpan{date, start, i - start};
  return true;
}

// "19 January 2021" / "19th Jan, 2021".
bool match_day_first(const Scanner& sc, std::size_t start, DateSpan& out) {
  const std::string& s = sc.s;
  std::size_t i = start;
  int day = 0;
  if (!sc.number(i, 1, 2, day)) return false;
  for (std::string_view suf : {"st", "nd", "rd", "th"}) {
    if (i + suf.size() <= s.size() && std::string_view(s).substr(i, suf.size()) == suf) {
      i += suf.size();
      break;
    }
  }
  std::size_t ws = i;
  while (i < s.size() && s[i] == ' ') ++i;
  if (i == ws) return false;
  std::string word;
  while (letter_at(s, i)) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i++]))));
  int month = month_from_name(word);
  if (month == 0) return false;
  if (i < s.size() && s[i] == '.') ++i;
  if (i < s.size() && s[i] == ',') ++i;
  ws = i;
  while (i < s.size() && s[i] == ' ') ++i;
  if (i == ws) return false;
  int year = 0;
  if (!sc.number(i, 4, 4, year)) return false;
  Date date;
  if (!make_date(year, month, day, date)) return false;
  out = DateSpan{date, start, i - start};
  return true;
}

} // namespace

bool Date::valid() const {
  return year >= 1000 && year <= 9999 && month >= 1 && month <= 12 &&
         day >= 1 && day <= days_in_month(year, month);
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date date_from_unix(std::int64_t seconds) {
  std::int64_t days = seconds / 86400;
  if (seconds % 86400 < 0) --days;
  // Civil-from-days conversion (Howard Hinnant's algorithm).
  days += 719468;
  std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  std::int64_t doe = days - era * 146097;
  std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = yoe + era * 400;
  std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  std::int64_t mp = (5 * doy + 2) / 153;
  std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
  std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
  return Date{static_cast<int>(m <= 2 ? y + 1 : y), static_cast<int>(m),
              static_cast<int>(d)};
}

std::optional<DateSpan> find_date(const std::string& line) {
  Scanner sc{line};
  for (std::size_t start = 0; start < line.size(); ++start) {
    // Numeric patterns must not begin mid-number.
    bool digit_ok = start == 0 || !is_digit(line[start - 1]);
    DateSpan span;
    if (is_digit(line[start]) && digit_ok) {
      if (match_numeric(sc, start, span)) return span;
      if (match_day_first(sc, start, span)) return span;
    }
    if (letter_at(line, start) &&
        (start == 0 || !std::isalpha(static_cast<unsigned char>(line[start - 1])))) {
      if (match_month_first(sc, start, span)) return span;
    }
  }
  return std::nullopt;
}

std::optional<Date> parse_date(const std::string& line) {
  auto span = find_date(line);
  if (!span) return std::nullopt;
  return span->date;
}

} // namespace mtcheck
