#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace mtcheck {

// Calendar day (proleptic Gregorian). Commit dates and changelog dates are
// compared at day granularity only.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  bool valid() const;
  std::string str() const; // YYYY-MM-DD
};

// Day number for a UTC unix timestamp, as a civil date (handles negatives).
Date date_from_unix(std::int64_t seconds);

// Parses the leftmost date expression in a line of text. Accepted forms:
// YYYY-MM-DD, YYYY/MM/DD, DD-MM-YYYY, DD/MM/YYYY, "January 19, 2021",
// "19 January 2021", with abbreviated month names allowed. Two-digit years
// never match; calendar-invalid candidates are skipped and scanning continues.
std::optional<Date> parse_date(const std::string& line);

// Byte range of the match found by parse_date, for in-place rewriting.
struct DateSpan {
  Date date;
  std::size_t pos = 0;
  std::size_t len = 0;
};
std::optional<DateSpan> find_date(const std::string& line);

} // namespace mtcheck
