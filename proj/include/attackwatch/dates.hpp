#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace attackwatch {

/// Calendar date (UTC).
using Date = std::chrono::sys_days;
/// UTC instant at second precision.
using Timestamp = std::chrono::sys_seconds;

/// Builds a date, throwing PreconditionError for an invalid calendar day.
Date make_date(int year, unsigned month, unsigned day);

/// Parses "YYYY-MM-DD".
Date parse_date(std::string_view iso);

/// Parses "16 May 2018" style dates; full month names ("05 June 2018") are
/// accepted as well.
Date parse_display_date(std::string_view text);

/// Parses an ISO-8601 date-time and normalises it to UTC.
///
/// Accepted: "2018-05-16T12:34:56Z", a space instead of 'T', optional
/// fractional seconds (truncated), and "+hh:mm" / "-hhmm" offsets. A missing
/// zone designator is read as UTC.
Timestamp parse_timestamp(std::string_view text);

std::string format_date(Date date);             // 2018-05-16
std::string format_display_date(Date date);     // 16 May 2018
std::string format_timestamp(Timestamp ts);     // 2018-05-16T12:34:56Z

inline Date date_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

/// Signed number of days from `from` to `to`.
inline long days_between(Date from, Date to) { return (to - from).count(); }

/// Same day-of-month `months` later (negative: earlier); days that do not
/// exist in the target month clamp to its last day.
Date add_months_clamped(Date date, int months);

/// Inclusive range of calendar dates.
class DateWindow {
 public:
  DateWindow(Date start, Date end);

  Date start() const noexcept { return start_; }
  Date end() const noexcept { return end_; }

  bool contains(Date d) const noexcept { return start_ <= d && d <= end_; }
  bool contains(Timestamp ts) const noexcept { return contains(date_of(ts)); }

  /// Number of calendar days covered, counting both endpoints.
  long length_days() const noexcept { return days_between(start_, end_) + 1; }

  /// Both endpoints moved by `months` with month-end clamping.
  DateWindow shifted_months(int months) const;

  std::string to_string() const;  // (15 May 2018, 25 May 2018)

  friend bool operator==(const DateWindow&, const DateWindow&) = default;

 private:
  Date start_;
  Date end_;
};

}  // namespace attackwatch
