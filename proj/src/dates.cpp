#include "attackwatch/dates.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "attackwatch/errors.hpp"

namespace attackwatch {
namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 12> kMonthAbbrev = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<std::string_view, 12> kMonthFull = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

// Reads exactly `width` digits at `pos`.
bool read_fixed(std::string_view s, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + width, out);
  return ec == std::errc{};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw InputError(std::string(what) + ": '" + std::string(text) + "'");
}

}  // namespace

Date make_date(int year, unsigned month, unsigned day) {
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok()) {
    throw PreconditionError("invalid calendar date " + std::to_string(year) + "-" +
                            std::to_string(month) + "-" + std::to_string(day));
  }
  return sys_days{ymd};
}

Date parse_date(std::string_view iso) {
  const std::string_view s = trim(iso);
  int y = 0, m = 0, d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !read_fixed(s, 0, 4, y) ||
      !read_fixed(s, 5, 2, m) || !read_fixed(s, 8, 2, d)) {
    bad("expected YYYY-MM-DD date", iso);
  }
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                           std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad("invalid calendar date", iso);
  return sys_days{ymd};
}

Date parse_display_date(std::string_view text) {
  const std::string_view s = trim(text);
  const auto first_space = s.find(' ');
  const auto last_space = s.rfind(' ');
  if (first_space == std::string_view::npos || first_space == last_space) {
    bad("expected 'DD Mon YYYY' date", text);
  }
  const std::string_view day_part = s.substr(0, first_space);
  const std::string_view month_part = trim(s.substr(first_space + 1, last_space - first_space - 1));
  const std::string_view year_part = s.substr(last_space + 1);

  int d = 0, y = 0;
  if (!read_fixed(day_part, 0, day_part.size(), d) || day_part.size() > 2 ||
      year_part.size() != 4 || !read_fixed(year_part, 0, 4, y)) {
    bad("expected 'DD Mon YYYY' date", text);
  }
  unsigned m = 0;
  for (unsigned i = 0; i < 12; ++i) {
    if (iequals(month_part, kMonthAbbrev[i]) || iequals(month_part, kMonthFull[i])) {
      m = i + 1;
      break;
    }
  }
  if (m == 0) bad("unknown month name", text);
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                           std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad("invalid calendar date", text);
  return sys_days{ymd};
}

Timestamp parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.size() < 19) bad("timestamp too short", text);
  const Date date = parse_date(s.substr(0, 10));
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') bad("expected 'T' date-time separator", text);

  int hh = 0, mm = 0, ss = 0;
  if (!read_fixed(s, 11, 2, hh) || s[13] != ':' || !read_fixed(s, 14, 2, mm) || s[16] != ':' ||
      !read_fixed(s, 17, 2, ss)) {
    bad("expected hh:mm:ss time", text);
  }
  if (hh > 23 || mm > 59 || ss > 60) bad("time out of range", text);

  std::size_t pos = 19;
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_start) bad("empty fractional seconds", text);
  }

  seconds offset{0};
  if (pos < s.size()) {
    const char z = s[pos];
    if ((z == 'Z' || z == 'z') && pos + 1 == s.size()) {
      ++pos;
    } else if (z == '+' || z == '-') {
      int oh = 0, om = 0;
      std::size_t p = pos + 1;
      if (!read_fixed(s, p, 2, oh)) bad("malformed UTC offset", text);
      p += 2;
      if (p < s.size() && s[p] == ':') ++p;
      if (p < s.size()) {
        if (!read_fixed(s, p, 2, om)) bad("malformed UTC offset", text);
        p += 2;
      }
      if (p != s.size() || oh > 23 || om > 59) bad("malformed UTC offset", text);
      offset = hours{oh} + minutes{om};
      if (z == '-') offset = -offset;
      pos = p;
    } else {
      bad("unexpected trailing characters in timestamp", text);
    }
  }
  if (pos != s.size()) bad("unexpected trailing characters in timestamp", text);

  const Timestamp local = date + hours{hh} + minutes{mm} + seconds{ss};
  return local - offset;
}

std::string format_date(Date date) {
  const year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_display_date(Date date) {
  const year_month_day ymd{date};
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02u %s %04d", static_cast<unsigned>(ymd.day()),
                std::string(kMonthAbbrev[static_cast<unsigned>(ymd.month()) - 1]).c_str(),
                static_cast<int>(ymd.year()));
  return buf;
}

std::string format_timestamp(Timestamp ts) {
  const Date day = date_of(ts);
  const hh_mm_ss<seconds> tod{ts - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()), static_cast<int>(tod.seconds().count()));
  return format_date(day) + buf;
}

Date add_months_clamped(Date date, int months) {
  const year_month_day ymd{date};
  const year_month shifted = year_month{ymd.year(), ymd.month()} + std::chrono::months{months};
  const year_month_day_last last{shifted.year(), month_day_last{shifted.month()}};
  const std::chrono::day d = ymd.day() > last.day() ? last.day() : ymd.day();
  return sys_days{year_month_day{shifted.year(), shifted.month(), d}};
}

DateWindow::DateWindow(Date start, Date end) : start_(start), end_(end) {
  if (start > end) {
    throw PreconditionError("date window start " + format_date(start) + " is after end " +
                            format_date(end));
  }
}

DateWindow DateWindow::shifted_months(int months) const {
  return DateWindow(add_months_clamped(start_, months), add_months_clamped(end_, months));
}

std::string DateWindow::to_string() const {
  return "(" + format_display_date(start_) + ", " + format_display_date(end_) + ")";
}

}  // namespace attackwatch
