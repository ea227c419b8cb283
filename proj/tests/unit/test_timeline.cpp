#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "attackwatch/errors.hpp"
#include "attackwatch/timeline.hpp"
#include "support.hpp"

using namespace attackwatch;
using aw_test::bundled_timeline;

TEST(Dates, ParseAndFormatRoundTrip) {
  const Date d = parse_date("2018-05-16");
  EXPECT_EQ(format_date(d), "2018-05-16");
  EXPECT_EQ(format_display_date(d), "16 May 2018");
  EXPECT_EQ(parse_display_date("05 June 2018"), parse_date("2018-06-05"));
  EXPECT_EQ(parse_display_date("5 Jun 2018"), parse_date("2018-06-05"));
  EXPECT_THROW(parse_date("2018-02-30"), InputError);
  EXPECT_THROW(parse_date("18-05-16"), InputError);
}

TEST(Dates, TimestampsNormaliseToUtc) {
  EXPECT_EQ(format_timestamp(parse_timestamp("2018-05-16T12:34:56Z")), "2018-05-16T12:34:56Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2018-05-16T14:34:56+02:00")), "2018-05-16T12:34:56Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2018-05-16 12:34:56")), "2018-05-16T12:34:56Z");
  EXPECT_EQ(format_timestamp(parse_timestamp("2018-05-16T12:34:56.789Z")), "2018-05-16T12:34:56Z");
  EXPECT_EQ(format_date(date_of(parse_timestamp("2018-05-16T00:30:00+01:00"))), "2018-05-15");
  EXPECT_THROW(parse_timestamp("yesterday"), InputError);
}

TEST(Dates, MonthShiftClampsToMonthEnd) {
  EXPECT_EQ(add_months_clamped(parse_date("2018-03-31"), -1), parse_date("2018-02-28"));
  EXPECT_EQ(add_months_clamped(parse_date("2020-03-31"), -1), parse_date("2020-02-29"));
  EXPECT_EQ(add_months_clamped(parse_date("2020-01-31"), 1), parse_date("2020-02-29"));
  EXPECT_EQ(add_months_clamped(parse_date("2020-12-15"), 1), parse_date("2021-01-15"));
}

TEST(DateWindowTest, InclusiveBoundsAndValidation) {
  const DateWindow w(parse_date("2018-05-15"), parse_date("2018-05-25"));
  EXPECT_EQ(w.length_days(), 11);
  EXPECT_TRUE(w.contains(parse_timestamp("2018-05-15T00:00:00Z")));
  EXPECT_TRUE(w.contains(parse_timestamp("2018-05-25T23:59:59Z")));
  EXPECT_FALSE(w.contains(parse_timestamp("2018-05-26T00:00:00Z")));
  EXPECT_EQ(w.to_string(), "(15 May 2018, 25 May 2018)");
  EXPECT_THROW(DateWindow(parse_date("2018-05-26"), parse_date("2018-05-25")), PreconditionError);
}

TEST(TimelineTest, BundledTimelineHas31EventsAnd17Analysed) {
  const Timeline& t = bundled_timeline();
  EXPECT_EQ(t.size(), 31u);
  EXPECT_EQ(t.analysed().size(), 17u);
  const std::vector<std::string> ids = t.analysed_ids();
  EXPECT_EQ(ids.front(), "E1");
  EXPECT_EQ(ids.back(), "E17");
  EXPECT_TRUE(std::is_sorted(t.events().begin(), t.events().end(),
                             [](const Event& a, const Event& b) { return a.attack_start < b.attack_start; }));
}

TEST(TimelineTest, E4PeriodMatchesTimelineRow) {
  const Event& e4 = bundled_timeline().at("E4");
  EXPECT_EQ(e4.currency, "Bitcoin Gold");
  EXPECT_EQ(e4.period().to_string(), "(16 May 2018, 19 May 2018)");
}

TEST(TimelineTest, EthereumClassicAttackedFourTimes) {
  const auto counts = bundled_timeline().attacks_per_currency();
  EXPECT_EQ(counts.at("Ethereum Classic"), 4u);
  EXPECT_EQ(counts.at("Bitcoin Gold"), 3u);
  // FLO and AurumCoin appear once each next to the twenty currencies of the
  // per-currency summary.
  EXPECT_EQ(counts.size(), 22u);
  EXPECT_EQ(counts.at("FLO"), 1u);
  EXPECT_EQ(counts.at("AurumCoin"), 1u);
}

TEST(TimelineTest, LookupIsCaseInsensitiveAndUnknownIdsListKnownOnes) {
  const Timeline& t = bundled_timeline();
  EXPECT_EQ(t.find("e11"), t.find("E11"));
  EXPECT_NE(t.find("#1"), nullptr);
  EXPECT_EQ(t.find("E99"), nullptr);
  try {
    (void)t.at("E99");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("E1"), std::string::npos);
    EXPECT_NE(what.find("E17"), std::string::npos);
  }
}

TEST(Windows, E4AttackWindowFromRule) {
  const Event& e4 = bundled_timeline().at("E4");
  EXPECT_EQ(derived_windows(e4).attack.to_string(), "(15 May 2018, 25 May 2018)");
}

TEST(Windows, E15BenchmarkIsAMonthAfter) {
  const Event& e15 = bundled_timeline().at("E15");
  EXPECT_EQ(e15.benchmark_direction, BenchmarkDirection::month_after);
  EXPECT_EQ(compute_windows(e15).benchmark.to_string(), "(28 Sep 2020, 04 Oct 2020)");
}

TEST(Windows, MonthEndClamping) {
  Event e;
  e.serial = 1;
  e.event_id = "X1";
  e.currency = "Test";
  e.ticker = "TST";
  e.attack_start = parse_date("2021-04-01");
  e.attack_end = parse_date("2021-04-01");
  // attack window (31 Mar, 07 Apr) moves to (28 Feb, 07 Mar)
  const EventWindows w = derived_windows(e);
  EXPECT_EQ(w.attack.start(), parse_date("2021-03-31"));
  EXPECT_EQ(w.benchmark.start(), parse_date("2021-02-28"));
  e.attack_start = e.attack_end = parse_date("2020-04-01");
  EXPECT_EQ(derived_windows(e).benchmark.start(), parse_date("2020-02-29"));
}

TEST(Windows, AttackWindowLengthIsPeriodPlusEight) {
  for (const Event& e : bundled_timeline().events()) {
    const DateWindow a = derived_windows(e).attack;
    EXPECT_EQ(a.length_days(), days_between(e.attack_start, e.attack_end) + 8) << e.label();
  }
}

TEST(Windows, RuleReproducesRecordedWindowsExceptKnownRows) {
  // Rows of the recorded benchmark periods that the one-month rule does not
  // reproduce; the recorded windows override these.
  const std::set<std::string> irregular_benchmarks = {"E1", "E2", "E3", "E7"};
  for (const Event* e : bundled_timeline().analysed()) {
    ASSERT_TRUE(e->recorded_attack_window && e->recorded_benchmark_window) << e->label();
    const EventWindows rule = derived_windows(*e);
    EXPECT_EQ(rule.attack, *e->recorded_attack_window) << e->label();
    if (irregular_benchmarks.contains(e->event_id)) {
      EXPECT_NE(rule.benchmark, *e->recorded_benchmark_window) << e->label();
    } else {
      EXPECT_EQ(rule.benchmark, *e->recorded_benchmark_window) << e->label();
    }
    EXPECT_EQ(compute_windows(*e).benchmark, *e->recorded_benchmark_window) << e->label();
  }
}

TEST(TimelineParse, MalformedEntryReportsLine) {
  const std::string yaml =
      "events:\n"
      "  - serial: 1\n"
      "    currency: A\n"
      "    ticker: A\n"
      "    period: [2020-01-02, 2020-01-01]\n"
      "    kind: actual\n";
  try {
    (void)Timeline::parse(yaml, "bad.yaml");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 5u) << e.what();
    EXPECT_NE(std::string(e.what()).find("bad.yaml:5"), std::string::npos) << e.what();
  }
}

TEST(TimelineParse, UnknownKindAndBadDateAreRejected) {
  const std::string base =
      "events:\n"
      "  - serial: 1\n"
      "    currency: A\n"
      "    ticker: A\n";
  EXPECT_THROW((void)Timeline::parse(base + "    period: [2020-01-01, 2020-01-02]\n    kind: maybe\n"),
               InputError);
  EXPECT_THROW((void)Timeline::parse(base + "    period: [2020-13-01, 2020-01-02]\n    kind: actual\n"),
               InputError);
  EXPECT_THROW((void)Timeline::parse("events: [1, 2\n"), InputError);
}

TEST(TimelineParse, MonthAfterOnlyWhenFlagged) {
  const Event& e4 = bundled_timeline().at("E4");
  EXPECT_EQ(e4.benchmark_direction, BenchmarkDirection::month_before);
  std::size_t after = 0;
  for (const Event& e : bundled_timeline().events()) {
    if (e.benchmark_direction == BenchmarkDirection::month_after) ++after;
  }
  EXPECT_EQ(after, 2u);
}
