#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "attackwatch/errors.hpp"
#include "attackwatch/trigger.hpp"
#include "support.hpp"

using namespace attackwatch;
using aw_test::DayMix;
using aw_test::make_unit;

namespace {

const LexiconSet& lex() { return aw_test::test_lexicons(); }

const Date kBaseStart = parse_date("2020-06-01");
const DateWindow kBaseWindow(kBaseStart, kBaseStart + std::chrono::days{9});

Dataset benchmark(std::uint64_t seed, std::size_t per_day = 120) {
  std::mt19937_64 rng(seed);
  std::vector<DataUnit> units;
  for (Date d = kBaseWindow.start(); d <= kBaseWindow.end(); d += std::chrono::days{1}) {
    const auto day = aw_test::synthetic_day(rng, d, DayMix{per_day, 0.2, 0.1, 0.0}, "b");
    units.insert(units.end(), day.begin(), day.end());
  }
  return Dataset(DatasetLabel::benchmark, "T", units, {}, kBaseWindow);
}

Dataset day_dataset(std::vector<DataUnit> units, Date day) {
  return Dataset(DatasetLabel::whole, "T", std::move(units), {}, DateWindow(day, day));
}

}  // namespace

TEST(AlertPolicyTest, DefaultsAndValidation) {
  const AlertPolicy p;
  EXPECT_EQ(p.negative_jump, 20.0);
  EXPECT_EQ(p.fear_jump, 0.1);
  EXPECT_EQ(p.volume_ratio, 2.0);
  EXPECT_EQ(p.min_units, 10u);
  EXPECT_EQ(p.window_days, 1);
  EXPECT_NO_THROW(p.validate());
  AlertPolicy bad;
  bad.fear_jump = 0.0;
  EXPECT_THROW(bad.validate(), PreconditionError);
  bad = {};
  bad.min_units = 0;
  EXPECT_THROW(bad.validate(), PreconditionError);
}

TEST(AlertPolicyTest, LoadsYamlWithLineDiagnostics) {
  const auto dir = std::filesystem::temp_directory_path() / "aw_policy_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.yaml") << "negative_jump: 15\nwindow_days: 2\n";
    std::ofstream(dir / "bad.yaml") << "negative_jump: 15\nfear_jum: 0.2\n";
    std::ofstream(dir / "neg.yaml") << "volume_ratio: -1\n";
  }
  const AlertPolicy p = AlertPolicy::load(dir / "ok.yaml");
  EXPECT_EQ(p.negative_jump, 15.0);
  EXPECT_EQ(p.window_days, 2);
  EXPECT_EQ(p.fear_jump, 0.1);
  try {
    (void)AlertPolicy::load(dir / "bad.yaml");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(AlertPolicy::load(dir / "neg.yaml"), InputError);
  EXPECT_THROW(AlertPolicy::load(dir / "missing.yaml"), InputError);
}

TEST(BuildBaseline, AllNeutralTwentyUnitsOverTenDays) {
  std::vector<DataUnit> units;
  for (int i = 0; i < 20; ++i) {
    units.push_back(make_unit("n" + std::to_string(i), kBaseStart + std::chrono::days{i / 2}, i, "coin chain",
                              "a" + std::to_string(i)));
  }
  const Baseline b = build_baseline(Dataset(DatasetLabel::benchmark, "T", units, {}, kBaseWindow), lex(), kBaseWindow);
  EXPECT_EQ(b.sentiment.negative, 0.0);
  EXPECT_EQ(b.sentiment.neutral, 100.0);
  EXPECT_EQ(b.sentiment.positive, 0.0);
  EXPECT_EQ(b.per_day_rate, 2.0);
  EXPECT_EQ(b.n, 20u);
}

TEST(BuildBaseline, TooFewUnitsIsAnError) {
  std::vector<DataUnit> units;
  for (int i = 0; i < 9; ++i) units.push_back(make_unit("n" + std::to_string(i), kBaseStart, i, "coin"));
  EXPECT_THROW(build_baseline(Dataset(DatasetLabel::benchmark, "T", units), lex(), kBaseWindow), PreconditionError);
}

TEST(BuildBaseline, FieldsEqualModuleOracles) {
  const Dataset b = benchmark(300, 30);
  ASSERT_EQ(b.size(), 300u);
  const Baseline base = build_baseline(b, lex(), kBaseWindow);
  const aw_test::OracleValence ov = aw_test::OracleValence::read(aw_test::data_dir() / "lexicons" / "test");
  const aw_test::OracleEmotion oe =
      aw_test::OracleEmotion::read(aw_test::data_dir() / "lexicons" / "test" / "emotions.tsv");
  double neg = 0, fear = 0;
  for (const DataUnit& u : b.units()) {
    if (ov.compound(u.text) < 0) neg += 1;
    fear += oe.intensity(u.text)[4];
  }
  EXPECT_NEAR(base.sentiment.negative, 100.0 * neg / 300.0, 1e-9);
  EXPECT_NEAR(base.fear_mean, fear / 300.0, 1e-12);
  EXPECT_DOUBLE_EQ(base.per_day_rate, 30.0);
}

TEST(EvaluateWindow, NegativeSpikeOnly) {
  // baseline 20% negative; window 70% negative at the same volume and fear
  std::vector<DataUnit> base_units, window_units;
  const Date day = kBaseStart + std::chrono::days{20};
  for (int i = 0; i < 100; ++i) {
    const std::string tag = std::to_string(i);
    base_units.push_back(make_unit("b" + tag, kBaseStart + std::chrono::days{i % 10}, i,
                                   i % 10 < 2 ? "bad" : "coin", "b" + tag));
    window_units.push_back(make_unit("w" + tag, day, i, i % 10 < 7 ? "bad" : "coin", "w" + tag));
  }
  std::vector<DataUnit> window10(window_units.begin(), window_units.begin() + 10);
  const Baseline b = build_baseline(Dataset(DatasetLabel::benchmark, "T", base_units), lex(), kBaseWindow);
  ASSERT_EQ(b.sentiment.negative, 20.0);
  const auto alert = evaluate_window(b, day_dataset(window10, day), AlertPolicy{}, lex());
  ASSERT_TRUE(alert.has_value());
  EXPECT_EQ(alert->reasons.size(), 1u);
  EXPECT_TRUE(alert->has(AlertReason::negative_spike));
  EXPECT_EQ(alert->reasons[0].observed, 70.0);
  EXPECT_EQ(alert->reasons[0].baseline, 20.0);
  EXPECT_EQ(alert->date, day);
}

TEST(EvaluateWindow, SameDistributionNoAlert) {
  const Dataset b = benchmark(1);
  const Baseline base = build_baseline(b, lex(), kBaseWindow);
  std::vector<DataUnit> day1(b.units().begin(), b.units().begin() + 120);
  EXPECT_FALSE(evaluate_window(base, day_dataset(day1, kBaseStart), AlertPolicy{}, lex()).has_value());
}

TEST(EvaluateWindow, BelowMinUnitsNeverAlerts) {
  const Baseline base = build_baseline(benchmark(2), lex(), kBaseWindow);
  std::vector<DataUnit> five;
  for (int i = 0; i < 5; ++i) five.push_back(make_unit("x" + std::to_string(i), kBaseStart, i, "51 attack bad scared"));
  EXPECT_FALSE(evaluate_window(base, day_dataset(five, kBaseStart), AlertPolicy{}, lex()).has_value());
}

TEST(EvaluateWindow, AttackDayRaisesSeveralReasons) {
  const Baseline base = build_baseline(benchmark(3), lex(), kBaseWindow);
  std::mt19937_64 rng(4);
  const Date day = kBaseStart + std::chrono::days{30};
  const auto units = aw_test::synthetic_day(rng, day, DayMix{360, 0.7, 0.1, 0.8}, "a");
  const auto alert = evaluate_window(base, day_dataset(units, day), AlertPolicy{}, lex());
  ASSERT_TRUE(alert.has_value());
  EXPECT_GE(alert->reasons.size(), 2u);
  EXPECT_TRUE(alert->has(AlertReason::negative_spike));
  EXPECT_TRUE(alert->has(AlertReason::volume_spike));
}

TEST(EvaluateWindow, RaisingThresholdsIsMonotone) {
  const Baseline base = build_baseline(benchmark(5), lex(), kBaseWindow);
  std::mt19937_64 rng(6);
  std::vector<Dataset> windows;
  for (int k = 0; k < 12; ++k) {
    const Date day = kBaseStart + std::chrono::days{40 + k};
    const DayMix mix{static_cast<std::size_t>(60 + 30 * k), 0.1 + 0.06 * k, 0.05 + 0.03 * k, 0.1 * (k % 4)};
    windows.push_back(day_dataset(aw_test::synthetic_day(rng, day, mix, "m"), day));
  }
  const double negs[] = {5, 10, 20, 40, 80};
  const double ratios[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  for (const Dataset& w : windows) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        AlertPolicy p;
        p.negative_jump = negs[i];
        p.volume_ratio = ratios[j];
        const bool fired = evaluate_window(base, w, p, lex()).has_value();
        if (i + 1 < 5 && !fired) {
          AlertPolicy q = p;
          q.negative_jump = negs[i + 1];
          EXPECT_FALSE(evaluate_window(base, w, q, lex()).has_value());
        }
        if (j + 1 < 5 && !fired) {
          AlertPolicy q = p;
          q.volume_ratio = ratios[j + 1];
          EXPECT_FALSE(evaluate_window(base, w, q, lex()).has_value());
        }
      }
    }
  }
}

TEST(WatchSessionTest, StationaryThenAttackDay) {
  const Baseline base = build_baseline(benchmark(7), lex(), kBaseWindow);
  WatchSession session(base, AlertPolicy{}, lex());
  std::mt19937_64 rng(8);
  std::vector<Alert> alerts;
  const Date first = kBaseStart + std::chrono::days{15};
  for (int d = 0; d < 6; ++d) {
    const Date day = first + std::chrono::days{d};
    const DayMix mix = d == 4 ? DayMix{360, 0.7, 0.1, 0.8} : DayMix{120, 0.2, 0.1, 0.0};
    for (const DataUnit& u : aw_test::synthetic_day(rng, day, mix, "s")) {
      for (Alert& a : session.push(u)) alerts.push_back(std::move(a));
    }
  }
  if (auto a = session.flush()) alerts.push_back(*a);
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_EQ(alerts[0].date, first + std::chrono::days{4});
  EXPECT_EQ(session.windows_evaluated(), 6u);
}

TEST(WatchSessionTest, DropsLateDuplicateAndForeignUnits) {
  const Baseline base = build_baseline(benchmark(9), lex(), kBaseWindow);
  WatchSession session(base, AlertPolicy{}, lex());
  const Date day = kBaseStart + std::chrono::days{15};
  (void)session.push(make_unit("1", day + std::chrono::days{1}, 10, "coin", "a"));
  (void)session.push(make_unit("2", day + std::chrono::days{1}, 20, "coin", "a"));  // duplicate
  DataUnit es = make_unit("3", day + std::chrono::days{1}, 30, "moneda", "b");
  es.lang = "es";
  (void)session.push(es);
  (void)session.push(make_unit("4", day + std::chrono::days{2}, 10, "coin", "c"));
  (void)session.push(make_unit("5", day, 10, "coin", "d"));  // window already closed
  EXPECT_EQ(session.units_dropped(), 3u);
  EXPECT_EQ(session.windows_evaluated(), 1u);
}
