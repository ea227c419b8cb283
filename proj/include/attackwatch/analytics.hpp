#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "attackwatch/corpus.hpp"
#include "attackwatch/emotion.hpp"
#include "attackwatch/sentiment.hpp"
#include "attackwatch/timeline.hpp"

namespace attackwatch {

struct DailyRow {
  Date date{};
  std::size_t negative = 0;
  std::size_t neutral = 0;
  std::size_t positive = 0;
  std::size_t total = 0;

  std::size_t count(Sentiment s) const;
  friend bool operator==(const DailyRow&, const DailyRow&) = default;
};

/// Per-day sentiment counts over consecutive dates of a window.
struct DailySeries {
  std::string event_id;
  std::vector<DailyRow> rows;
};

/// One row per date of the dataset's window, including days without units.
/// Throws EmptyDatasetError for an empty dataset and PreconditionError when
/// the dataset has no window.
DailySeries daily_series(const Dataset& dataset, const ValenceLexicon& lexicon,
                         const SentimentThresholds& thresholds = {},
                         TextSource source = TextSource::cleaned);

struct PeakReport {
  std::string event_id;
  Date peak_date{};
  long delay_days = 0;  // peak_date - attack end; day 0 is the last attack day
  Sentiment dominant = Sentiment::neutral;
  std::size_t peak_total = 0;
};

/// Busiest day of the series (earliest on ties). The dominant sentiment is the
/// largest class on that day, ties resolved negative, then neutral, then
/// positive. Throws PreconditionError when the series has no units.
PeakReport peak_day(const DailySeries& series, const Event& event);

struct VolumetricReport {
  std::string event_id;
  std::size_t n_whole = 0;
  std::size_t n_attack = 0;
  std::size_t n_benchmark = 0;
  double attack_share = 0.0;       // n_attack / n_whole
  double whole_rate = 0.0;         // units per day over the attack window
  double benchmark_rate = 0.0;     // units per day over the benchmark window
  double attention_ratio = 0.0;    // whole_rate / benchmark_rate; +inf when the benchmark is empty
  std::vector<std::string> warnings;
};

/// Volumes and per-day rates. Throws PreconditionError when `attack` is not a
/// subset of `whole` (by unit id).
VolumetricReport volumetrics(const Dataset& whole, const Dataset& attack, const Dataset& benchmark,
                             const EventWindows& windows);

/// Events by 32 combination-cell percentages; column k is mask k.
struct HeatmapMatrix {
  std::vector<std::string> event_ids;
  std::vector<std::array<double, kCombinationCount>> rows;
  std::vector<CombinationPartition> partitions;
};

/// One row per dataset, labelled by the dataset's event id. Throws
/// EmptyDatasetError naming the event when a dataset is empty.
HeatmapMatrix heatmap_matrix(std::span<const Dataset> datasets, const EmotionLexicon& lexicon);

struct IntensityRow {
  std::string event_id;
  DatasetLabel kind = DatasetLabel::whole;
  EmotionIntensity means;
};

/// Mean emotion intensities for the whole, attack and benchmark datasets of
/// every event, in that order.
std::vector<IntensityRow> intensity_series(std::span<const EventDatasets> events,
                                           const EmotionLexicon& lexicon);

}  // namespace attackwatch
