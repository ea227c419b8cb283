#include "attackwatch/analytics.hpp"

#include <limits>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "attackwatch/errors.hpp"

namespace attackwatch {

std::size_t DailyRow::count(Sentiment s) const {
  switch (s) {
    case Sentiment::negative: return negative;
    case Sentiment::neutral: return neutral;
    case Sentiment::positive: return positive;
  }
  return 0;
}

DailySeries daily_series(const Dataset& dataset, const ValenceLexicon& lexicon,
                         const SentimentThresholds& thresholds, TextSource source) {
  if (dataset.empty()) {
    throw EmptyDatasetError("daily series of an empty dataset" +
                            (dataset.event_id().empty() ? std::string() : " for " + dataset.event_id()));
  }
  if (!dataset.window()) throw PreconditionError("daily series needs a dataset with a date window");
  thresholds.validate();

  const DateWindow& window = *dataset.window();
  DailySeries series;
  series.event_id = dataset.event_id();
  series.rows.resize(static_cast<std::size_t>(window.length_days()));
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    series.rows[i].date = window.start() + std::chrono::days{static_cast<long>(i)};
  }
  for (const DataUnit& u : dataset.units()) {
    DailyRow& row = series.rows[static_cast<std::size_t>(days_between(window.start(), date_of(u.timestamp)))];
    switch (classify(score_valence(text_of(u, source), lexicon), thresholds)) {
      case Sentiment::negative: ++row.negative; break;
      case Sentiment::neutral: ++row.neutral; break;
      case Sentiment::positive: ++row.positive; break;
    }
    ++row.total;
  }
  return series;
}

PeakReport peak_day(const DailySeries& series, const Event& event) {
  const DailyRow* peak = nullptr;
  for (const DailyRow& row : series.rows) {
    if (peak == nullptr || row.total > peak->total) peak = &row;
  }
  if (peak == nullptr || peak->total == 0) {
    throw PreconditionError("peak day of a series without units" +
                            (series.event_id.empty() ? std::string() : " for " + series.event_id));
  }
  Sentiment dominant = Sentiment::negative;
  for (Sentiment s : {Sentiment::neutral, Sentiment::positive}) {
    if (peak->count(s) > peak->count(dominant)) dominant = s;
  }
  PeakReport report;
  report.event_id = series.event_id.empty() ? event.label() : series.event_id;
  report.peak_date = peak->date;
  report.delay_days = days_between(event.attack_end, peak->date);
  report.dominant = dominant;
  report.peak_total = peak->total;
  return report;
}

VolumetricReport volumetrics(const Dataset& whole, const Dataset& attack, const Dataset& benchmark,
                             const EventWindows& windows) {
  const long attack_days = windows.attack.length_days();
  const long benchmark_days = windows.benchmark.length_days();
  if (attack_days <= 0 || benchmark_days <= 0) throw PreconditionError("zero-length window");

  std::unordered_set<std::string> whole_ids;
  for (const DataUnit& u : whole.units()) whole_ids.insert(u.id);
  for (const DataUnit& u : attack.units()) {
    if (!whole_ids.contains(u.id)) {
      throw PreconditionError("attack unit " + u.id + " is not part of the whole dataset");
    }
  }

  VolumetricReport r;
  r.event_id = whole.event_id();
  r.n_whole = whole.size();
  r.n_attack = attack.size();
  r.n_benchmark = benchmark.size();
  r.whole_rate = static_cast<double>(r.n_whole) / static_cast<double>(attack_days);
  r.benchmark_rate = static_cast<double>(r.n_benchmark) / static_cast<double>(benchmark_days);

  if (r.n_whole == 0) {
    r.attack_share = 0.0;
    r.warnings.push_back("whole dataset is empty; attack share reported as 0");
  } else {
    r.attack_share = static_cast<double>(r.n_attack) / static_cast<double>(r.n_whole);
  }
  if (r.n_benchmark == 0) {
    r.attention_ratio = std::numeric_limits<double>::infinity();
    r.warnings.push_back("benchmark dataset is empty; attention ratio is unbounded");
  } else {
    r.attention_ratio = r.whole_rate / r.benchmark_rate;
  }
  for (const std::string& w : r.warnings) spdlog::warn("volumetrics {}: {}", r.event_id, w);
  return r;
}

HeatmapMatrix heatmap_matrix(std::span<const Dataset> datasets, const EmotionLexicon& lexicon) {
  HeatmapMatrix m;
  for (const Dataset& d : datasets) {
    if (d.empty()) {
      throw EmptyDatasetError("heat map: " + std::string(to_string(d.label())) + " dataset for event " +
                              (d.event_id().empty() ? std::string("<unnamed>") : d.event_id()) +
                              " is empty");
    }
    const CombinationPartition p = combination_partition(d, lexicon);
    std::array<double, kCombinationCount> row{};
    for (std::size_t mask = 0; mask < kCombinationCount; ++mask) {
      row[mask] = p.percent(static_cast<CombinationMask>(mask));
    }
    m.event_ids.push_back(d.event_id());
    m.rows.push_back(row);
    m.partitions.push_back(p);
  }
  return m;
}

std::vector<IntensityRow> intensity_series(std::span<const EventDatasets> events,
                                           const EmotionLexicon& lexicon) {
  std::vector<IntensityRow> rows;
  rows.reserve(events.size() * 3);
  for (const EventDatasets& e : events) {
    const std::pair<DatasetLabel, const Dataset*> kinds[] = {
        {DatasetLabel::whole, &e.whole}, {DatasetLabel::attack, &e.attack},
        {DatasetLabel::benchmark, &e.benchmark}};
    for (const auto& [kind, d] : kinds) {
      if (d->empty()) {
        throw EmptyDatasetError("intensity series: " + std::string(to_string(kind)) +
                                " dataset for event " + e.whole.event_id() + " is empty");
      }
      rows.push_back({e.whole.event_id(), kind, emotion_intensity(*d, lexicon)});
    }
  }
  return rows;
}

}  // namespace attackwatch
