#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "attackwatch/analytics.hpp"
#include "attackwatch/emotion.hpp"
#include "attackwatch/sentiment.hpp"
#include "attackwatch/timeline.hpp"
#include "attackwatch/trigger.hpp"

// Plot-ready serialisation of analysis results. Output is deterministic:
// fixed key order, shortest round-trip number formatting, '\n' line ends.
namespace attackwatch::report {

/// Shortest decimal text that parses back to `value`; "+inf", "-inf", "nan"
/// for non-finite values.
std::string format_number(double value);

// JSON documents, pretty-printed with two-space indentation.
std::string to_json(const SentimentProfile& profile);
std::string to_json(const EmotionProfile& profile);
std::string to_json(const PeakReport& report);
std::string to_json(const VolumetricReport& report);
std::string to_json(const Baseline& baseline);
/// Single line, for the one-alert-per-line watch output.
std::string to_json_line(const Alert& alert);

/// One timeline row as a single-line JSON object.
std::string to_json_line(const Event& event);

void write_daily_csv(std::ostream& out, const DailySeries& series);
void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& matrix);
void write_intensity_csv(std::ostream& out, std::span<const IntensityRow> rows);
/// mask,cell,count,percent for all 32 cells in mask order.
void write_combination_csv(std::ostream& out, const CombinationPartition& cells);
/// serial,event_id,currency,ticker,start,end,kind,analysed,attack_window,benchmark_window
void write_timeline_csv(std::ostream& out, std::span<const Event* const> events);

}  // namespace attackwatch::report
