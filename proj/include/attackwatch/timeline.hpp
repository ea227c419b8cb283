#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attackwatch/dates.hpp"

namespace attackwatch {

enum class EventKind { actual, threat_or_averted };
enum class BenchmarkDirection { month_before, month_after };

std::string_view to_string(EventKind kind);
std::string_view to_string(BenchmarkDirection direction);

/// Reference figures attached to an analysed event: dataset sizes and the
/// peak day with its dominant sentiment.
struct RecordedFigures {
  std::optional<std::size_t> whole;
  std::optional<std::size_t> attack;
  std::optional<std::size_t> benchmark;
  std::optional<Date> peak_day;
  std::optional<std::string> peak_sentiment;
};

/// One 51% attack (or threat) on a proof-of-work currency.
struct Event {
  int serial = 0;           // position in the full timeline (1-based)
  std::string event_id;     // "E4"; empty for events outside the analysed set
  std::string currency;     // "Bitcoin Gold"
  std::string ticker;       // "BTG"
  Date attack_start{};
  Date attack_end{};
  EventKind kind = EventKind::actual;
  BenchmarkDirection benchmark_direction = BenchmarkDirection::month_before;
  std::vector<std::string> extra_keywords;
  std::optional<DateWindow> recorded_attack_window;
  std::optional<DateWindow> recorded_benchmark_window;
  RecordedFigures recorded;

  bool analysed() const noexcept { return !event_id.empty(); }
  /// event_id when analysed, otherwise "#<serial>".
  std::string label() const;
  DateWindow period() const { return DateWindow(attack_start, attack_end); }
};

/// Throws PreconditionError when an event violates its invariants.
void validate(const Event& event);

struct EventWindows {
  DateWindow attack;
  DateWindow benchmark;
};

/// Data-collection windows following the rule: the attack window runs from
/// one day before the start until six days after the end; the benchmark window
/// is the attack window moved one calendar month in the event's benchmark
/// direction. Recorded windows are ignored.
EventWindows derived_windows(const Event& event);

/// Windows used for analysis: recorded windows where present, otherwise the
/// derived ones.
EventWindows compute_windows(const Event& event);

/// Chronologically ordered set of events.
class Timeline {
 public:
  Timeline() = default;
  explicit Timeline(std::vector<Event> events);

  /// Loads the YAML timeline file; errors carry the offending line.
  static Timeline load(const std::filesystem::path& path);
  static Timeline parse(std::string_view yaml_text, std::string_view source_name = "<timeline>");

  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  /// Looks up an analysed event by id ("E4", case-insensitive) or a timeline
  /// entry by "#<serial>".
  const Event* find(std::string_view id) const;
  /// Like find(), but throws InputError listing the known ids.
  const Event& at(std::string_view id) const;

  std::vector<std::string> analysed_ids() const;
  std::vector<const Event*> analysed() const;

  /// Number of events per currency, as in the per-currency attack count.
  std::map<std::string, std::size_t> attacks_per_currency() const;

 private:
  std::vector<Event> events_;
};

}  // namespace attackwatch
