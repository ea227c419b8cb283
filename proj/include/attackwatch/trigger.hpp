#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "attackwatch/corpus.hpp"
#include "attackwatch/lexicons.hpp"
#include "attackwatch/sentiment.hpp"
#include "attackwatch/timeline.hpp"

namespace attackwatch {

/// Thresholds of the deviation trigger. The defaults are policy choices, not
/// measured constants.
struct AlertPolicy {
  double negative_jump = 20.0;  // percentage points above the baseline negative share
  double fear_jump = 0.1;       // absolute increase of mean fear intensity
  double volume_ratio = 2.0;    // window per-day rate over baseline per-day rate
  std::size_t min_units = 10;   // smaller windows are never evaluated
  int window_days = 1;

  void validate() const;

  /// Reads a YAML mapping with any of the field names above; missing fields
  /// keep their defaults.
  static AlertPolicy load(const std::filesystem::path& path);
};

/// A window alerts on attack keywords when more than this share of its units
/// mention the attack.
inline constexpr double kAttackKeywordShare = 0.5;

/// Norm derived from a benchmark dataset.
struct Baseline {
  SentimentProfile sentiment;
  double fear_mean = 0.0;
  double per_day_rate = 0.0;
  double attack_keyword_share = 0.0;
  DateWindow window;
  std::size_t n = 0;
};

/// Throws PreconditionError when the benchmark has fewer than
/// `policy.min_units` units.
Baseline build_baseline(const Dataset& benchmark, const LexiconSet& lexicons, const DateWindow& window,
                        const AlertPolicy& policy = {}, const SentimentThresholds& thresholds = {});

enum class AlertReason { negative_spike, fear_spike, volume_spike, attack_keywords };
std::string_view to_string(AlertReason reason);

struct ReasonDetail {
  AlertReason reason;
  double observed = 0.0;
  double baseline = 0.0;
  double threshold = 0.0;
};

struct Alert {
  Date date{};
  std::vector<ReasonDetail> reasons;
  std::size_t n_units = 0;
  std::string event_id;

  bool has(AlertReason reason) const;
};

/// Compares one window against the baseline. Every satisfied condition is
/// listed: negative share up by more than negative_jump, mean fear up by more
/// than fear_jump, per-day rate ratio above volume_ratio, attack-keyword share
/// above kAttackKeywordShare. Returns nothing when no condition holds or the
/// window has fewer than min_units units. The alert date is the window start
/// (or the earliest unit date when the dataset carries no window).
std::optional<Alert> evaluate_window(const Baseline& baseline, const Dataset& window,
                                     const AlertPolicy& policy, const LexiconSet& lexicons,
                                     const SentimentThresholds& thresholds = {});

/// Streaming front end to evaluate_window(). Units are cleaned on arrival
/// (non-English dropped, text cleaned, duplicates within a window removed,
/// optional topic filter) and grouped into consecutive windows of
/// `policy.window_days` days starting at the first unit's date. A window is
/// evaluated once a unit past its end arrives, or on flush().
class WatchSession {
 public:
  WatchSession(Baseline baseline, AlertPolicy policy, LexiconSet lexicons,
               SentimentThresholds thresholds = {}, std::optional<Event> topic = std::nullopt);

  /// Feeds one unit; returns alerts for every window the unit closed.
  std::vector<Alert> push(const DataUnit& unit);
  /// Evaluates the open window, if any.
  std::optional<Alert> flush();

  std::size_t windows_evaluated() const noexcept { return windows_evaluated_; }
  std::size_t units_dropped() const noexcept { return dropped_; }

 private:
  std::optional<Alert> close_window();

  Baseline baseline_;
  AlertPolicy policy_;
  LexiconSet lexicons_;
  SentimentThresholds thresholds_;
  std::optional<Event> topic_;

  std::optional<Date> window_start_;
  std::vector<DataUnit> pending_;
  std::unordered_set<std::string> seen_;
  std::size_t windows_evaluated_ = 0;
  std::size_t dropped_ = 0;
};

}  // namespace attackwatch
