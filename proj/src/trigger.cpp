#include "attackwatch/trigger.hpp"

#include <cmath>

#include <spdlog/spdlog.h>
#include <yaml-cpp/yaml.h>

#include "attackwatch/emotion.hpp"
#include "attackwatch/errors.hpp"

namespace attackwatch {

void AlertPolicy::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(negative_jump)) throw PreconditionError("negative_jump must be > 0");
  if (!positive(fear_jump)) throw PreconditionError("fear_jump must be > 0");
  if (!positive(volume_ratio)) throw PreconditionError("volume_ratio must be > 0");
  if (min_units < 1) throw PreconditionError("min_units must be >= 1");
  if (window_days < 1) throw PreconditionError("window_days must be >= 1");
}

AlertPolicy AlertPolicy::load(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw InputError("cannot open policy file " + path.string());
  } catch (const YAML::ParserException& e) {
    throw InputError(path.string() + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg,
                     static_cast<std::size_t>(e.mark.line) + 1);
  }
  AlertPolicy p;
  if (root.IsNull()) return p;
  if (!root.IsMap()) throw InputError(path.string() + ": policy must be a mapping");
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    try {
      if (key == "negative_jump") p.negative_jump = v.as<double>();
      else if (key == "fear_jump") p.fear_jump = v.as<double>();
      else if (key == "volume_ratio") p.volume_ratio = v.as<double>();
      else if (key == "min_units") p.min_units = v.as<std::size_t>();
      else if (key == "window_days") p.window_days = v.as<int>();
      else {
        const std::size_t line = static_cast<std::size_t>(kv.first.Mark().line) + 1;
        throw InputError(path.string() + ":" + std::to_string(line) + ": unknown policy field '" + key + "'",
                         line);
      }
    } catch (const YAML::Exception&) {
      const std::size_t line = static_cast<std::size_t>(v.Mark().line) + 1;
      throw InputError(path.string() + ":" + std::to_string(line) + ": bad value for '" + key + "'", line);
    }
  }
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return p;
}

std::string_view to_string(AlertReason reason) {
  switch (reason) {
    case AlertReason::negative_spike: return "negative_spike";
    case AlertReason::fear_spike: return "fear_spike";
    case AlertReason::volume_spike: return "volume_spike";
    case AlertReason::attack_keywords: return "attack_keywords";
  }
  return "unknown";
}

bool Alert::has(AlertReason reason) const {
  for (const ReasonDetail& r : reasons) {
    if (r.reason == reason) return true;
  }
  return false;
}

namespace {

double keyword_share(const Dataset& d) {
  if (d.empty()) return 0.0;
  std::size_t hits = 0;
  for (const DataUnit& u : d.units()) {
    if (mentions_attack(u.text)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(d.size());
}

}  // namespace

Baseline build_baseline(const Dataset& benchmark, const LexiconSet& lexicons, const DateWindow& window,
                        const AlertPolicy& policy, const SentimentThresholds& thresholds) {
  policy.validate();
  if (benchmark.size() < policy.min_units) {
    throw PreconditionError("benchmark has " + std::to_string(benchmark.size()) +
                            " units, fewer than min_units = " + std::to_string(policy.min_units) +
                            "; baseline would be unreliable");
  }
  return Baseline{
      sentiment_profile(benchmark, lexicons.valence, thresholds),
      emotion_intensity(benchmark, lexicons.emotion)[Emotion::fear],
      static_cast<double>(benchmark.size()) / static_cast<double>(window.length_days()),
      keyword_share(benchmark),
      window,
      benchmark.size(),
  };
}

std::optional<Alert> evaluate_window(const Baseline& baseline, const Dataset& window,
                                     const AlertPolicy& policy, const LexiconSet& lexicons,
                                     const SentimentThresholds& thresholds) {
  policy.validate();
  if (window.size() < policy.min_units) {
    spdlog::debug("window with {} units is below min_units = {}; not evaluated", window.size(),
                  policy.min_units);
    return std::nullopt;
  }

  Alert alert;
  alert.n_units = window.size();
  alert.event_id = window.event_id();
  if (window.window()) {
    alert.date = window.window()->start();
  } else {
    alert.date = date_of(window.units().front().timestamp);
    for (const DataUnit& u : window.units()) alert.date = std::min(alert.date, date_of(u.timestamp));
  }

  const SentimentProfile sp = sentiment_profile(window, lexicons.valence, thresholds);
  if (sp.negative - baseline.sentiment.negative > policy.negative_jump) {
    alert.reasons.push_back(
        {AlertReason::negative_spike, sp.negative, baseline.sentiment.negative, policy.negative_jump});
  }
  const double fear = emotion_intensity(window, lexicons.emotion)[Emotion::fear];
  if (fear - baseline.fear_mean > policy.fear_jump) {
    alert.reasons.push_back({AlertReason::fear_spike, fear, baseline.fear_mean, policy.fear_jump});
  }
  const double rate = static_cast<double>(window.size()) / static_cast<double>(policy.window_days);
  const double ratio = baseline.per_day_rate > 0.0 ? rate / baseline.per_day_rate
                                                   : std::numeric_limits<double>::infinity();
  if (ratio > policy.volume_ratio) {
    alert.reasons.push_back({AlertReason::volume_spike, rate, baseline.per_day_rate, policy.volume_ratio});
  }
  const double share = keyword_share(window);
  if (share > kAttackKeywordShare) {
    alert.reasons.push_back(
        {AlertReason::attack_keywords, share, baseline.attack_keyword_share, kAttackKeywordShare});
  }
  if (alert.reasons.empty()) return std::nullopt;
  return alert;
}

// ---------------------------------------------------------------------------

WatchSession::WatchSession(Baseline baseline, AlertPolicy policy, LexiconSet lexicons,
                           SentimentThresholds thresholds, std::optional<Event> topic)
    : baseline_(std::move(baseline)),
      policy_(policy),
      lexicons_(std::move(lexicons)),
      thresholds_(thresholds),
      topic_(std::move(topic)) {
  policy_.validate();
  thresholds_.validate();
}

std::vector<Alert> WatchSession::push(const DataUnit& unit) {
  std::vector<Alert> alerts;
  if (unit.lang && !unit.lang->empty() && !is_english_tag(*unit.lang)) {
    ++dropped_;
    return alerts;
  }
  DataUnit u = unit;
  if (u.raw_text.empty()) u.raw_text = u.text;
  u.text = clean_text(unit.text);
  if (u.text.empty() || (topic_ && !topic_->extra_keywords.empty() && !matches_topic(u.text, *topic_))) {
    ++dropped_;
    return alerts;
  }

  const Date day = date_of(u.timestamp);
  if (!window_start_) window_start_ = day;
  if (day < *window_start_) {
    spdlog::warn("unit {} at {} arrived after its window was closed; dropped", u.id,
                 format_timestamp(u.timestamp));
    ++dropped_;
    return alerts;
  }
  while (day >= *window_start_ + std::chrono::days{policy_.window_days}) {
    if (auto a = close_window()) alerts.push_back(std::move(*a));
  }

  std::string key = u.author;
  key.push_back('\x1f');
  key += u.text;
  if (!seen_.insert(std::move(key)).second) {
    ++dropped_;
    return alerts;
  }
  pending_.push_back(std::move(u));
  return alerts;
}

std::optional<Alert> WatchSession::flush() {
  if (!window_start_ || pending_.empty()) return std::nullopt;
  return close_window();
}

std::optional<Alert> WatchSession::close_window() {
  const DateWindow window(*window_start_, *window_start_ + std::chrono::days{policy_.window_days - 1});
  const Dataset ds(DatasetLabel::whole, topic_ ? topic_->label() : std::string(), std::move(pending_),
                   {"watch"}, window);
  pending_.clear();
  seen_.clear();
  *window_start_ += std::chrono::days{policy_.window_days};
  ++windows_evaluated_;
  return evaluate_window(baseline_, ds, policy_, lexicons_, thresholds_);
}

}  // namespace attackwatch
