#include "attackwatch/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"

namespace attackwatch::report {

using Json = nlohmann::ordered_json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

// Finite numbers go in as JSON numbers, the rest as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json emotions_json(const EmotionIntensity& e) {
  Json j;
  for (Emotion em : kEmotions) j[std::string(to_string(em))] = number(e[em]);
  return j;
}

Json windows_json(const Event& e) {
  Json j = Json::object();
  if (e.analysed()) {
    const EventWindows w = compute_windows(e);
    j["attack_window"] = w.attack.to_string();
    j["benchmark_window"] = w.benchmark.to_string();
  }
  return j;
}

}  // namespace

std::string to_json(const SentimentProfile& p) {
  Json j;
  j["negative"] = number(p.negative);
  j["neutral"] = number(p.neutral);
  j["positive"] = number(p.positive);
  j["n"] = p.n;
  return dump(j);
}

std::string to_json(const EmotionProfile& p) {
  Json j;
  j["n"] = p.n;
  j["intensity"] = emotions_json(p.intensity);
  Json vol;
  for (Emotion em : kEmotions) vol[std::string(to_string(em))] = p.volume[em];
  j["volume"] = vol;
  Json cells;
  for (std::size_t m = 0; m < kCombinationCount; ++m) {
    cells[mask_label(static_cast<CombinationMask>(m))] = p.cells.counts[m];
  }
  j["cells"] = cells;
  return dump(j);
}

std::string to_json(const PeakReport& r) {
  Json j;
  j["event_id"] = r.event_id;
  j["peak_date"] = format_date(r.peak_date);
  j["delay_days"] = r.delay_days;
  j["dominant"] = to_string(r.dominant);
  j["peak_total"] = r.peak_total;
  return dump(j);
}

std::string to_json(const VolumetricReport& r) {
  Json j;
  j["event_id"] = r.event_id;
  j["n_whole"] = r.n_whole;
  j["n_attack"] = r.n_attack;
  j["n_benchmark"] = r.n_benchmark;
  j["attack_share"] = number(r.attack_share);
  j["whole_rate"] = number(r.whole_rate);
  j["benchmark_rate"] = number(r.benchmark_rate);
  j["attention_ratio"] = number(r.attention_ratio);
  j["warnings"] = r.warnings;
  return dump(j);
}

std::string to_json(const Baseline& b) {
  Json j;
  Json s;
  s["negative"] = number(b.sentiment.negative);
  s["neutral"] = number(b.sentiment.neutral);
  s["positive"] = number(b.sentiment.positive);
  j["sentiment"] = s;
  j["fear_mean"] = number(b.fear_mean);
  j["per_day_rate"] = number(b.per_day_rate);
  j["attack_keyword_share"] = number(b.attack_keyword_share);
  j["window"] = {format_date(b.window.start()), format_date(b.window.end())};
  j["n"] = b.n;
  return dump(j);
}

std::string to_json_line(const Alert& a) {
  Json j;
  j["date"] = format_date(a.date);
  if (!a.event_id.empty()) j["event_id"] = a.event_id;
  j["n_units"] = a.n_units;
  Json reasons = Json::array();
  for (const ReasonDetail& r : a.reasons) {
    Json d;
    d["reason"] = to_string(r.reason);
    d["observed"] = number(r.observed);
    d["baseline"] = number(r.baseline);
    d["threshold"] = number(r.threshold);
    reasons.push_back(d);
  }
  j["reasons"] = reasons;
  return j.dump();
}

std::string to_json_line(const Event& e) {
  Json j;
  j["serial"] = e.serial;
  j["event_id"] = e.event_id;
  j["currency"] = e.currency;
  j["ticker"] = e.ticker;
  j["period"] = e.period().to_string();
  j["kind"] = to_string(e.kind);
  j["analysed"] = e.analysed();
  j.update(windows_json(e));
  return j.dump();
}

void write_daily_csv(std::ostream& out, const DailySeries& series) {
  out << "date,negative,neutral,positive,total\n";
  for (const DailyRow& r : series.rows) {
    out << format_date(r.date) << ',' << r.negative << ',' << r.neutral << ',' << r.positive << ','
        << r.total << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const HeatmapMatrix& m) {
  out << "event_id";
  for (std::size_t mask = 0; mask < kCombinationCount; ++mask) {
    out << ',' << mask_label(static_cast<CombinationMask>(mask));
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    out << csv::escape(m.event_ids[i]);
    for (double v : m.rows[i]) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_intensity_csv(std::ostream& out, std::span<const IntensityRow> rows) {
  out << "event_id,dataset_kind,H,A,S,D,F\n";
  for (const IntensityRow& r : rows) {
    out << csv::escape(r.event_id) << ',' << to_string(r.kind);
    for (double v : r.means.values) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_combination_csv(std::ostream& out, const CombinationPartition& cells) {
  out << "mask,cell,count,percent\n";
  for (std::size_t m = 0; m < kCombinationCount; ++m) {
    const auto mask = static_cast<CombinationMask>(m);
    out << m << ',' << mask_label(mask) << ',' << cells.counts[m] << ',' << format_number(cells.percent(mask))
        << '\n';
  }
}

void write_timeline_csv(std::ostream& out, std::span<const Event* const> events) {
  out << "serial,event_id,currency,ticker,start,end,kind,analysed,attack_window,benchmark_window\n";
  for (const Event* e : events) {
    out << e->serial << ',' << e->event_id << ',' << csv::escape(e->currency) << ',' << e->ticker << ','
        << format_date(e->attack_start) << ',' << format_date(e->attack_end) << ',' << to_string(e->kind)
        << ',' << (e->analysed() ? "yes" : "no");
    if (e->analysed()) {
      const EventWindows w = compute_windows(*e);
      out << ',' << csv::escape(w.attack.to_string()) << ',' << csv::escape(w.benchmark.to_string());
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace attackwatch::report
