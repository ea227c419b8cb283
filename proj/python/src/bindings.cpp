#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "attackwatch/analytics.hpp"
#include "attackwatch/corpus.hpp"
#include "attackwatch/emotion.hpp"
#include "attackwatch/errors.hpp"
#include "attackwatch/lexicons.hpp"
#include "attackwatch/sentiment.hpp"
#include "attackwatch/timeline.hpp"
#include "attackwatch/trigger.hpp"

namespace py = pybind11;
using namespace attackwatch;

namespace {

// Dates cross the boundary as ISO strings.
py::tuple window_tuple(const DateWindow& w) { return py::make_tuple(format_date(w.start()), format_date(w.end())); }

py::dict sentiment_dict(const SentimentProfile& p) {
  py::dict d;
  d["negative"] = p.negative;
  d["neutral"] = p.neutral;
  d["positive"] = p.positive;
  d["n"] = p.n;
  return d;
}

py::dict intensity_dict(const EmotionIntensity& e) {
  py::dict d;
  for (Emotion em : kEmotions) d[py::str(std::string(to_string(em)))] = e[em];
  return d;
}

py::dict emotion_dict(const EmotionProfile& p) {
  py::dict volume, cells;
  for (Emotion em : kEmotions) volume[py::str(std::string(to_string(em)))] = p.volume[em];
  for (std::size_t m = 0; m < kCombinationCount; ++m) {
    cells[py::str(mask_label(static_cast<CombinationMask>(m)))] = p.cells.counts[m];
  }
  py::dict d;
  d["n"] = p.n;
  d["intensity"] = intensity_dict(p.intensity);
  d["volume"] = volume;
  d["cells"] = cells;
  return d;
}

py::dict unit_dict(const DataUnit& u) {
  py::dict d;
  d["id"] = u.id;
  d["author"] = u.author;
  d["created_at"] = format_timestamp(u.timestamp);
  d["text"] = u.text;
  d["lang"] = u.lang ? py::object(py::str(*u.lang)) : py::object(py::none());
  return d;
}

DataUnit unit_from_dict(const py::dict& d) {
  DataUnit u;
  u.id = py::str(d["id"]);
  u.author = d.contains("author") ? std::string(py::str(d["author"])) : std::string();
  u.timestamp = parse_timestamp(std::string(py::str(d["created_at"])));
  u.text = py::str(d["text"]);
  u.raw_text = u.text;
  if (d.contains("lang") && !d["lang"].is_none()) u.lang = std::string(py::str(d["lang"]));
  return u;
}

py::dict alert_dict(const Alert& a) {
  py::list reasons;
  for (const ReasonDetail& r : a.reasons) {
    py::dict d;
    d["reason"] = std::string(to_string(r.reason));
    d["observed"] = r.observed;
    d["baseline"] = r.baseline;
    d["threshold"] = r.threshold;
    reasons.append(d);
  }
  py::dict d;
  d["date"] = format_date(a.date);
  d["n_units"] = a.n_units;
  d["reasons"] = reasons;
  return d;
}

std::optional<DateWindow> window_from(const std::optional<std::pair<std::string, std::string>>& w) {
  if (!w) return std::nullopt;
  return DateWindow(parse_date(w->first), parse_date(w->second));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sentiment, emotion and volume profiling of social-media reaction to 51% attacks";

  static py::exception<Error> base_error(m, "Error", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", base_error.ptr());
  py::register_exception<EmptyDatasetError>(m, "EmptyDatasetError", base_error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base_error.ptr());

  // timeline ---------------------------------------------------------------
  py::class_<Event>(m, "Event")
      .def_readonly("serial", &Event::serial)
      .def_readonly("event_id", &Event::event_id)
      .def_readonly("currency", &Event::currency)
      .def_readonly("ticker", &Event::ticker)
      .def_property_readonly("attack_start", [](const Event& e) { return format_date(e.attack_start); })
      .def_property_readonly("attack_end", [](const Event& e) { return format_date(e.attack_end); })
      .def_property_readonly("kind", [](const Event& e) { return std::string(to_string(e.kind)); })
      .def_property_readonly("analysed", &Event::analysed)
      .def_property_readonly("label", &Event::label)
      .def("windows",
           [](const Event& e) {
             const EventWindows w = compute_windows(e);
             py::dict d;
             d["attack"] = window_tuple(w.attack);
             d["benchmark"] = window_tuple(w.benchmark);
             return d;
           })
      .def("__repr__", [](const Event& e) { return "<Event " + e.label() + " " + e.currency + " " + e.period().to_string() + ">"; });

  py::class_<Timeline>(m, "Timeline")
      .def_static("load", &Timeline::load, py::arg("path"))
      .def_static("parse", [](const std::string& text) { return Timeline::parse(text); }, py::arg("yaml_text"))
      .def_property_readonly("events", [](const Timeline& t) { return std::vector<Event>(t.events().begin(), t.events().end()); })
      .def("at", &Timeline::at, py::arg("id"), py::return_value_policy::copy)
      .def("analysed_ids", &Timeline::analysed_ids)
      .def("attacks_per_currency", &Timeline::attacks_per_currency)
      .def("__len__", &Timeline::size);

  m.def("format_window", [](const std::string& start, const std::string& end) {
    return DateWindow(parse_date(start), parse_date(end)).to_string();
  }, py::arg("start"), py::arg("end"), "Display form '(15 May 2018, 25 May 2018)' of an ISO date pair.");

  // lexicons and scoring -----------------------------------------------------
  py::class_<LexiconSet>(m, "LexiconSet")
      .def_static("load", &LexiconSet::load, py::arg("directory"))
      .def_property_readonly("valence_size", [](const LexiconSet& l) { return l.valence.size(); })
      .def_property_readonly("emotion_size", [](const LexiconSet& l) { return l.emotion.size(); });

  m.def("clean_text", &clean_text, py::arg("raw"));
  m.def("valence_sum", [](const std::string& text, const LexiconSet& l) { return valence_sum(text, l.valence); },
        py::arg("text"), py::arg("lexicons"));
  m.def("score_valence", [](const std::string& text, const LexiconSet& l) { return score_valence(text, l.valence); },
        py::arg("text"), py::arg("lexicons"));
  m.def("normalize_valence", &normalize_valence, py::arg("sum"), py::arg("alpha") = valence_rules::kNormalizationAlpha);
  m.def("classify",
        [](double s, double delta_p, double delta_n) { return std::string(to_string(classify(s, {delta_p, delta_n}))); },
        py::arg("score"), py::arg("delta_p") = 0.0, py::arg("delta_n") = 0.0);
  m.def("score_emotions",
        [](const std::string& text, const LexiconSet& l) { return intensity_dict(score_emotions(text, l.emotion)); },
        py::arg("text"), py::arg("lexicons"));
  m.def("mask_label", [](unsigned mask) {
    if (mask >= kCombinationCount) throw PreconditionError("mask must be below 32");
    return mask_label(static_cast<CombinationMask>(mask));
  }, py::arg("mask"));

  // datasets -----------------------------------------------------------------
  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const std::vector<py::dict>& records, const std::string& label, const std::string& event_id,
                       const std::optional<std::pair<std::string, std::string>>& window) {
             std::vector<DataUnit> units;
             for (const py::dict& r : records) units.push_back(unit_from_dict(r));
             return Dataset(dataset_label_from_string(label), event_id, std::move(units), {}, window_from(window));
           }),
           py::arg("records"), py::arg("label") = "whole", py::arg("event_id") = "", py::arg("window") = py::none())
      .def_property_readonly("label", [](const Dataset& d) { return std::string(to_string(d.label())); })
      .def_property_readonly("event_id", &Dataset::event_id)
      .def_property_readonly("window", [](const Dataset& d) -> py::object {
        return d.window() ? py::object(window_tuple(*d.window())) : py::object(py::none());
      })
      .def_property_readonly("provenance", &Dataset::provenance)
      .def("records", [](const Dataset& d) {
        py::list out;
        for (const DataUnit& u : d.units()) out.append(unit_dict(u));
        return out;
      })
      .def("__len__", &Dataset::size);

  m.def("load_corpus", [](const std::filesystem::path& path) {
    LoadResult r = load_corpus(path, corpus_format_for(path));
    py::list errors;
    for (const RecordError& e : r.errors) errors.append(py::make_tuple(e.line, e.message));
    return py::make_tuple(r.dataset, errors);
  }, py::arg("path"), "Returns (dataset, [(line, message), ...]).");
  m.def("clean_dataset", &clean_dataset, py::arg("dataset"));
  m.def("filter_topic", &filter_topic, py::arg("dataset"), py::arg("event"));
  m.def("extract_attack_subset", &extract_attack_subset, py::arg("dataset"));
  m.def("slice_window", [](const Dataset& d, const std::string& start, const std::string& end) {
    return slice_window(d, DateWindow(parse_date(start), parse_date(end)));
  }, py::arg("dataset"), py::arg("start"), py::arg("end"));
  m.def("prepare_event_datasets", [](const Dataset& whole, const Dataset& benchmark, const Event& e) {
    EventDatasets ds = prepare_event_datasets(whole, benchmark, e);
    return py::make_tuple(ds.whole, ds.attack, ds.benchmark);
  }, py::arg("whole_source"), py::arg("benchmark_source"), py::arg("event"), "Returns (whole, attack, benchmark).");

  // profiles and analytics ----------------------------------------------------
  m.def("sentiment_profile", [](const Dataset& d, const LexiconSet& l, double delta_p, double delta_n) {
    return sentiment_dict(sentiment_profile(d, l.valence, {delta_p, delta_n}));
  }, py::arg("dataset"), py::arg("lexicons"), py::arg("delta_p") = 0.0, py::arg("delta_n") = 0.0);
  m.def("emotion_profile", [](const Dataset& d, const LexiconSet& l) { return emotion_dict(emotion_profile(d, l.emotion)); },
        py::arg("dataset"), py::arg("lexicons"));

  m.def("daily_series", [](const Dataset& d, const LexiconSet& l) {
    py::list rows;
    for (const DailyRow& r : daily_series(d, l.valence).rows) {
      py::dict row;
      row["date"] = format_date(r.date);
      row["negative"] = r.negative;
      row["neutral"] = r.neutral;
      row["positive"] = r.positive;
      row["total"] = r.total;
      rows.append(row);
    }
    return rows;
  }, py::arg("dataset"), py::arg("lexicons"));
  m.def("peak_day", [](const Dataset& d, const LexiconSet& l, const Event& e) {
    const PeakReport r = peak_day(daily_series(d, l.valence), e);
    py::dict out;
    out["event_id"] = r.event_id;
    out["peak_date"] = format_date(r.peak_date);
    out["delay_days"] = r.delay_days;
    out["dominant"] = std::string(to_string(r.dominant));
    out["peak_total"] = r.peak_total;
    return out;
  }, py::arg("dataset"), py::arg("lexicons"), py::arg("event"));
  m.def("volumetrics", [](const Dataset& whole, const Dataset& attack, const Dataset& benchmark, const Event& e) {
    const VolumetricReport r = volumetrics(whole, attack, benchmark, compute_windows(e));
    py::dict out;
    out["event_id"] = r.event_id;
    out["n_whole"] = r.n_whole;
    out["n_attack"] = r.n_attack;
    out["n_benchmark"] = r.n_benchmark;
    out["attack_share"] = r.attack_share;
    out["whole_rate"] = r.whole_rate;
    out["benchmark_rate"] = r.benchmark_rate;
    out["attention_ratio"] = r.attention_ratio;
    out["warnings"] = r.warnings;
    return out;
  }, py::arg("whole"), py::arg("attack"), py::arg("benchmark"), py::arg("event"));
  m.def("heatmap_matrix", [](const std::vector<Dataset>& datasets, const LexiconSet& l) {
    const HeatmapMatrix h = heatmap_matrix(datasets, l.emotion);
    std::vector<std::string> columns;
    for (std::size_t k = 0; k < kCombinationCount; ++k) columns.push_back(mask_label(static_cast<CombinationMask>(k)));
    py::dict out;
    out["columns"] = columns;
    out["event_ids"] = h.event_ids;
    std::vector<std::vector<double>> rows;
    for (const auto& r : h.rows) rows.emplace_back(r.begin(), r.end());
    out["rows"] = rows;
    return out;
  }, py::arg("datasets"), py::arg("lexicons"));

  // trigger --------------------------------------------------------------------
  py::class_<AlertPolicy>(m, "AlertPolicy")
      .def(py::init<>())
      .def_static("load", &AlertPolicy::load, py::arg("path"))
      .def_readwrite("negative_jump", &AlertPolicy::negative_jump)
      .def_readwrite("fear_jump", &AlertPolicy::fear_jump)
      .def_readwrite("volume_ratio", &AlertPolicy::volume_ratio)
      .def_readwrite("min_units", &AlertPolicy::min_units)
      .def_readwrite("window_days", &AlertPolicy::window_days)
      .def("validate", &AlertPolicy::validate);

  py::class_<Baseline>(m, "Baseline")
      .def_property_readonly("sentiment", [](const Baseline& b) { return sentiment_dict(b.sentiment); })
      .def_readonly("fear_mean", &Baseline::fear_mean)
      .def_readonly("per_day_rate", &Baseline::per_day_rate)
      .def_readonly("attack_keyword_share", &Baseline::attack_keyword_share)
      .def_readonly("n", &Baseline::n)
      .def_property_readonly("window", [](const Baseline& b) { return window_tuple(b.window); });

  m.def("build_baseline", [](const Dataset& benchmark, const LexiconSet& l, const std::string& start,
                             const std::string& end, const AlertPolicy& p) {
    return build_baseline(benchmark, l, DateWindow(parse_date(start), parse_date(end)), p);
  }, py::arg("benchmark"), py::arg("lexicons"), py::arg("start"), py::arg("end"), py::arg("policy") = AlertPolicy{});
  m.def("evaluate_window", [](const Baseline& b, const Dataset& w, const AlertPolicy& p, const LexiconSet& l) -> py::object {
    const auto alert = evaluate_window(b, w, p, l);
    return alert ? py::object(alert_dict(*alert)) : py::object(py::none());
  }, py::arg("baseline"), py::arg("window"), py::arg("policy"), py::arg("lexicons"));

  py::class_<WatchSession>(m, "WatchSession")
      .def(py::init([](const Baseline& b, const AlertPolicy& p, const LexiconSet& l, std::optional<Event> topic) {
             return WatchSession(b, p, l, {}, std::move(topic));
           }),
           py::arg("baseline"), py::arg("policy"), py::arg("lexicons"), py::arg("topic") = py::none())
      .def("push", [](WatchSession& s, const py::dict& record) {
        py::list out;
        for (const Alert& a : s.push(unit_from_dict(record))) out.append(alert_dict(a));
        return out;
      }, py::arg("record"))
      .def("flush", [](WatchSession& s) -> py::object {
        auto a = s.flush();
        return a ? py::object(alert_dict(*a)) : py::object(py::none());
      })
      .def_property_readonly("windows_evaluated", &WatchSession::windows_evaluated)
      .def_property_readonly("units_dropped", &WatchSession::units_dropped);
}
