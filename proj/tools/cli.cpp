#include "cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>
#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "attackwatch/analytics.hpp"
#include "attackwatch/corpus.hpp"
#include "attackwatch/errors.hpp"
#include "attackwatch/lexicons.hpp"
#include "attackwatch/report.hpp"
#include "attackwatch/timeline.hpp"
#include "attackwatch/trigger.hpp"

#ifndef ATTACKWATCH_DATA_DIR
#define ATTACKWATCH_DATA_DIR "data"
#endif

namespace attackwatch::cli {
namespace fs = std::filesystem;

fs::path default_data_dir() {
  if (const char* env = std::getenv("ATTACKWATCH_DATA"); env != nullptr && *env != '\0') return env;
  return ATTACKWATCH_DATA_DIR;
}

namespace {

// Routes library logging to the caller's error stream for one run.
class LogGuard {
 public:
  LogGuard(std::ostream& err, bool verbose) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    sink->set_pattern("attackwatch: %l: %v");
    auto logger = std::make_shared<spdlog::logger>("attackwatch", sink);
    logger->set_level(verbose ? spdlog::level::debug : spdlog::level::warn);
    spdlog::set_default_logger(logger);
  }
  ~LogGuard() { spdlog::set_default_logger(previous_); }
  LogGuard(const LogGuard&) = delete;
  LogGuard& operator=(const LogGuard&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

struct Context {
  RunConfig config;
  std::istream& in;
  std::ostream& out;
  mutable std::optional<Timeline> timeline;
};

void require_exists(const fs::path& path, const char* what) {
  if (!fs::exists(path)) throw InputError(std::string(what) + " not found: " + path.string());
}

Dataset read_dataset(const fs::path& path, DatasetLabel label) {
  require_exists(path, "corpus");
  LoadResult r = load_corpus(path, corpus_format_for(path));
  for (const RecordError& e : r.errors) spdlog::warn("{}:{}: {}", path.string(), e.line, e.message);
  return r.dataset.with_label(label);
}

Dataset empty_dataset(DatasetLabel label, const std::string& event_id) {
  return Dataset(label, event_id, {});
}

// Writes to <out_dir>/<name> when an output directory is set, else to stdout.
void emit(const Context& ctx, const std::string& name, const std::function<void(std::ostream&)>& body) {
  if (!ctx.config.out_dir) {
    body(ctx.out);
    return;
  }
  const fs::path path = *ctx.config.out_dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path.string());
  body(file);
  if (!file) throw InputError("write failed: " + path.string());
}

const Timeline& timeline_of(const Context& ctx) {
  if (!ctx.timeline) {
    require_exists(ctx.config.timeline, "timeline");
    ctx.timeline = Timeline::load(ctx.config.timeline);
  }
  return *ctx.timeline;
}

LexiconSet lexicons_of(const Context& ctx) {
  require_exists(ctx.config.lexicons, "lexicon directory");
  return LexiconSet::load(ctx.config.lexicons);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// ---------------------------------------------------------------------------
// timeline

struct TimelineArgs {
  std::string currency;
  bool analysed_only = false;
  bool multi = false;
};

int cmd_timeline(const Context& ctx, const TimelineArgs& a) {
  const Timeline& tl = timeline_of(ctx);
  const auto per_currency = tl.attacks_per_currency();
  std::vector<const Event*> rows;
  for (const Event& e : tl.events()) {
    if (a.analysed_only && !e.analysed()) continue;
    if (a.multi && per_currency.at(e.currency) < 2) continue;
    if (!a.currency.empty() && lower(a.currency) != lower(e.currency) && lower(a.currency) != lower(e.ticker)) {
      continue;
    }
    rows.push_back(&e);
  }
  emit(ctx, ctx.config.format == OutputFormat::csv ? "timeline.csv" : "timeline.jsonl", [&](std::ostream& os) {
    if (ctx.config.format == OutputFormat::csv) {
      report::write_timeline_csv(os, rows);
    } else {
      for (const Event* e : rows) os << report::to_json_line(*e) << '\n';
    }
  });
  return 0;
}

// ---------------------------------------------------------------------------
// clean

struct CleanArgs {
  fs::path input;
  std::string event;
  std::string kind = "whole";
};

int cmd_clean(const Context& ctx, const CleanArgs& a) {
  Dataset d = clean_dataset(read_dataset(a.input, DatasetLabel::whole));
  if (!a.event.empty()) {
    const Event& e = timeline_of(ctx).at(a.event);
    const EventWindows w = compute_windows(e);
    const DatasetLabel label = dataset_label_from_string(a.kind);
    if (label == DatasetLabel::attack) {
      d = extract_attack_subset(slice_window(filter_topic(d, e), w.attack));
    } else {
      d = slice_window(filter_topic(d, e), label == DatasetLabel::benchmark ? w.benchmark : w.attack);
    }
    d = d.with_label(label).with_event(e.label());
  }
  spdlog::info("{} units kept", d.size());
  const bool csv = ctx.config.format == OutputFormat::csv;
  const std::string name = a.input.stem().string() + ".clean" + (csv ? ".csv" : ".jsonl");
  emit(ctx, name, [&](std::ostream& os) { csv ? write_csv(os, d) : write_jsonl(os, d); });
  return 0;
}

// ---------------------------------------------------------------------------
// profile / peaks / volumetrics

struct EventArgs {
  std::string event;
  fs::path whole;
  fs::path benchmark;
  std::string dataset = "attack";
};

EventDatasets prepare(const Event& e, const EventArgs& a) {
  const Dataset whole = read_dataset(a.whole, DatasetLabel::whole);
  const Dataset bench =
      a.benchmark.empty() ? empty_dataset(DatasetLabel::benchmark, e.label()) : read_dataset(a.benchmark, DatasetLabel::benchmark);
  return prepare_event_datasets(whole, bench, e);
}

int cmd_profile(const Context& ctx, const EventArgs& a) {
  if (!ctx.config.out_dir) throw InputError("profile writes several files; --out is required");
  const Event& e = timeline_of(ctx).at(a.event);
  if (a.benchmark.empty()) throw InputError("profile needs --benchmark");
  const LexiconSet lex = lexicons_of(ctx);
  const EventDatasets ds = prepare(e, a);
  for (const Dataset* d : {&ds.whole, &ds.attack, &ds.benchmark}) {
    const std::string kind(to_string(d->label()));
    if (d->empty()) throw EmptyDatasetError(e.label() + " " + kind + " dataset is empty after filtering");
    const std::string stem = e.label() + "_" + kind;
    const SentimentProfile sp = sentiment_profile(*d, lex.valence);
    const EmotionProfile ep = emotion_profile(*d, lex.emotion);
    emit(ctx, stem + "_sentiment.json", [&](std::ostream& os) { os << report::to_json(sp); });
    emit(ctx, stem + "_emotion.json", [&](std::ostream& os) { os << report::to_json(ep); });
    emit(ctx, stem + "_combinations.csv", [&](std::ostream& os) { report::write_combination_csv(os, ep.cells); });
  }
  return 0;
}

int cmd_peaks(const Context& ctx, const EventArgs& a) {
  const Event& e = timeline_of(ctx).at(a.event);
  const LexiconSet lex = lexicons_of(ctx);
  const EventDatasets ds = prepare(e, a);
  const Dataset& d = dataset_label_from_string(a.dataset) == DatasetLabel::whole ? ds.whole : ds.attack;
  const DailySeries series = daily_series(d, lex.valence);
  const PeakReport peak = peak_day(series, e);
  const bool both = ctx.config.out_dir.has_value();
  if (both || ctx.config.format == OutputFormat::json) {
    emit(ctx, e.label() + "_peak.json", [&](std::ostream& os) { os << report::to_json(peak); });
  }
  if (both || ctx.config.format == OutputFormat::csv) {
    emit(ctx, e.label() + "_daily.csv", [&](std::ostream& os) { report::write_daily_csv(os, series); });
  }
  return 0;
}

int cmd_volumetrics(const Context& ctx, const EventArgs& a) {
  const Event& e = timeline_of(ctx).at(a.event);
  if (a.benchmark.empty()) throw InputError("volumetrics needs --benchmark");
  const EventDatasets ds = prepare(e, a);
  const VolumetricReport r = volumetrics(ds.whole, ds.attack, ds.benchmark, compute_windows(e));
  if (ctx.config.format == OutputFormat::json) {
    emit(ctx, e.label() + "_volumetrics.json", [&](std::ostream& os) { os << report::to_json(r); });
  } else {
    emit(ctx, e.label() + "_volumetrics.csv", [&](std::ostream& os) {
      using report::format_number;
      os << "event_id,n_whole,n_attack,n_benchmark,attack_share,whole_rate,benchmark_rate,attention_ratio\n"
         << r.event_id << ',' << r.n_whole << ',' << r.n_attack << ',' << r.n_benchmark << ','
         << format_number(r.attack_share) << ',' << format_number(r.whole_rate) << ','
         << format_number(r.benchmark_rate) << ',' << format_number(r.attention_ratio) << '\n';
    });
  }
  return 0;
}

// ---------------------------------------------------------------------------
// heatmap

struct HeatmapArgs {
  fs::path manifest;
  std::string kind;  // overrides the manifest
  bool intensity = false;
};

// kind: whole|attack|benchmark
// events:
//   - id: E11
//     whole: e11_whole.jsonl
//     benchmark: e11_benchmark.jsonl
struct ManifestEntry {
  std::string id;
  fs::path whole;
  fs::path benchmark;
};

std::pair<std::string, std::vector<ManifestEntry>> read_manifest(const fs::path& path) {
  require_exists(path, "manifest");
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::Exception& ex) {
    throw InputError(path.string() + ":" + std::to_string(ex.mark.line + 1) + ": " + ex.msg, ex.mark.line + 1);
  }
  const fs::path base = path.parent_path();
  auto line_of = [](const YAML::Node& n) { return static_cast<std::size_t>(n.Mark().line + 1); };
  std::string kind = root["kind"] ? root["kind"].as<std::string>() : "whole";
  const YAML::Node events = root["events"];
  if (!events || !events.IsSequence() || events.size() == 0) {
    throw InputError(path.string() + ": manifest needs a non-empty 'events' list");
  }
  std::vector<ManifestEntry> entries;
  for (const YAML::Node& n : events) {
    if (!n["id"] || !n["whole"]) {
      throw InputError(path.string() + ":" + std::to_string(line_of(n)) + ": entry needs 'id' and 'whole'", line_of(n));
    }
    ManifestEntry m{n["id"].as<std::string>(), base / n["whole"].as<std::string>(), {}};
    if (n["benchmark"]) m.benchmark = base / n["benchmark"].as<std::string>();
    entries.push_back(std::move(m));
  }
  return {kind, entries};
}

int cmd_heatmap(const Context& ctx, const HeatmapArgs& a) {
  auto [kind, entries] = read_manifest(a.manifest);
  if (!a.kind.empty()) kind = a.kind;
  const DatasetLabel label = dataset_label_from_string(kind);
  const Timeline& tl = timeline_of(ctx);
  const LexiconSet lex = lexicons_of(ctx);

  std::vector<EventDatasets> prepared;
  for (const ManifestEntry& m : entries) {
    const EventArgs ea{m.id, m.whole, m.benchmark};
    if ((label == DatasetLabel::benchmark || a.intensity) && m.benchmark.empty()) {
      throw InputError("manifest entry " + m.id + " has no benchmark corpus");
    }
    prepared.push_back(prepare(tl.at(m.id), ea));
  }

  if (a.intensity) {
    const auto rows = intensity_series(prepared, lex.emotion);
    emit(ctx, "intensity.csv", [&](std::ostream& os) { report::write_intensity_csv(os, rows); });
    return 0;
  }

  std::vector<Dataset> datasets;
  for (const EventDatasets& p : prepared) {
    datasets.push_back(label == DatasetLabel::whole ? p.whole : label == DatasetLabel::attack ? p.attack : p.benchmark);
  }
  const HeatmapMatrix m = heatmap_matrix(datasets, lex.emotion);
  if (ctx.config.format == OutputFormat::csv) {
    emit(ctx, "heatmap_" + kind + ".csv", [&](std::ostream& os) { report::write_heatmap_csv(os, m); });
    return 0;
  }
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["columns"] = nlohmann::ordered_json::array();
  for (std::size_t mask = 0; mask < kCombinationCount; ++mask) {
    j["columns"].push_back(mask_label(static_cast<CombinationMask>(mask)));
  }
  j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    nlohmann::ordered_json row;
    row["event_id"] = m.event_ids[i];
    row["n"] = m.partitions[i].n;
    row["percent"] = m.rows[i];
    j["rows"].push_back(std::move(row));
  }
  emit(ctx, "heatmap_" + kind + ".json", [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

// ---------------------------------------------------------------------------
// watch

struct WatchArgs {
  fs::path baseline;
  fs::path input;
  fs::path policy;
  std::string event;
  std::optional<double> negative_jump;
  std::optional<double> fear_jump;
  std::optional<double> volume_ratio;
  std::optional<std::size_t> min_units;
  std::optional<int> window_days;
};

int cmd_watch(const Context& ctx, const WatchArgs& a) {
  AlertPolicy policy;
  if (!a.policy.empty()) {
    require_exists(a.policy, "policy file");
    policy = AlertPolicy::load(a.policy);
  }
  if (a.negative_jump) policy.negative_jump = *a.negative_jump;
  if (a.fear_jump) policy.fear_jump = *a.fear_jump;
  if (a.volume_ratio) policy.volume_ratio = *a.volume_ratio;
  if (a.min_units) policy.min_units = *a.min_units;
  if (a.window_days) policy.window_days = *a.window_days;
  try {
    policy.validate();
  } catch (const PreconditionError& ex) {
    throw InputError(std::string("invalid policy: ") + ex.what());
  }

  const LexiconSet lex = lexicons_of(ctx);
  std::optional<Event> topic;
  Dataset bench = clean_dataset(read_dataset(a.baseline, DatasetLabel::benchmark));
  if (bench.empty()) throw InputError("baseline corpus has no usable units");
  std::optional<DateWindow> window;
  if (!a.event.empty()) {
    topic = timeline_of(ctx).at(a.event);
    window = compute_windows(*topic).benchmark;
    bench = slice_window(filter_topic(bench, *topic), *window);
  } else {
    const auto units = bench.units();
    window = DateWindow(date_of(units.front().timestamp), date_of(units.back().timestamp));
  }
  const Baseline base = build_baseline(bench, lex, *window, policy);

  WatchSession session(base, policy, lex, {}, topic);
  std::size_t alerts = 0;
  auto report_alert = [&](const Alert& alert) {
    ctx.out << report::to_json_line(alert) << '\n';
    ++alerts;
  };

  std::ifstream file;
  std::istream* in = &ctx.in;
  if (!a.input.empty() && a.input != "-") {
    require_exists(a.input, "input stream");
    file.open(a.input, std::ios::binary);
    if (!file) throw InputError("cannot read " + a.input.string());
    in = &file;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    DataUnit unit;
    try {
      unit = parse_jsonl_record(line);
    } catch (const InputError& ex) {
      spdlog::warn("input:{}: {}", line_no, ex.what());
      continue;
    }
    for (const Alert& alert : session.push(unit)) report_alert(alert);
  }
  if (auto last = session.flush()) report_alert(*last);
  spdlog::info("{} windows evaluated, {} alerts, {} units dropped", session.windows_evaluated(), alerts,
               session.units_dropped());
  return alerts > 0 ? 2 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Social-media reaction profiling and alerting for 51% attacks", "attackwatch"};
  app.require_subcommand(1);
  app.fallthrough();

  const fs::path data = default_data_dir();
  std::string timeline = (data / "timeline.yaml").string();
  std::string lexicons = (data / "lexicons").string();
  std::string out_dir;
  std::string format = "json";
  bool verbose = false;
  app.add_option("--timeline", timeline, "Timeline YAML file")->capture_default_str();
  app.add_option("--lexicons", lexicons, "Lexicon directory")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (default: standard output)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("-v,--verbose", verbose, "Log progress to standard error");

  const std::vector<std::string> kinds = {"whole", "attack", "benchmark"};

  TimelineArgs tl;
  auto* c_timeline = app.add_subcommand("timeline", "List the attack timeline");
  c_timeline->add_option("--currency", tl.currency, "Only this currency (name or ticker)");
  c_timeline->add_flag("--analysed-only", tl.analysed_only, "Only events with analysis windows");
  c_timeline->add_flag("--multi", tl.multi, "Only currencies attacked more than once");

  CleanArgs cl;
  auto* c_clean = app.add_subcommand("clean", "Clean, deduplicate and optionally window a corpus");
  c_clean->add_option("--input", cl.input, "Corpus file (.jsonl or .csv)")->required();
  c_clean->add_option("--event", cl.event, "Apply the event's topic filter and window");
  c_clean->add_option("--kind", cl.kind, "Window to slice with --event")->check(CLI::IsMember(kinds));

  EventArgs pr;
  auto* c_profile = app.add_subcommand("profile", "Sentiment and emotion profiles of an event");
  c_profile->add_option("--event", pr.event, "Event id, e.g. E11")->required();
  c_profile->add_option("--whole", pr.whole, "Corpus covering the attack window")->required();
  c_profile->add_option("--benchmark", pr.benchmark, "Corpus covering the benchmark window")->required();

  EventArgs pk;
  auto* c_peaks = app.add_subcommand("peaks", "Daily sentiment counts and the peak day");
  c_peaks->add_option("--event", pk.event, "Event id")->required();
  c_peaks->add_option("--whole", pk.whole, "Corpus covering the attack window")->required();
  c_peaks->add_option("--dataset", pk.dataset, "Series to scan")
      ->check(CLI::IsMember({"whole", "attack"}))
      ->capture_default_str();

  EventArgs vo;
  auto* c_volumetrics = app.add_subcommand("volumetrics", "Dataset sizes, attack share and attention ratio");
  c_volumetrics->add_option("--event", vo.event, "Event id")->required();
  c_volumetrics->add_option("--whole", vo.whole, "Corpus covering the attack window")->required();
  c_volumetrics->add_option("--benchmark", vo.benchmark, "Corpus covering the benchmark window")->required();

  HeatmapArgs hm;
  auto* c_heatmap = app.add_subcommand("heatmap", "Combination heat map over several events");
  c_heatmap->add_option("--manifest", hm.manifest, "YAML manifest of event corpora")->required();
  c_heatmap->add_option("--kind", hm.kind, "Dataset kind (overrides the manifest)")->check(CLI::IsMember(kinds));
  c_heatmap->add_flag("--intensity", hm.intensity, "Mean intensities per event and kind instead");

  WatchArgs wa;
  auto* c_watch = app.add_subcommand("watch", "Flag windows that deviate from a baseline");
  c_watch->add_option("--baseline", wa.baseline, "Benchmark corpus defining the norm")->required();
  c_watch->add_option("--input", wa.input, "JSONL stream (default: standard input)");
  c_watch->add_option("--event", wa.event, "Use the event's benchmark window and topic filter");
  c_watch->add_option("--policy", wa.policy, "Policy YAML file");
  c_watch->add_option("--negative-jump", wa.negative_jump, "Negative share increase, percentage points");
  c_watch->add_option("--fear-jump", wa.fear_jump, "Mean fear intensity increase");
  c_watch->add_option("--volume-ratio", wa.volume_ratio, "Per-day rate ratio");
  c_watch->add_option("--min-units", wa.min_units, "Smallest window evaluated");
  c_watch->add_option("--window-days", wa.window_days, "Window length in days");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  LogGuard log(err, verbose);
  try {
    Context ctx{RunConfig{timeline, lexicons, std::nullopt,
                          format == "csv" ? OutputFormat::csv : OutputFormat::json},
                in, out, std::nullopt};
    if (!out_dir.empty()) {
      ctx.config.out_dir = out_dir;
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      if (ec || !fs::is_directory(out_dir)) throw InputError("cannot create output directory " + out_dir);
    }
    if (*c_timeline) return cmd_timeline(ctx, tl);
    if (*c_clean) return cmd_clean(ctx, cl);
    if (*c_profile) return cmd_profile(ctx, pr);
    if (*c_peaks) return cmd_peaks(ctx, pk);
    if (*c_volumetrics) return cmd_volumetrics(ctx, vo);
    if (*c_heatmap) return cmd_heatmap(ctx, hm);
    if (*c_watch) return cmd_watch(ctx, wa);
  } catch (const Error& e) {
    err << "attackwatch: error: " << e.what() << '\n';
    return 1;
  } catch (const YAML::Exception& e) {
    err << "attackwatch: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "attackwatch: internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace attackwatch::cli
