#include "attackwatch/timeline.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "attackwatch/errors.hpp"

namespace attackwatch {

std::string_view to_string(EventKind kind) {
  return kind == EventKind::actual ? "actual" : "threat_or_averted";
}

std::string_view to_string(BenchmarkDirection direction) {
  return direction == BenchmarkDirection::month_before ? "month_before" : "month_after";
}

std::string Event::label() const {
  return analysed() ? event_id : "#" + std::to_string(serial);
}

void validate(const Event& event) {
  const std::string who = "event " + event.label();
  if (event.currency.empty()) throw PreconditionError(who + ": currency is empty");
  if (event.ticker.empty()) throw PreconditionError(who + ": ticker is empty");
  if (event.attack_start > event.attack_end) {
    throw PreconditionError(who + ": attack start " + format_date(event.attack_start) +
                            " is after end " + format_date(event.attack_end));
  }
}

EventWindows derived_windows(const Event& event) {
  using std::chrono::days;
  const DateWindow attack(event.attack_start - days{1}, event.attack_end + days{6});
  const int shift = event.benchmark_direction == BenchmarkDirection::month_before ? -1 : 1;
  return {attack, attack.shifted_months(shift)};
}

EventWindows compute_windows(const Event& event) {
  EventWindows windows = derived_windows(event);
  if (event.recorded_attack_window) windows.attack = *event.recorded_attack_window;
  if (event.recorded_benchmark_window) windows.benchmark = *event.recorded_benchmark_window;
  return windows;
}

// ---------------------------------------------------------------------------
// Timeline

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class YamlReader {
 public:
  explicit YamlReader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    const std::size_t line = node.Mark().is_null() ? 0 : static_cast<std::size_t>(node.Mark().line) + 1;
    throw InputError(std::string(source_) + ":" + std::to_string(line) + ": " + what, line);
  }

  std::string scalar(const YAML::Node& parent, const char* key) const {
    const YAML::Node node = parent[key];
    if (!node) fail(parent, std::string("missing field '") + key + "'");
    if (!node.IsScalar()) fail(node, std::string("field '") + key + "' must be a scalar");
    return node.Scalar();
  }

  Date date(const YAML::Node& node) const {
    if (!node.IsScalar()) fail(node, "expected a YYYY-MM-DD date");
    try {
      return parse_date(node.Scalar());
    } catch (const Error& e) {
      fail(node, e.what());
    }
  }

  DateWindow window(const YAML::Node& node, const char* key) const {
    if (!node.IsSequence() || node.size() != 2) {
      fail(node, std::string("field '") + key + "' must be a [start, end] pair");
    }
    const Date start = date(node[0]);
    const Date end = date(node[1]);
    if (start > end) fail(node, std::string("field '") + key + "': start is after end");
    return DateWindow(start, end);
  }

  std::size_t count(const YAML::Node& node) const {
    try {
      const long long v = node.as<long long>();
      if (v < 0) fail(node, "count must be non-negative");
      return static_cast<std::size_t>(v);
    } catch (const YAML::Exception&) {
      fail(node, "expected a non-negative integer");
    }
  }

  Event event(const YAML::Node& node) const {
    if (!node.IsMap()) fail(node, "event entry must be a mapping");
    Event e;
    try {
      e.serial = std::stoi(scalar(node, "serial"));
    } catch (const std::logic_error&) {
      fail(node["serial"], "serial must be an integer");
    }
    if (const YAML::Node id = node["id"]; id && !id.IsNull()) e.event_id = upper(id.Scalar());
    e.currency = scalar(node, "currency");
    e.ticker = scalar(node, "ticker");

    const YAML::Node period = node["period"];
    if (!period) fail(node, "missing field 'period'");
    const DateWindow p = window(period, "period");
    e.attack_start = p.start();
    e.attack_end = p.end();

    if (const YAML::Node kind = node["kind"]) {
      const std::string k = kind.Scalar();
      if (k == "actual") e.kind = EventKind::actual;
      else if (k == "threat_or_averted") e.kind = EventKind::threat_or_averted;
      else fail(kind, "kind must be 'actual' or 'threat_or_averted', got '" + k + "'");
    }
    if (const YAML::Node dir = node["benchmark_direction"]) {
      const std::string d = dir.Scalar();
      if (d == "month_before") e.benchmark_direction = BenchmarkDirection::month_before;
      else if (d == "month_after") e.benchmark_direction = BenchmarkDirection::month_after;
      else fail(dir, "benchmark_direction must be 'month_before' or 'month_after', got '" + d + "'");
    }
    if (const YAML::Node kw = node["extra_keywords"]) {
      if (!kw.IsSequence()) fail(kw, "extra_keywords must be a list");
      for (const auto& k : kw) {
        if (!k.IsScalar() || k.Scalar().empty()) fail(k, "keywords must be non-empty strings");
        e.extra_keywords.push_back(k.Scalar());
      }
    }
    if (const YAML::Node w = node["attack_window"]) e.recorded_attack_window = window(w, "attack_window");
    if (const YAML::Node w = node["benchmark_window"]) {
      e.recorded_benchmark_window = window(w, "benchmark_window");
    }
    if (const YAML::Node rec = node["recorded"]) {
      if (!rec.IsMap()) fail(rec, "recorded must be a mapping");
      if (rec["whole"]) e.recorded.whole = count(rec["whole"]);
      if (rec["attack"]) e.recorded.attack = count(rec["attack"]);
      if (rec["benchmark"]) e.recorded.benchmark = count(rec["benchmark"]);
      if (rec["peak_day"]) e.recorded.peak_day = date(rec["peak_day"]);
      if (rec["peak_sentiment"]) e.recorded.peak_sentiment = rec["peak_sentiment"].Scalar();
    }
    try {
      validate(e);
    } catch (const PreconditionError& err) {
      fail(node, err.what());
    }
    return e;
  }

 private:
  std::string_view source_;
};

}  // namespace

Timeline::Timeline(std::vector<Event> events) : events_(std::move(events)) {
  for (const Event& e : events_) validate(e);
  std::stable_sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
    return a.attack_start < b.attack_start;
  });
  for (std::size_t i = 0; i < events_.size(); ++i) {
    for (std::size_t j = i + 1; j < events_.size(); ++j) {
      if (events_[i].analysed() && events_[i].event_id == events_[j].event_id) {
        throw PreconditionError("duplicate event id " + events_[i].event_id);
      }
    }
  }
}

Timeline Timeline::parse(std::string_view yaml_text, std::string_view source_name) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::ParserException& e) {
    const std::size_t line = static_cast<std::size_t>(e.mark.line) + 1;
    throw InputError(std::string(source_name) + ":" + std::to_string(line) + ": " + e.msg, line);
  }
  const YamlReader reader(source_name);
  if (!root.IsMap() || !root["events"]) reader.fail(root, "expected a top-level 'events' list");
  const YAML::Node list = root["events"];
  if (!list.IsSequence()) reader.fail(list, "'events' must be a list");

  std::vector<Event> events;
  for (const auto& node : list) events.push_back(reader.event(node));
  try {
    return Timeline(std::move(events));
  } catch (const PreconditionError& e) {
    throw InputError(std::string(source_name) + ": " + e.what());
  }
}

Timeline Timeline::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open timeline file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const Event* Timeline::find(std::string_view id) const {
  if (!id.empty() && id.front() == '#') {
    const std::string serial(id.substr(1));
    for (const Event& e : events_) {
      if (std::to_string(e.serial) == serial) return &e;
    }
    return nullptr;
  }
  const std::string wanted = upper(id);
  for (const Event& e : events_) {
    if (e.analysed() && e.event_id == wanted) return &e;
  }
  return nullptr;
}

const Event& Timeline::at(std::string_view id) const {
  if (const Event* e = find(id)) return *e;
  std::string known;
  for (const std::string& k : analysed_ids()) known += (known.empty() ? "" : ", ") + k;
  throw InputError("unknown event id '" + std::string(id) + "'; known ids: " + known);
}

std::vector<std::string> Timeline::analysed_ids() const {
  std::vector<std::string> ids;
  for (const Event& e : events_) {
    if (e.analysed()) ids.push_back(e.event_id);
  }
  return ids;
}

std::vector<const Event*> Timeline::analysed() const {
  std::vector<const Event*> out;
  for (const Event& e : events_) {
    if (e.analysed()) out.push_back(&e);
  }
  return out;
}

std::map<std::string, std::size_t> Timeline::attacks_per_currency() const {
  std::map<std::string, std::size_t> counts;
  for (const Event& e : events_) ++counts[e.currency];
  return counts;
}

}  // namespace attackwatch
