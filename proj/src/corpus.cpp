#include "attackwatch/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "attackwatch/errors.hpp"
#include "csv.hpp"

namespace attackwatch {

using nlohmann::json;

std::string_view to_string(DatasetLabel label) {
  switch (label) {
    case DatasetLabel::whole: return "whole";
    case DatasetLabel::attack: return "attack";
    case DatasetLabel::benchmark: return "benchmark";
  }
  return "unknown";
}

DatasetLabel dataset_label_from_string(std::string_view name) {
  if (name == "whole") return DatasetLabel::whole;
  if (name == "attack") return DatasetLabel::attack;
  if (name == "benchmark") return DatasetLabel::benchmark;
  throw InputError("unknown dataset kind '" + std::string(name) +
                   "' (expected whole, attack or benchmark)");
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(DatasetLabel label, std::string event_id, std::vector<DataUnit> units,
                 std::vector<std::string> provenance, std::optional<DateWindow> window)
    : label_(label),
      event_id_(std::move(event_id)),
      units_(std::make_shared<const std::vector<DataUnit>>(std::move(units))),
      provenance_(std::move(provenance)),
      window_(window) {
  for (const DataUnit& u : *units_) {
    if (u.id.empty()) throw PreconditionError("data unit with empty id");
    if (window_ && !window_->contains(u.timestamp)) {
      throw PreconditionError("unit " + u.id + " at " + format_timestamp(u.timestamp) +
                              " lies outside the dataset window " + window_->to_string());
    }
  }
}

Dataset Dataset::derive(std::vector<DataUnit> units, std::string step) const {
  std::vector<std::string> prov = provenance_;
  prov.push_back(std::move(step));
  return Dataset(label_, event_id_, std::move(units), std::move(prov), window_);
}

Dataset Dataset::with_label(DatasetLabel label) const {
  Dataset copy = *this;
  copy.label_ = label;
  return copy;
}

Dataset Dataset::with_event(std::string event_id) const {
  Dataset copy = *this;
  copy.event_id_ = std::move(event_id);
  return copy;
}

// ---------------------------------------------------------------------------
// Ingestion

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv" || ext == ".CSV") return CorpusFormat::csv;
  return CorpusFormat::jsonl;
}

CorpusFormat corpus_format_from_string(std::string_view name) {
  if (name == "jsonl" || name == "json") return CorpusFormat::jsonl;
  if (name == "csv") return CorpusFormat::csv;
  throw InputError("unknown corpus format '" + std::string(name) + "' (expected jsonl or csv)");
}

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Shared validation for both formats; throws InputError with a record-level message.
DataUnit make_unit(std::string id, std::string_view created_at, std::string author, std::string text,
                   std::optional<std::string> lang) {
  if (id.empty()) throw InputError("field 'id' is empty");
  if (text.empty()) throw InputError("field 'text' is empty");
  DataUnit u;
  try {
    u.timestamp = parse_timestamp(created_at);
  } catch (const Error& e) {
    throw InputError(std::string("unparseable timestamp: ") + e.what());
  }
  u.id = std::move(id);
  u.author = std::move(author);
  u.raw_text = text;
  u.text = std::move(text);
  if (lang && !lang->empty()) u.lang = std::move(lang);
  return u;
}

std::string json_string_field(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end() || it->is_null()) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer() && std::string_view(key) == "id") return it->dump();
  throw InputError(std::string("field '") + key + "' must be a string");
}

LoadResult finish(std::vector<DataUnit> units, std::vector<RecordError> errors,
                  std::string_view source_name, DatasetLabel label) {
  if (units.empty()) {
    std::string msg = "no valid records in " + std::string(source_name);
    if (!errors.empty()) {
      msg += " (" + std::to_string(errors.size()) + " malformed; first at line " +
             std::to_string(errors.front().line) + ": " + errors.front().message + ")";
    }
    throw InputError(msg);
  }
  std::stable_sort(units.begin(), units.end(), [](const DataUnit& a, const DataUnit& b) {
    return a.timestamp < b.timestamp;
  });
  Dataset ds(label, "", std::move(units), {"load:" + std::string(source_name)});
  return LoadResult{std::move(ds), std::move(errors)};
}

LoadResult read_jsonl(std::istream& in, std::string_view source_name, DatasetLabel label) {
  std::vector<DataUnit> units;
  std::vector<RecordError> errors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    try {
      units.push_back(parse_jsonl_record(line));
    } catch (const InputError& e) {
      errors.push_back({line_no, e.what()});
    }
  }
  return finish(std::move(units), std::move(errors), source_name, label);
}

LoadResult read_csv(std::istream& in, std::string_view source_name, DatasetLabel label) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::size_t line_no = 0;
  bool ok = true;
  if (!reader.next(fields, line_no, ok) || !ok) {
    throw InputError(std::string(source_name) + ": missing CSV header", 1);
  }

  std::unordered_map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string name = fields[i];
    if (i == 0 && name.rfind("\xEF\xBB\xBF", 0) == 0) name.erase(0, 3);
    column[lower_ascii(name)] = i;
  }
  for (const char* required : {"id", "created_at", "author", "text"}) {
    if (!column.contains(required)) {
      throw InputError(std::string(source_name) + ": CSV header lacks column '" + required + "'", 1);
    }
  }
  const std::optional<std::size_t> lang_col =
      column.contains("lang") ? std::optional<std::size_t>(column.at("lang")) : std::nullopt;

  std::vector<DataUnit> units;
  std::vector<RecordError> errors;
  while (reader.next(fields, line_no, ok)) {
    if (!ok) {
      errors.push_back({line_no, "unterminated quoted field"});
      continue;
    }
    if (fields.size() == 1 && is_blank(fields[0])) continue;
    if (fields.size() != column.size()) {
      errors.push_back({line_no, "expected " + std::to_string(column.size()) + " fields, found " +
                                     std::to_string(fields.size())});
      continue;
    }
    try {
      std::optional<std::string> lang;
      if (lang_col) lang = fields[*lang_col];
      units.push_back(make_unit(fields[column.at("id")], fields[column.at("created_at")],
                                fields[column.at("author")], fields[column.at("text")],
                                std::move(lang)));
    } catch (const InputError& e) {
      errors.push_back({line_no, e.what()});
    }
  }
  return finish(std::move(units), std::move(errors), source_name, label);
}

}  // namespace

DataUnit parse_jsonl_record(std::string_view line) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!record.is_object()) throw InputError("record is not a JSON object");

  std::optional<std::string> lang;
  if (const auto it = record.find("lang"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) throw InputError("field 'lang' must be a string");
    lang = it->get<std::string>();
  }
  const std::string created_at = json_string_field(record, "created_at");
  return make_unit(json_string_field(record, "id"), created_at, json_string_field(record, "author"),
                   json_string_field(record, "text"), std::move(lang));
}

LoadResult read_corpus(std::istream& in, CorpusFormat format, std::string_view source_name,
                       DatasetLabel label) {
  return format == CorpusFormat::jsonl ? read_jsonl(in, source_name, label)
                                       : read_csv(in, source_name, label);
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  return read_corpus(in, format, path.string());
}

void write_jsonl(std::ostream& out, const Dataset& dataset) {
  for (const DataUnit& u : dataset.units()) {
    nlohmann::ordered_json rec;
    rec["id"] = u.id;
    rec["created_at"] = format_timestamp(u.timestamp);
    rec["author"] = u.author;
    rec["text"] = u.text;
    if (u.lang) rec["lang"] = *u.lang;
    out << rec.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void write_csv(std::ostream& out, const Dataset& dataset) {
  out << "id,created_at,author,text,lang\n";
  for (const DataUnit& u : dataset.units()) {
    out << csv::escape(u.id) << ',' << format_timestamp(u.timestamp) << ',' << csv::escape(u.author)
        << ',' << csv::escape(u.text) << ',' << csv::escape(u.lang.value_or("")) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Cleaning

namespace {

bool is_alnum_ascii(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

// Length of the URL starting at `pos`, or 0. URLs begin with http:// or
// https:// anywhere, or with www. at a word boundary, and run to the next
// whitespace.
std::size_t url_length(std::string_view s, std::size_t pos) {
  const bool scheme = starts_with_ci(s, pos, "http://") || starts_with_ci(s, pos, "https://");
  const bool www = starts_with_ci(s, pos, "www.") &&
                   (pos == 0 || !is_alnum_ascii(static_cast<unsigned char>(s[pos - 1])));
  if (!scheme && !www) return 0;
  std::size_t end = pos;
  while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) ++end;
  return end - pos;
}

bool contains_ci(std::string_view haystack_lower, std::string_view needle_lower) {
  return !needle_lower.empty() && haystack_lower.find(needle_lower) != std::string_view::npos;
}

}  // namespace

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < raw.size();) {
    if (const std::size_t n = url_length(raw, i)) {
      pending_space = true;
      i += n;
      continue;
    }
    const auto c = static_cast<unsigned char>(raw[i]);
    if (is_alnum_ascii(c) || c == '#' || c == '@' || c == '%') {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_space = true;
    }
    ++i;
  }
  return out;
}

bool is_english_tag(std::string_view lang) {
  const std::string tag = lower_ascii(lang);
  return tag == "en" || tag.rfind("en-", 0) == 0 || tag.rfind("en_", 0) == 0;
}

Dataset clean_dataset(const Dataset& dataset) {
  const auto units = dataset.units();
  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return units[a].timestamp < units[b].timestamp;
  });

  std::unordered_set<std::string> seen;
  std::vector<DataUnit> kept;
  kept.reserve(units.size());
  for (const std::size_t i : order) {
    const DataUnit& u = units[i];
    if (u.lang && !u.lang->empty() && !is_english_tag(*u.lang)) continue;
    std::string cleaned = clean_text(u.text);
    if (cleaned.empty()) continue;
    std::string key = u.author;
    key.push_back('\x1f');
    key += cleaned;
    if (!seen.insert(std::move(key)).second) continue;
    DataUnit copy = u;
    copy.text = std::move(cleaned);
    kept.push_back(std::move(copy));
  }
  return dataset.derive(std::move(kept), "clean");
}

std::span<const std::string_view> topic_keywords() {
  static constexpr std::array<std::string_view, 5> kWords = {"crypto", "coin", "currency", "miner",
                                                             "mining"};
  return kWords;
}

bool matches_topic(std::string_view cleaned_text, const Event& event) {
  const std::string text = lower_ascii(cleaned_text);
  if (contains_ci(text, lower_ascii(event.ticker))) return true;
  for (std::string_view w : topic_keywords()) {
    if (contains_ci(text, w)) return true;
  }
  return std::any_of(event.extra_keywords.begin(), event.extra_keywords.end(),
                     [&](const std::string& w) { return contains_ci(text, clean_text(w)); });
}

Dataset filter_topic(const Dataset& dataset, const Event& event) {
  if (event.extra_keywords.empty()) return dataset;
  std::vector<DataUnit> kept;
  for (const DataUnit& u : dataset.units()) {
    if (matches_topic(u.text, event)) kept.push_back(u);
  }
  return dataset.derive(std::move(kept), "topic:" + event.label());
}

std::span<const std::string_view> attack_keywords() {
  static constexpr std::array<std::string_view, 3> kWords = {"51", "attack", "double spend"};
  return kWords;
}

bool mentions_attack(std::string_view cleaned_text) {
  const std::string text = lower_ascii(cleaned_text);
  return std::any_of(attack_keywords().begin(), attack_keywords().end(),
                     [&](std::string_view k) { return contains_ci(text, k); });
}

Dataset extract_attack_subset(const Dataset& dataset) {
  std::vector<DataUnit> kept;
  for (const DataUnit& u : dataset.units()) {
    if (mentions_attack(u.text)) kept.push_back(u);
  }
  return dataset.derive(std::move(kept), "attack-subset").with_label(DatasetLabel::attack);
}

Dataset slice_window(const Dataset& dataset, const DateWindow& window) {
  std::vector<DataUnit> kept;
  for (const DataUnit& u : dataset.units()) {
    if (window.contains(u.timestamp)) kept.push_back(u);
  }
  std::vector<std::string> prov = dataset.provenance();
  prov.push_back("window:" + format_date(window.start()) + ".." + format_date(window.end()));
  return Dataset(dataset.label(), dataset.event_id(), std::move(kept), std::move(prov), window);
}

EventDatasets prepare_event_datasets(const Dataset& whole_source, const Dataset& benchmark_source,
                                     const Event& event) {
  const EventWindows windows = compute_windows(event);
  const Dataset whole = slice_window(filter_topic(clean_dataset(whole_source), event), windows.attack)
                            .with_label(DatasetLabel::whole)
                            .with_event(event.label());
  const Dataset benchmark =
      slice_window(filter_topic(clean_dataset(benchmark_source), event), windows.benchmark)
          .with_label(DatasetLabel::benchmark)
          .with_event(event.label());
  return {whole, extract_attack_subset(whole), benchmark};
}

}  // namespace attackwatch
