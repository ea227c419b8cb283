#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attackwatch/dates.hpp"
#include "attackwatch/timeline.hpp"

namespace attackwatch {

/// One social-media message.
struct DataUnit {
  std::string id;
  std::string author;
  Timestamp timestamp{};
  std::string text;                 // cleaned once the dataset has been through clean_dataset()
  std::optional<std::string> lang;  // absent when the source carried no tag
  std::string raw_text;             // text exactly as ingested

  friend bool operator==(const DataUnit&, const DataUnit&) = default;
};

enum class DatasetLabel { whole, attack, benchmark };
std::string_view to_string(DatasetLabel label);
DatasetLabel dataset_label_from_string(std::string_view name);

/// Which text of a unit an analysis reads.
enum class TextSource { cleaned, raw };

inline std::string_view text_of(const DataUnit& unit, TextSource source) {
  return source == TextSource::raw && !unit.raw_text.empty() ? std::string_view(unit.raw_text)
                                                             : std::string_view(unit.text);
}

/// Immutable labelled collection of units. Copies share the unit storage.
class Dataset {
 public:
  Dataset(DatasetLabel label, std::string event_id, std::vector<DataUnit> units,
          std::vector<std::string> provenance = {}, std::optional<DateWindow> window = {});

  DatasetLabel label() const noexcept { return label_; }
  const std::string& event_id() const noexcept { return event_id_; }
  std::span<const DataUnit> units() const noexcept { return *units_; }
  std::size_t size() const noexcept { return units_->size(); }
  bool empty() const noexcept { return units_->empty(); }
  const std::vector<std::string>& provenance() const noexcept { return provenance_; }
  const std::optional<DateWindow>& window() const noexcept { return window_; }

  /// Same label, event and window over `units`, with `step` appended to the
  /// provenance.
  Dataset derive(std::vector<DataUnit> units, std::string step) const;
  Dataset with_label(DatasetLabel label) const;
  Dataset with_event(std::string event_id) const;

 private:
  DatasetLabel label_;
  std::string event_id_;
  std::shared_ptr<const std::vector<DataUnit>> units_;
  std::vector<std::string> provenance_;
  std::optional<DateWindow> window_;
};

// ---------------------------------------------------------------------------
// Ingestion

enum class CorpusFormat { jsonl, csv };

/// Picks the format from the file extension (.jsonl/.json -> jsonl, .csv -> csv).
CorpusFormat corpus_format_for(const std::filesystem::path& path);
CorpusFormat corpus_format_from_string(std::string_view name);

struct RecordError {
  std::size_t line = 0;  // 1-based line where the record starts
  std::string message;
};

struct LoadResult {
  Dataset dataset;
  std::vector<RecordError> errors;  // malformed records, in file order
};

/// Reads a corpus file. Valid records are returned in timestamp order (file
/// order among equal timestamps); malformed ones are reported in `errors`.
/// Throws InputError when the file cannot be read or holds no valid record.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);
LoadResult read_corpus(std::istream& in, CorpusFormat format, std::string_view source_name,
                       DatasetLabel label = DatasetLabel::whole);

/// Parses a single JSONL record; throws InputError on a malformed record.
DataUnit parse_jsonl_record(std::string_view line);

/// Writes units as JSONL records (cleaned text in "text").
void write_jsonl(std::ostream& out, const Dataset& dataset);
void write_csv(std::ostream& out, const Dataset& dataset);

// ---------------------------------------------------------------------------
// Cleaning and filtering

/// Removes URLs, replaces every character other than ASCII letters, digits,
/// spaces, '#', '@' and '%' by a space, collapses whitespace, trims and
/// lowercases. Idempotent.
std::string clean_text(std::string_view raw);

/// True when `lang` names English ("en", "en-GB", "en_US", ...).
bool is_english_tag(std::string_view lang);

/// Drops non-English units (units without a tag are kept), cleans the text,
/// drops units whose cleaned text is empty and removes duplicate
/// (author, cleaned text) pairs keeping the earliest. Result is in timestamp order.
Dataset clean_dataset(const Dataset& dataset);

/// Generic crypto words used by the topic filter.
std::span<const std::string_view> topic_keywords();

/// True when `cleaned_text` mentions the event's ticker, a generic crypto
/// word or one of its extra keywords (case-insensitive substring).
bool matches_topic(std::string_view cleaned_text, const Event& event);

/// Keeps units that mention the ticker, a generic crypto word or one of the
/// event's extra keywords. Events without extra keywords pass the dataset
/// through unchanged.
Dataset filter_topic(const Dataset& dataset, const Event& event);

/// Keywords marking a unit as discussing the attack.
std::span<const std::string_view> attack_keywords();
bool mentions_attack(std::string_view cleaned_text);

/// Units mentioning the attack, labelled as the attack dataset.
Dataset extract_attack_subset(const Dataset& dataset);

/// Units whose UTC date falls inside `window`; order is preserved and the
/// window is recorded on the result.
Dataset slice_window(const Dataset& dataset, const DateWindow& window);

// ---------------------------------------------------------------------------
// Per-event pipeline

struct EventDatasets {
  Dataset whole;
  Dataset attack;
  Dataset benchmark;
};

/// Runs clean -> topic filter -> window slice for the whole and benchmark
/// sources and extracts the attack subset from the whole dataset.
EventDatasets prepare_event_datasets(const Dataset& whole_source, const Dataset& benchmark_source,
                                     const Event& event);

}  // namespace attackwatch
