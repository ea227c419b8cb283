#include "attackwatch/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include "attackwatch/errors.hpp"
#include "lexicon_io.hpp"

namespace attackwatch {

// ---------------------------------------------------------------------------
// Lexicon

ValenceLexicon::ValenceLexicon(WordMap entries, WordMap boosters, WordSet negators) {
  if (entries.empty()) throw PreconditionError("valence lexicon is empty");
  for (const auto& [word, v] : entries) {
    if (!std::isfinite(v)) throw PreconditionError("non-finite valence for '" + word + "'");
  }
  for (const auto& [word, inc] : boosters) {
    if (!std::isfinite(inc)) throw PreconditionError("non-finite booster increment for '" + word + "'");
  }
  tables_ = std::make_shared<const Tables>(
      Tables{std::move(entries), std::move(boosters), std::move(negators)});
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& directory) {
  return load(directory / "valence.tsv", directory / "boosters.txt", directory / "negators.txt");
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& valence_file,
                                    const std::filesystem::path& boosters_file,
                                    const std::filesystem::path& negators_file) {
  auto parse_number = [](const std::filesystem::path& path, std::size_t line, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      lexicon_io::fail(path, line, "expected a number, got '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) {
      lexicon_io::fail(path, line, "expected a finite number, got '" + s + "'");
    }
    return v;
  };

  WordMap entries;
  lexicon_io::for_each_record(valence_file, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() < 2 || f[0].empty()) lexicon_io::fail(valence_file, line, "expected token<TAB>valence");
    entries.insert_or_assign(lexicon_io::lookup_key(f[0]), parse_number(valence_file, line, f[1]));
  });
  if (entries.empty()) throw InputError("valence lexicon " + valence_file.string() + " has no entries");

  WordMap boosters;
  if (std::filesystem::exists(boosters_file)) {
    lexicon_io::for_each_record(boosters_file, [&](std::size_t line, const std::vector<std::string>& f) {
      const double inc = f.size() >= 2 && !f[1].empty() ? parse_number(boosters_file, line, f[1])
                                                        : valence_rules::kDefaultBoosterIncrement;
      boosters.insert_or_assign(lexicon_io::lookup_key(f[0]), inc);
    });
  }
  WordSet negators;
  if (std::filesystem::exists(negators_file)) {
    lexicon_io::for_each_record(negators_file, [&](std::size_t, const std::vector<std::string>& f) {
      negators.insert(lexicon_io::lookup_key(f[0]));
    });
  }
  return ValenceLexicon(std::move(entries), std::move(boosters), std::move(negators));
}

std::optional<double> ValenceLexicon::valence(std::string_view word) const {
  const auto it = tables_->entries.find(word);
  if (it == tables_->entries.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ValenceLexicon::booster(std::string_view word) const {
  const auto it = tables_->boosters.find(word);
  if (it == tables_->boosters.end()) return std::nullopt;
  return it->second;
}

bool ValenceLexicon::is_negator(std::string_view word) const {
  return tables_->negators.find(word) != tables_->negators.end();
}

// ---------------------------------------------------------------------------
// Scoring

void SentimentThresholds::validate() const {
  if (!std::isfinite(delta_p) || !std::isfinite(delta_n)) {
    throw PreconditionError("sentiment thresholds must be finite");
  }
  if (delta_n > delta_p) throw PreconditionError("delta_n must not exceed delta_p");
}

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::positive: return "positive";
  }
  return "unknown";
}

Sentiment sentiment_from_string(std::string_view name) {
  if (name == "negative") return Sentiment::negative;
  if (name == "neutral") return Sentiment::neutral;
  if (name == "positive") return Sentiment::positive;
  throw InputError("unknown sentiment '" + std::string(name) + "'");
}

namespace {

struct Token {
  std::string key;
  int exclamations = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    const std::string_view raw = text.substr(start, i - start);
    Token t{lexicon_io::lookup_key(raw), 0};
    for (std::size_t k = raw.size(); k > 0 && !std::isalnum(static_cast<unsigned char>(raw[k - 1])); --k) {
      if (raw[k - 1] == '!') ++t.exclamations;
    }
    tokens.push_back(std::move(t));
  }
  return tokens;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

double valence_sum(std::string_view text, const ValenceLexicon& lexicon) {
  using namespace valence_rules;
  const std::vector<Token> tokens = tokenize(text);
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& key = tokens[i].key;
    if (key.empty() || lexicon.booster(key) || lexicon.is_negator(key)) continue;
    const std::optional<double> base = lexicon.valence(key);
    if (!base) continue;

    double v = *base;
    if (i > 0) {
      if (const auto inc = lexicon.booster(tokens[i - 1].key)) v += sign_of(v) * *inc;
    }
    const std::size_t lookback = std::min<std::size_t>(i, kNegationLookback);
    for (std::size_t back = 1; back <= lookback; ++back) {
      if (lexicon.is_negator(tokens[i - back].key)) {
        v *= kNegationScalar;
        break;
      }
    }
    const int marks = std::min(tokens[i].exclamations, kMaxExclamations);
    if (marks > 0 && v != 0.0) v += sign_of(v) * kExclamationIncrement * marks;
    sum += v;
  }
  return sum;
}

double normalize_valence(double sum, double alpha) {
  if (sum == 0.0) return 0.0;
  if (std::isinf(sum)) return sum > 0 ? 1.0 : -1.0;
  return std::clamp(sum / std::sqrt(sum * sum + alpha), -1.0, 1.0);
}

double score_valence(std::string_view text, const ValenceLexicon& lexicon) {
  return normalize_valence(valence_sum(text, lexicon));
}

Sentiment classify(double score, const SentimentThresholds& thresholds) {
  if (!(score >= -1.0 && score <= 1.0)) {
    throw PreconditionError("sentiment score " + std::to_string(score) + " outside [-1, 1]");
  }
  if (score > thresholds.delta_p) return Sentiment::positive;
  if (score < thresholds.delta_n) return Sentiment::negative;
  return Sentiment::neutral;
}

SentimentProfile profile_from_counts(std::size_t negative, std::size_t neutral, std::size_t positive) {
  const std::size_t n = negative + neutral + positive;
  if (n == 0) throw EmptyDatasetError("sentiment profile of an empty dataset");
  const double scale = 100.0 / static_cast<double>(n);
  return {static_cast<double>(negative) * scale, static_cast<double>(neutral) * scale,
          static_cast<double>(positive) * scale, n};
}

SentimentProfile sentiment_profile(const Dataset& dataset, const ValenceLexicon& lexicon,
                                   const SentimentThresholds& thresholds, TextSource source) {
  if (dataset.empty()) {
    throw EmptyDatasetError("sentiment profile of empty " + std::string(to_string(dataset.label())) +
                            " dataset" + (dataset.event_id().empty() ? "" : " for " + dataset.event_id()));
  }
  thresholds.validate();
  std::size_t counts[3] = {0, 0, 0};
  for (const DataUnit& u : dataset.units()) {
    ++counts[static_cast<int>(classify(score_valence(text_of(u, source), lexicon), thresholds))];
  }
  return profile_from_counts(counts[0], counts[1], counts[2]);
}

}  // namespace attackwatch
