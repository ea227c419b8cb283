#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "attackwatch/corpus.hpp"

namespace attackwatch {

/// Constants of the rule-based valence engine.
namespace valence_rules {
inline constexpr double kNegationScalar = -0.74;
inline constexpr double kExclamationIncrement = 0.292;
inline constexpr int kMaxExclamations = 3;
inline constexpr double kNormalizationAlpha = 15.0;
inline constexpr double kDefaultBoosterIncrement = 0.293;
inline constexpr int kNegationLookback = 3;
}  // namespace valence_rules

/// Word valences plus booster increments and negators. Immutable; copies
/// share the underlying tables.
class ValenceLexicon {
 public:
  using WordMap = std::map<std::string, double, std::less<>>;
  using WordSet = std::set<std::string, std::less<>>;

  ValenceLexicon(WordMap entries, WordMap boosters = {}, WordSet negators = {});

  /// Reads valence.tsv, boosters.txt and negators.txt from `directory`.
  static ValenceLexicon load(const std::filesystem::path& directory);
  static ValenceLexicon load(const std::filesystem::path& valence_file,
                             const std::filesystem::path& boosters_file,
                             const std::filesystem::path& negators_file);

  std::optional<double> valence(std::string_view word) const;
  std::optional<double> booster(std::string_view word) const;
  bool is_negator(std::string_view word) const;

  std::size_t size() const noexcept { return tables_->entries.size(); }
  const WordMap& entries() const noexcept { return tables_->entries; }

 private:
  struct Tables {
    WordMap entries;
    WordMap boosters;
    WordSet negators;
  };
  std::shared_ptr<const Tables> tables_;
};

struct SentimentThresholds {
  double delta_p = 0.0;
  double delta_n = 0.0;

  void validate() const;
};

enum class Sentiment { negative, neutral, positive };
std::string_view to_string(Sentiment s);
Sentiment sentiment_from_string(std::string_view name);

/// Percentages of negative, neutral and positive units.
struct SentimentProfile {
  double negative = 0.0;
  double neutral = 0.0;
  double positive = 0.0;
  std::size_t n = 0;
};

/// Unnormalised valence sum of a text (whitespace tokens). Each lexicon hit
/// contributes its valence, adjusted in this order: a booster directly before
/// it adds its increment in the direction of the word's sign; a negator among
/// the three preceding tokens multiplies by -0.74; each trailing '!' (up to
/// three) adds 0.292 in the direction of the sign. Boosters and negators carry
/// no valence of their own.
double valence_sum(std::string_view text, const ValenceLexicon& lexicon);

/// S / sqrt(S^2 + alpha), clamped to [-1, 1].
double normalize_valence(double sum, double alpha = valence_rules::kNormalizationAlpha);

/// Compound score in [-1, 1]; 0 when no token hits the lexicon.
double score_valence(std::string_view text, const ValenceLexicon& lexicon);

/// Positive iff s > delta_p, negative iff s < delta_n, neutral otherwise.
/// Throws PreconditionError for s outside [-1, 1] or NaN.
Sentiment classify(double score, const SentimentThresholds& thresholds = {});

/// Throws EmptyDatasetError for an empty dataset.
SentimentProfile sentiment_profile(const Dataset& dataset, const ValenceLexicon& lexicon,
                                   const SentimentThresholds& thresholds = {},
                                   TextSource source = TextSource::cleaned);

/// Profile from per-class counts.
SentimentProfile profile_from_counts(std::size_t negative, std::size_t neutral, std::size_t positive);

}  // namespace attackwatch
