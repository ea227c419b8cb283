#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "attackwatch/corpus.hpp"

namespace attackwatch {

enum class Emotion : std::uint8_t { happy, angry, surprise, sad, fear };

inline constexpr std::size_t kEmotionCount = 5;
inline constexpr std::array<Emotion, kEmotionCount> kEmotions = {
    Emotion::happy, Emotion::angry, Emotion::surprise, Emotion::sad, Emotion::fear};

std::string_view to_string(Emotion e);
std::optional<Emotion> emotion_from_string(std::string_view name);
constexpr std::size_t index_of(Emotion e) { return static_cast<std::size_t>(e); }

// Combination masks. Happy is the most significant of the five bits and fear
// the least, so mask 0b10000 is "happy only" and 0 is "no emotion".
using CombinationMask = std::uint8_t;
inline constexpr std::size_t kCombinationCount = 32;

constexpr CombinationMask mask_bit(Emotion e) {
  return static_cast<CombinationMask>(1u << (kEmotionCount - 1 - index_of(e)));
}
constexpr bool has_emotion(CombinationMask mask, Emotion e) { return (mask & mask_bit(e)) != 0; }

/// Column name of a mask: one letter per present emotion (H, A, S, D, F),
/// '-' otherwise. "-----" is the no-emotion cell.
std::string mask_label(CombinationMask mask);

/// Single-token word to emotion map. Immutable; copies share the table.
class EmotionLexicon {
 public:
  using WordMap = std::map<std::string, Emotion, std::less<>>;

  explicit EmotionLexicon(WordMap entries);
  /// Reads "token<TAB>emotion" lines. A word listed twice must carry the same
  /// emotion.
  static EmotionLexicon load(const std::filesystem::path& file);

  std::optional<Emotion> find(std::string_view word) const;
  std::size_t size() const noexcept { return entries_->size(); }

 private:
  std::shared_ptr<const WordMap> entries_;
};

/// Per-unit (or mean) intensities of happy, angry, surprise, sad, fear.
struct EmotionIntensity {
  std::array<double, kEmotionCount> values{};

  double operator[](Emotion e) const { return values[index_of(e)]; }
  double& operator[](Emotion e) { return values[index_of(e)]; }
  double sum() const;
  /// Presence pattern: bit set for every emotion with non-zero intensity.
  CombinationMask mask() const;

  friend bool operator==(const EmotionIntensity&, const EmotionIntensity&) = default;
};

/// Number of units carrying each emotion.
struct EmotionVolume {
  std::array<std::size_t, kEmotionCount> counts{};

  std::size_t operator[](Emotion e) const { return counts[index_of(e)]; }
  friend bool operator==(const EmotionVolume&, const EmotionVolume&) = default;
};

/// Units per presence pattern; every unit falls in exactly one of the 32 cells.
struct CombinationPartition {
  std::array<std::size_t, kCombinationCount> counts{};
  std::size_t n = 0;

  std::size_t operator[](CombinationMask mask) const { return counts[mask]; }
  double percent(CombinationMask mask) const;
  friend bool operator==(const CombinationPartition&, const CombinationPartition&) = default;
};

struct EmotionProfile {
  EmotionIntensity intensity;  // dataset means
  EmotionVolume volume;
  CombinationPartition cells;
  std::size_t n = 0;
};

/// Lexicon hits per emotion over whitespace tokens, normalised by the total
/// number of hits; all zeros when nothing hits.
EmotionIntensity score_emotions(std::string_view text, const EmotionLexicon& lexicon);

// Aggregates over already-scored units. All throw EmptyDatasetError on empty input.
EmotionIntensity mean_intensity(std::span<const EmotionIntensity> units);
EmotionVolume volume_of(std::span<const EmotionIntensity> units);
CombinationPartition partition_of(std::span<const EmotionIntensity> units);

std::vector<EmotionIntensity> score_units(const Dataset& dataset, const EmotionLexicon& lexicon);

EmotionIntensity emotion_intensity(const Dataset& dataset, const EmotionLexicon& lexicon);
EmotionVolume emotion_volume(const Dataset& dataset, const EmotionLexicon& lexicon);
CombinationPartition combination_partition(const Dataset& dataset, const EmotionLexicon& lexicon);
EmotionProfile emotion_profile(const Dataset& dataset, const EmotionLexicon& lexicon);

}  // namespace attackwatch
