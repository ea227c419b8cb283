#include "attackwatch/emotion.hpp"

#include <cctype>
#include <vector>

#include "attackwatch/errors.hpp"
#include "lexicon_io.hpp"

namespace attackwatch {

namespace {
constexpr std::array<std::string_view, kEmotionCount> kNames = {"happy", "angry", "surprise", "sad",
                                                                "fear"};
constexpr std::array<char, kEmotionCount> kLetters = {'H', 'A', 'S', 'D', 'F'};

[[noreturn]] void empty_dataset(const Dataset& d, std::string_view what) {
  std::string msg = std::string(what) + " of empty " + std::string(to_string(d.label())) + " dataset";
  if (!d.event_id().empty()) msg += " for " + d.event_id();
  throw EmptyDatasetError(msg);
}
}  // namespace

std::string_view to_string(Emotion e) { return kNames[index_of(e)]; }

std::optional<Emotion> emotion_from_string(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    if (lower == kNames[i]) return kEmotions[i];
  }
  return std::nullopt;
}

std::string mask_label(CombinationMask mask) {
  std::string label(kEmotionCount, '-');
  for (Emotion e : kEmotions) {
    if (has_emotion(mask, e)) label[index_of(e)] = kLetters[index_of(e)];
  }
  return label;
}

// ---------------------------------------------------------------------------

EmotionLexicon::EmotionLexicon(WordMap entries) {
  if (entries.empty()) throw PreconditionError("emotion lexicon is empty");
  entries_ = std::make_shared<const WordMap>(std::move(entries));
}

EmotionLexicon EmotionLexicon::load(const std::filesystem::path& file) {
  WordMap entries;
  lexicon_io::for_each_record(file, [&](std::size_t line, const std::vector<std::string>& f) {
    if (f.size() < 2 || f[0].empty()) lexicon_io::fail(file, line, "expected token<TAB>emotion");
    const auto emotion = emotion_from_string(f[1]);
    if (!emotion) lexicon_io::fail(file, line, "unknown emotion '" + f[1] + "'");
    const std::string key = lexicon_io::lookup_key(f[0]);
    if (key.find(' ') != std::string::npos) lexicon_io::fail(file, line, "multi-word entries are not supported");
    const auto [it, inserted] = entries.emplace(key, *emotion);
    if (!inserted && it->second != *emotion) {
      lexicon_io::fail(file, line, "'" + key + "' is already mapped to " + std::string(to_string(it->second)));
    }
  });
  if (entries.empty()) throw InputError("emotion lexicon " + file.string() + " has no entries");
  return EmotionLexicon(std::move(entries));
}

std::optional<Emotion> EmotionLexicon::find(std::string_view word) const {
  const auto it = entries_->find(word);
  if (it == entries_->end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

double EmotionIntensity::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

CombinationMask EmotionIntensity::mask() const {
  CombinationMask m = 0;
  for (Emotion e : kEmotions) {
    if ((*this)[e] > 0.0) m |= mask_bit(e);
  }
  return m;
}

double CombinationPartition::percent(CombinationMask mask) const {
  if (n == 0) return 0.0;
  return static_cast<double>(counts[mask]) * 100.0 / static_cast<double>(n);
}

EmotionIntensity score_emotions(std::string_view text, const EmotionLexicon& lexicon) {
  std::array<std::size_t, kEmotionCount> hits{};
  std::size_t total = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    if (const auto e = lexicon.find(lexicon_io::lookup_key(text.substr(start, i - start)))) {
      ++hits[index_of(*e)];
      ++total;
    }
  }
  EmotionIntensity out;
  if (total == 0) return out;
  for (std::size_t k = 0; k < kEmotionCount; ++k) {
    out.values[k] = static_cast<double>(hits[k]) / static_cast<double>(total);
  }
  return out;
}

EmotionIntensity mean_intensity(std::span<const EmotionIntensity> units) {
  if (units.empty()) throw EmptyDatasetError("emotion intensity of an empty dataset");
  EmotionIntensity sum;
  for (const EmotionIntensity& u : units) {
    for (std::size_t k = 0; k < kEmotionCount; ++k) sum.values[k] += u.values[k];
  }
  for (double& v : sum.values) v /= static_cast<double>(units.size());
  return sum;
}

EmotionVolume volume_of(std::span<const EmotionIntensity> units) {
  if (units.empty()) throw EmptyDatasetError("emotion volume of an empty dataset");
  EmotionVolume vol;
  for (const EmotionIntensity& u : units) {
    for (std::size_t k = 0; k < kEmotionCount; ++k) {
      if (u.values[k] > 0.0) ++vol.counts[k];  // ceiling of an intensity in [0, 1]
    }
  }
  return vol;
}

CombinationPartition partition_of(std::span<const EmotionIntensity> units) {
  if (units.empty()) throw EmptyDatasetError("combination partition of an empty dataset");
  CombinationPartition p;
  p.n = units.size();
  for (const EmotionIntensity& u : units) ++p.counts[u.mask()];
  return p;
}

std::vector<EmotionIntensity> score_units(const Dataset& dataset, const EmotionLexicon& lexicon) {
  std::vector<EmotionIntensity> out;
  out.reserve(dataset.size());
  for (const DataUnit& u : dataset.units()) out.push_back(score_emotions(u.text, lexicon));
  return out;
}

EmotionIntensity emotion_intensity(const Dataset& dataset, const EmotionLexicon& lexicon) {
  if (dataset.empty()) empty_dataset(dataset, "emotion intensity");
  return mean_intensity(score_units(dataset, lexicon));
}

EmotionVolume emotion_volume(const Dataset& dataset, const EmotionLexicon& lexicon) {
  if (dataset.empty()) empty_dataset(dataset, "emotion volume");
  return volume_of(score_units(dataset, lexicon));
}

CombinationPartition combination_partition(const Dataset& dataset, const EmotionLexicon& lexicon) {
  if (dataset.empty()) empty_dataset(dataset, "combination partition");
  return partition_of(score_units(dataset, lexicon));
}

EmotionProfile emotion_profile(const Dataset& dataset, const EmotionLexicon& lexicon) {
  if (dataset.empty()) empty_dataset(dataset, "emotion profile");
  const std::vector<EmotionIntensity> scored = score_units(dataset, lexicon);
  return {mean_intensity(scored), volume_of(scored), partition_of(scored), scored.size()};
}

}  // namespace attackwatch
