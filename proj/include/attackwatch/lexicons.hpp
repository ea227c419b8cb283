#pragma once

#include <filesystem>

#include "attackwatch/emotion.hpp"
#include "attackwatch/sentiment.hpp"

namespace attackwatch {

/// The valence and emotion lexicons an analysis runs with.
struct LexiconSet {
  ValenceLexicon valence;
  EmotionLexicon emotion;

  /// Reads valence.tsv, boosters.txt, negators.txt and emotions.tsv from `directory`.
  static LexiconSet load(const std::filesystem::path& directory) {
    return {ValenceLexicon::load(directory), EmotionLexicon::load(directory / "emotions.tsv")};
  }
};

}  // namespace attackwatch
