#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "attackwatch/corpus.hpp"
#include "attackwatch/lexicons.hpp"
#include "attackwatch/timeline.hpp"

namespace aw_test {

using namespace attackwatch;

std::filesystem::path data_dir();
std::filesystem::path test_data_dir();

const Timeline& bundled_timeline();
const LexiconSet& bundled_lexicons();
/// The five-word valence lexicon and ten-word emotion lexicon.
const LexiconSet& test_lexicons();

DataUnit make_unit(std::string id, std::string_view timestamp, std::string text,
                   std::string author = "user");
DataUnit make_unit(std::string id, Date day, int second_of_day, std::string text,
                   std::string author = "user");

/// Words of the test lexicons, grouped for generators.
struct TestVocabulary {
  std::vector<std::string> valence;   // good great bad attack hope
  std::vector<std::string> boosters;  // very slightly
  std::vector<std::string> negators;  // not never
  std::vector<std::string> emotion;   // glad joy mad ... panic
  std::vector<std::string> filler;    // out-of-lexicon words
};
const TestVocabulary& vocabulary();

/// Random whitespace-separated text over the test vocabulary.
std::string random_text(std::mt19937_64& rng, int max_tokens = 12);
/// Random printable/unicode/URL noise for cleaning fuzz tests.
std::string random_noise(std::mt19937_64& rng);
/// n units spread over `days` days starting at `first`, random texts.
std::vector<DataUnit> random_units(std::mt19937_64& rng, std::size_t n, Date first, int days);

/// Units of one synthetic day over the test lexicons: `negative` share of
/// negative texts, 20% positive, the rest neutral; `fear` share carry a fear
/// word; `keyword` share of the negative texts mention the attack.
struct DayMix {
  std::size_t n = 100;
  double negative = 0.2;
  double fear = 0.1;
  double keyword = 0.0;
};
std::vector<DataUnit> synthetic_day(std::mt19937_64& rng, Date day, const DayMix& mix,
                                    const std::string& prefix);

/// Attack-window dataset for `event` whose busiest day is `peak`: about ten
/// units on ordinary days, 60 on the peak day, mostly negative there.
Dataset peak_fixture(const Event& event, Date peak, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Oracles. These re-derive results from the lexicon files with their own
// parsing and arithmetic and share no code with the library.

struct OracleValence {
  std::map<std::string, double> words;
  std::map<std::string, double> boosters;
  std::set<std::string> negators;

  static OracleValence read(const std::filesystem::path& dir);
  /// Adjusted valence sum, evaluated token by token with explicit rule steps.
  double sum(const std::string& text) const;
  double compound(const std::string& text) const;
};

struct OracleEmotion {
  std::map<std::string, int> words;  // emotion index 0..4 in H A S D F order

  static OracleEmotion read(const std::filesystem::path& file);
  std::array<int, 5> hits(const std::string& text) const;
  std::array<double, 5> intensity(const std::string& text) const;
  /// Presence pattern as a bit string "10010" in H A S D F order.
  std::string pattern(const std::string& text) const;
};

/// Per-cell counts found by testing every unit against all 32 patterns.
std::array<std::size_t, 32> oracle_cells(const Dataset& d, const OracleEmotion& lex);
std::array<std::size_t, 5> oracle_volume(const Dataset& d, const OracleEmotion& lex);

/// Pairwise duplicate scan: keeps a unit unless an earlier-or-equal-time unit
/// already kept shares author and cleaned text.
std::size_t oracle_dedup_count(const std::vector<DataUnit>& units);

}  // namespace aw_test
