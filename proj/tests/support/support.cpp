#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aw_test {

std::filesystem::path data_dir() { return ATTACKWATCH_TEST_DATA_ROOT; }
std::filesystem::path test_data_dir() { return ATTACKWATCH_TEST_FIXTURES; }

const Timeline& bundled_timeline() {
  static const Timeline t = Timeline::load(data_dir() / "timeline.yaml");
  return t;
}

const LexiconSet& bundled_lexicons() {
  static const LexiconSet l = LexiconSet::load(data_dir() / "lexicons");
  return l;
}

const LexiconSet& test_lexicons() {
  static const LexiconSet l = LexiconSet::load(data_dir() / "lexicons" / "test");
  return l;
}

DataUnit make_unit(std::string id, std::string_view timestamp, std::string text, std::string author) {
  DataUnit u;
  u.id = std::move(id);
  u.author = std::move(author);
  u.timestamp = parse_timestamp(timestamp);
  u.raw_text = text;
  u.text = std::move(text);
  return u;
}

DataUnit make_unit(std::string id, Date day, int second_of_day, std::string text, std::string author) {
  DataUnit u;
  u.id = std::move(id);
  u.author = std::move(author);
  u.timestamp = Timestamp(day) + std::chrono::seconds{second_of_day};
  u.raw_text = text;
  u.text = std::move(text);
  return u;
}

const TestVocabulary& vocabulary() {
  static const TestVocabulary v{
      {"good", "great", "bad", "attack", "hope"},
      {"very", "slightly"},
      {"not", "never"},
      {"glad", "joy", "mad", "rage", "wow", "shock", "sad", "cry", "scared", "panic"},
      {"coin", "chain", "price", "block", "today", "miners", "exchange", "51", "hash", "the"},
  };
  return v;
}

std::string random_text(std::mt19937_64& rng, int max_tokens) {
  const TestVocabulary& v = vocabulary();
  std::uniform_int_distribution<int> len(0, max_tokens);
  std::uniform_int_distribution<int> group(0, 9);
  std::uniform_int_distribution<int> bang(0, 5);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const std::vector<std::string>* pool = nullptr;
    const int g = group(rng);
    if (g < 3) pool = &v.valence;
    else if (g == 3) pool = &v.boosters;
    else if (g == 4) pool = &v.negators;
    else if (g < 7) pool = &v.emotion;
    else pool = &v.filler;
    std::uniform_int_distribution<std::size_t> pick(0, pool->size() - 1);
    if (!out.empty()) out.push_back(' ');
    out += (*pool)[pick(rng)];
    const int b = bang(rng);
    if (b >= 3) out.append(static_cast<std::size_t>(b - 2), '!');
  }
  return out;
}

std::string random_noise(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "Hello", "WORLD", "https://t.co/AbC", "www.example.com/x?y=1", "#BTG", "@user", "50%", "51%",
      "don't", "caf\xC3\xA9", "\xF0\x9F\x98\xB1", "!!!", "  ", "\t", "\n", "...", "--", "x_y", "a,b",
      "http://", "ETC", "double-spend", "\xE2\x80\x94", "(E4)", "price$", "[", "]", "0xFF"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 15);
  std::uniform_int_distribution<int> glue(0, 2);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (glue(rng) != 0) out.push_back(' ');
    out += pieces[pick(rng)];
  }
  return out;
}

std::vector<DataUnit> random_units(std::mt19937_64& rng, std::size_t n, Date first, int days) {
  std::uniform_int_distribution<int> day(0, days - 1);
  std::uniform_int_distribution<int> sec(0, 86399);
  std::vector<DataUnit> units;
  units.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    units.push_back(make_unit("u" + std::to_string(i), first + std::chrono::days{day(rng)}, sec(rng),
                              random_text(rng), "a" + std::to_string(i % 97)));
  }
  return units;
}

std::vector<DataUnit> synthetic_day(std::mt19937_64& rng, Date day, const DayMix& mix,
                                    const std::string& prefix) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> sec(0, 86399);
  std::vector<DataUnit> units;
  units.reserve(mix.n);
  for (std::size_t i = 0; i < mix.n; ++i) {
    const double r = u(rng);
    std::string text;
    if (r < mix.negative) text = u(rng) < mix.keyword ? "51 attack on the chain" : "bad price today";
    else if (r < mix.negative + 0.2) text = "good coin today";
    else text = "coin chain today";
    if (u(rng) < mix.fear) text += " scared";
    const std::string id = prefix + format_date(day) + "_" + std::to_string(i);
    units.push_back(make_unit(id, day, sec(rng), text, "author_" + id));
  }
  std::sort(units.begin(), units.end(),
            [](const DataUnit& a, const DataUnit& b) { return a.timestamp < b.timestamp; });
  return units;
}

Dataset peak_fixture(const Event& event, Date peak, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> jitter(0, 6);
  const DateWindow window = compute_windows(event).attack;
  std::vector<DataUnit> units;
  for (Date d = window.start(); d <= window.end(); d += std::chrono::days{1}) {
    DayMix mix;
    mix.n = d == peak ? 60 : 8 + jitter(rng);
    mix.negative = d == peak ? 0.7 : 0.3;
    mix.keyword = 0.8;
    const auto day = synthetic_day(rng, d, mix, event.label() + "_");
    units.insert(units.end(), day.begin(), day.end());
  }
  return Dataset(DatasetLabel::attack, event.label(), std::move(units), {"synthetic"}, window);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<std::string, std::string>> read_pairs(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("oracle: cannot read " + file.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) out.emplace_back(line, "");
    else out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

// Lowercased token with edge punctuation and apostrophes removed.
std::string oracle_key(const std::string& token) {
  std::string key;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c))) key += static_cast<char>(std::tolower(c));
    else if (c == '\'') continue;
    else if (!key.empty()) key += c;
  }
  while (!key.empty() && !std::isalnum(static_cast<unsigned char>(key.back()))) key.pop_back();
  return key;
}

int trailing_bangs(const std::string& token) {
  int n = 0;
  for (auto it = token.rbegin(); it != token.rend() && !std::isalnum(static_cast<unsigned char>(*it)); ++it) {
    if (*it == '!') ++n;
  }
  return n;
}

std::vector<std::string> split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

OracleValence OracleValence::read(const std::filesystem::path& dir) {
  OracleValence o;
  for (const auto& [w, v] : read_pairs(dir / "valence.tsv")) o.words[w] = std::stod(v);
  for (const auto& [w, v] : read_pairs(dir / "boosters.txt")) o.boosters[w] = v.empty() ? 0.293 : std::stod(v);
  for (const auto& [w, v] : read_pairs(dir / "negators.txt")) o.negators.insert(w);
  return o;
}

double OracleValence::sum(const std::string& text) const {
  const std::vector<std::string> raw = split(text);
  std::vector<std::string> keys;
  for (const std::string& t : raw) keys.push_back(oracle_key(t));

  double total = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (boosters.count(keys[i]) || negators.count(keys[i])) continue;
    const auto hit = words.find(keys[i]);
    if (hit == words.end()) continue;
    double v = hit->second;
    const bool negative_word = v < 0;

    // Step 1: booster directly before the word.
    if (i >= 1) {
      const auto b = boosters.find(keys[i - 1]);
      if (b != boosters.end()) v = negative_word ? v - b->second : v + b->second;
    }
    // Step 2: one negation if any of the three previous tokens negates.
    bool negated = false;
    for (std::size_t j = (i >= 3 ? i - 3 : 0); j < i; ++j) negated = negated || negators.count(keys[j]) > 0;
    if (negated) v = v * -0.74;
    // Step 3: emphasis marks, up to three, away from zero.
    const int bangs = std::min(trailing_bangs(raw[i]), 3);
    if (v > 0) v += 0.292 * bangs;
    else if (v < 0) v -= 0.292 * bangs;
    total += v;
  }
  return total;
}

double OracleValence::compound(const std::string& text) const {
  const double s = sum(text);
  if (s == 0.0) return 0.0;
  const double c = s / std::sqrt(s * s + 15.0);
  return std::max(-1.0, std::min(1.0, c));
}

OracleEmotion OracleEmotion::read(const std::filesystem::path& file) {
  static const std::map<std::string, int> index = {
      {"happy", 0}, {"angry", 1}, {"surprise", 2}, {"sad", 3}, {"fear", 4}};
  OracleEmotion o;
  for (const auto& [w, e] : read_pairs(file)) o.words[w] = index.at(e);
  return o;
}

std::array<int, 5> OracleEmotion::hits(const std::string& text) const {
  std::array<int, 5> h{};
  for (const std::string& t : split(text)) {
    const auto it = words.find(oracle_key(t));
    if (it != words.end()) h[static_cast<std::size_t>(it->second)] += 1;
  }
  return h;
}

std::array<double, 5> OracleEmotion::intensity(const std::string& text) const {
  const std::array<int, 5> h = hits(text);
  int total = 0;
  for (int x : h) total += x;
  std::array<double, 5> out{};
  if (total == 0) return out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = static_cast<double>(h[k]) / total;
  return out;
}

std::string OracleEmotion::pattern(const std::string& text) const {
  std::string p;
  for (int x : hits(text)) p += x > 0 ? '1' : '0';
  return p;
}

std::array<std::size_t, 32> oracle_cells(const Dataset& d, const OracleEmotion& lex) {
  std::array<std::size_t, 32> cells{};
  for (const DataUnit& u : d.units()) {
    const std::string p = lex.pattern(u.text);
    int matched = 0;
    for (int mask = 0; mask < 32; ++mask) {
      std::string candidate;
      for (int bit = 4; bit >= 0; --bit) candidate += (mask >> bit) & 1 ? '1' : '0';
      if (candidate == p) {
        ++cells[static_cast<std::size_t>(mask)];
        ++matched;
      }
    }
    if (matched != 1) throw std::logic_error("oracle: unit matched " + std::to_string(matched) + " cells");
  }
  return cells;
}

std::array<std::size_t, 5> oracle_volume(const Dataset& d, const OracleEmotion& lex) {
  std::array<std::size_t, 5> v{};
  for (const DataUnit& u : d.units()) {
    const std::array<int, 5> h = lex.hits(u.text);
    for (std::size_t k = 0; k < 5; ++k) v[k] += h[k] > 0 ? 1 : 0;
  }
  return v;
}

std::size_t oracle_dedup_count(const std::vector<DataUnit>& units) {
  std::vector<const DataUnit*> order;
  for (const DataUnit& u : units) order.push_back(&u);
  std::stable_sort(order.begin(), order.end(),
                   [](const DataUnit* a, const DataUnit* b) { return a->timestamp < b->timestamp; });
  std::vector<std::pair<std::string, std::string>> kept;
  for (const DataUnit* u : order) {
    const std::string text = clean_text(u->text);
    if (text.empty()) continue;
    bool dup = false;
    for (const auto& [author, t] : kept) dup = dup || (author == u->author && t == text);
    if (!dup) kept.emplace_back(u->author, text);
  }
  return kept.size();
}

}  // namespace aw_test
