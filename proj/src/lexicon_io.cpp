#include "lexicon_io.hpp"

#include <cctype>
#include <fstream>

#include "attackwatch/errors.hpp"

namespace attackwatch::lexicon_io {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

}  // namespace

void for_each_record(const std::filesystem::path& path,
                     const std::function<void(std::size_t, const std::vector<std::string>&)>& fn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    fields.clear();
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(trim(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    fn(line_no, fields);
  }
}

void fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + what, line);
}

std::string lookup_key(std::string_view token) {
  std::size_t b = 0, e = token.size();
  while (b < e && !is_word_char(static_cast<unsigned char>(token[b]))) ++b;
  while (e > b && !is_word_char(static_cast<unsigned char>(token[e - 1]))) --e;
  std::string key;
  key.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    const auto c = static_cast<unsigned char>(token[i]);
    if (c == '\'') continue;
    key.push_back(static_cast<char>(std::tolower(c)));
  }
  return key;
}

}  // namespace attackwatch::lexicon_io
