#pragma once

// Line readers for the tab-separated lexicon files.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace attackwatch::lexicon_io {

// Calls `fn(line_number, fields)` for every non-blank line that does not
// start with '#'. Fields are split on TAB and trimmed. Throws InputError when
// the file cannot be opened.
void for_each_record(const std::filesystem::path& path,
                     const std::function<void(std::size_t, const std::vector<std::string>&)>& fn);

// "path:line: message" as an InputError.
[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& what);

// Lowercased token with leading/trailing punctuation and inner apostrophes
// removed; the form lexicon lookups use.
std::string lookup_key(std::string_view token);

}  // namespace attackwatch::lexicon_io
