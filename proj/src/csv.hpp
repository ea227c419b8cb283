#pragma once

// RFC-4180 reading and writing helpers shared by the corpus loader and the
// report writers.

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace attackwatch::csv {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // `start_line` receives the 1-based line the record starts on; `ok` is
  // false when a quoted field is left unterminated.
  bool next(std::vector<std::string>& fields, std::size_t& start_line, bool& ok);

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

}  // namespace attackwatch::csv
