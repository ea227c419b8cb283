#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace attackwatch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input (corpus files, lexicons, timeline, config).
// `line()` is 1-based; 0 means the error is not tied to a line.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An aggregate was requested over a dataset with no units.
class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied value violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace attackwatch
