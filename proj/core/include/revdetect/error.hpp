#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revdetect {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Filesystem or serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Structured text (JSON, model output, config) that could not be parsed or
// validated.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Corpus ingestion failure. `line()` is the 1-based record line, or 0 when the
// failure is not tied to a single line (e.g. a dangling reference found after
// all records were read).
class CorpusError : public Error {
 public:
  CorpusError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Vector dimensions disagree (embedding vs cache, or two operands).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace revdetect
