#pragma once

#include <stdexcept>
#include <string>

namespace slp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A gloss or token that is not present in a dictionary or vocabulary.
class LookupError : public Error {
 public:
  explicit LookupError(std::string key)
      : Error("unknown entry '" + key + "'"), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but numerically unusable (zero scale, non-finite values, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Binary/versioned file format violations (bad magic, truncation).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slp
