#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linkbounds {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration or parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace linkbounds
