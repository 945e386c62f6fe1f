#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace udcg {

// Base class for every error the toolkit raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `line` is 1-based, 0 when the error is not line-bound.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A record or argument breaks a documented invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class DuplicateKeyError : public Error {
 public:
  using Error::Error;
};

// Vectors or weights of incompatible length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace udcg
