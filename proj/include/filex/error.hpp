#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace filex {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A process or sweep parameter outside its domain (alpha <= 0, s == 0, ...).
struct InvalidParameter : Error {
  using Error::Error;
};

/// Malformed data handed to an operation (empty weights, unnormalized
/// distribution, empty record set).
struct InvalidInput : Error {
  using Error::Error;
};

/// Kendall's tau is undefined when either series is constant.
struct UndefinedCorrelation : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Configuration problems carry the offending key so callers can report it.
struct ConfigError : Error {
  ConfigError(std::string key, const std::string& what)
      : Error(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace filex
