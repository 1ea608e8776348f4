#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isvd {

/// Operand dimensions do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix text could not be parsed. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        detail_(what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }
  /// Message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
};

/// The operand has no nonzero entry, so it has no leading singular triple.
class ZeroMatrixError : public std::domain_error {
 public:
  ZeroMatrixError() : std::domain_error("zero matrix") {}
  explicit ZeroMatrixError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace isvd
