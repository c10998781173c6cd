#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crossmod {

/// Raised by every text-format reader. Line and column are 1-based; a column
/// of 0 means the error concerns the whole line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(format(line, column, message)),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& message) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// Structural problem in an in-memory object (dangling index, bad shape).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace crossmod
