#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace crossmod::detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct TextLine {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

/// Splits text into whitespace-separated tokens per line, dropping `#`
/// comments and blank lines.
std::vector<TextLine> tokenize_lines(std::string_view text);

bool is_identifier(std::string_view s);

/// Parses a non-negative decimal integer; throws ParseError at `token`.
std::size_t parse_count(const Token& token, std::string_view what);

/// Splits "key=value"; throws ParseError if the key does not match.
std::string_view expect_keyed(const Token& token, std::string_view key);

}  // namespace crossmod::detail
