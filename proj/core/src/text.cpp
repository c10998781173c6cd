#include "crossmod/detail/text.hpp"

#include <cctype>

#include "crossmod/errors.hpp"

namespace crossmod::detail {

std::vector<TextLine> tokenize_lines(std::string_view text) {
  std::vector<TextLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    TextLine out{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      out.tokens.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
    }
    if (!out.tokens.empty()) lines.push_back(std::move(out));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::size_t parse_count(const Token& token, std::string_view what) {
  if (token.text.empty() || token.text.size() > 9)
    throw ParseError(token.line, token.column, "expected " + std::string(what) + ", got '" + token.text + "'");
  std::size_t value = 0;
  for (char c : token.text) {
    if (c < '0' || c > '9')
      throw ParseError(token.line, token.column, "expected " + std::string(what) + ", got '" + token.text + "'");
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

std::string_view expect_keyed(const Token& token, std::string_view key) {
  std::string_view t = token.text;
  if (t.size() <= key.size() || t.substr(0, key.size()) != key || t[key.size()] != '=')
    throw ParseError(token.line, token.column, "expected " + std::string(key) + "=<value>, got '" + token.text + "'");
  return t.substr(key.size() + 1);
}

}  // namespace crossmod::detail
