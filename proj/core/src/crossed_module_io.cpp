#include "crossmod/crossed_module_io.hpp"

#include <optional>
#include <sstream>

#include "crossmod/detail/text.hpp"
#include "crossmod/errors.hpp"

namespace crossmod {

namespace {

using detail::Token;

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next(std::string_view what) {
    if (done()) {
      std::size_t line = tokens_.empty() ? 1 : tokens_.back().line;
      throw ParseError(line, 0, "unexpected end of input, expected " + std::string(what));
    }
    return tokens_[pos_++];
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Element parse_element(TokenStream& ts, std::size_t order, std::string_view what) {
  const Token& t = ts.next(what);
  std::size_t v = detail::parse_count(t, what);
  if (v >= order)
    throw ParseError(t.line, t.column, std::string(what) + " " + t.text + " out of range for order " + std::to_string(order));
  return static_cast<Element>(v);
}

FiniteGroup parse_group_spec(TokenStream& ts) {
  const Token& kind = ts.next("group spec (cyclic, product, table)");
  try {
    if (kind.text == "cyclic") {
      const Token& n = ts.next("cyclic order");
      std::size_t order = detail::parse_count(n, "cyclic order");
      if (order == 0) throw ParseError(n.line, n.column, "cyclic order must be positive");
      return make_cyclic(order);
    }
    if (kind.text == "product") {
      FiniteGroup a = parse_group_spec(ts);
      FiniteGroup b = parse_group_spec(ts);
      return make_direct_product(a, b);
    }
    if (kind.text == "table") {
      const Token& n = ts.next("table order");
      std::size_t order = detail::parse_count(n, "table order");
      if (order == 0 || order > kMaxGroupOrder)
        throw ParseError(n.line, n.column, "table order must be in 1.." + std::to_string(kMaxGroupOrder));
      std::vector<Element> table(order * order);
      for (auto& entry : table) entry = parse_element(ts, order, "table entry");
      return make_from_table(order, std::move(table));
    }
  } catch (const GroupTableError& e) {
    throw ParseError(kind.line, kind.column, std::string("invalid group: ") + e.what());
  }
  throw ParseError(kind.line, kind.column, "unknown group spec '" + kind.text + "'");
}

void write_table(std::ostringstream& os, const FiniteGroup& g) {
  os << "table " << g.order() << '\n';
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) os << (b ? " " : "") << g.mul(a, b);
    os << '\n';
  }
}

}  // namespace

FiniteCrossedModule parse_crossed_module(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "empty input, expected header 'crossed_module v1'");
  const auto& header = lines.front();
  if (header.tokens.size() != 2 || header.tokens[0].text != "crossed_module" || header.tokens[1].text != "v1")
    throw ParseError(header.number, 1, "expected header 'crossed_module v1'");

  std::vector<Token> flat;
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (auto& t : lines[i].tokens) flat.push_back(std::move(t));
  TokenStream ts(std::move(flat));

  std::optional<FiniteGroup> base, principal;
  std::optional<std::vector<Element>> boundary, action;
  std::size_t last_line = header.number;

  while (!ts.done()) {
    const Token& kw = ts.next("section keyword");
    last_line = kw.line;
    if (kw.text == "group") {
      const Token& which = ts.next("'base' or 'principal'");
      if (which.text != "base" && which.text != "principal")
        throw ParseError(which.line, which.column, "expected 'base' or 'principal', got '" + which.text + "'");
      auto& slot = which.text == "base" ? base : principal;
      if (slot) throw ParseError(which.line, which.column, "group " + which.text + " defined twice");
      slot = parse_group_spec(ts);
    } else if (kw.text == "boundary") {
      if (!base || !principal) throw ParseError(kw.line, kw.column, "boundary before both groups are defined");
      if (boundary) throw ParseError(kw.line, kw.column, "boundary defined twice");
      std::vector<Element> values(principal->order());
      for (auto& v : values) v = parse_element(ts, base->order(), "boundary value");
      boundary = std::move(values);
    } else if (kw.text == "action") {
      if (!base || !principal) throw ParseError(kw.line, kw.column, "action before both groups are defined");
      if (action) throw ParseError(kw.line, kw.column, "action defined twice");
      std::vector<Element> values(base->order() * principal->order());
      for (auto& v : values) v = parse_element(ts, principal->order(), "action value");
      action = std::move(values);
    } else {
      throw ParseError(kw.line, kw.column, "unknown section '" + kw.text + "'");
    }
  }
  if (!base) throw ParseError(last_line, 0, "missing 'group base'");
  if (!principal) throw ParseError(last_line, 0, "missing 'group principal'");
  if (!boundary) throw ParseError(last_line, 0, "missing 'boundary'");
  if (!action) throw ParseError(last_line, 0, "missing 'action'");
  return make_crossed_module(std::move(*base), std::move(*principal), std::move(*boundary), std::move(*action));
}

std::string serialize_crossed_module(const FiniteCrossedModule& cm) {
  std::ostringstream os;
  os << "crossed_module v1\n";
  os << "group base ";
  write_table(os, cm.base());
  os << "group principal ";
  write_table(os, cm.principal());
  os << "boundary";
  for (Element v : cm.boundary_table()) os << ' ' << v;
  os << "\naction\n";
  const std::size_t ne = cm.principal().order();
  for (Element g = 0; g < cm.base().order(); ++g) {
    for (Element e = 0; e < ne; ++e) os << (e ? " " : "") << cm.act(g, e);
    os << '\n';
  }
  return os.str();
}

}  // namespace crossmod
