#include <map>
#include <sstream>

#include "crossmod/detail/text.hpp"
#include "crossmod/errors.hpp"
#include "crossmod/presentation.hpp"

namespace crossmod {

namespace {

using detail::Token;

std::string exponent_text(int e) { return e < 0 ? "-1" : "+1"; }

class PresentationReader {
 public:
  CrossedModulePresentation read(std::string_view text) {
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw ParseError(1, 0, "empty input, expected header 'presentation v1'");
    const auto& header = lines.front();
    if (header.tokens.size() != 2 || header.tokens[0].text != "presentation" || header.tokens[1].text != "v1")
      throw ParseError(header.number, 1, "expected header 'presentation v1'");

    bool have_base = false, have_b1 = false;
    std::size_t b1_line = 0, b1_column = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& tokens = lines[i].tokens;
      const Token& kw = tokens[0];
      if (kw.text == "base") {
        if (have_base) throw ParseError(kw.line, kw.column, "'base' declared twice");
        have_base = true;
        for (std::size_t t = 1; t < tokens.size(); ++t) declare(tokens[t], base_index_, /*base=*/true);
      } else if (kw.text == "b1") {
        if (have_b1) throw ParseError(kw.line, kw.column, "'b1' declared twice");
        if (tokens.size() != 2) throw ParseError(kw.line, kw.column, "expected 'b1 <n>'");
        have_b1 = true;
        pres_.rank_b1 = detail::parse_count(tokens[1], "b1 value");
        b1_line = tokens[1].line;
        b1_column = tokens[1].column;
      } else if (kw.text == "rel") {
        require_base(have_base, kw);
        pres_.base_relations.push_back(parse_word(tokens, 1, tokens.size()));
      } else if (kw.text == "pgen") {
        require_base(have_base, kw);
        if (tokens.size() < 4 || tokens[2].text != "boundary")
          throw ParseError(kw.line, kw.column, "expected 'pgen <name> boundary <word>'");
        declare(tokens[1], principal_index_, /*base=*/false);
        pres_.principal_generators.push_back({tokens[1].text, parse_word(tokens, 3, tokens.size())});
      } else if (kw.text == "rel2") {
        require_base(have_base, kw);
        pres_.two_relations.push_back(parse_two_relation(tokens));
      } else {
        throw ParseError(kw.line, kw.column, "unknown directive '" + kw.text + "'");
      }
    }
    const std::size_t last = lines.back().number;
    if (!have_base) throw ParseError(last, 0, "missing 'base' line");
    if (!have_b1) throw ParseError(last, 0, "missing 'b1' line");
    if (pres_.rank_b1 > pres_.base_generators.size())
      throw ParseError(b1_line, b1_column,
                       "b1 = " + std::to_string(pres_.rank_b1) + " exceeds base generator count " +
                           std::to_string(pres_.base_generators.size()));
    return std::move(pres_);
  }

 private:
  static void require_base(bool have_base, const Token& kw) {
    if (!have_base) throw ParseError(kw.line, kw.column, "'" + kw.text + "' before 'base'");
  }

  void declare(const Token& t, std::map<std::string, std::size_t>& index, bool base) {
    if (!detail::is_identifier(t.text)) throw ParseError(t.line, t.column, "malformed generator name '" + t.text + "'");
    if (base_index_.contains(t.text) || principal_index_.contains(t.text))
      throw ParseError(t.line, t.column, "generator '" + t.text + "' declared twice");
    if (base) {
      index[t.text] = pres_.base_generators.size();
      pres_.base_generators.push_back(t.text);
    } else {
      index[t.text] = pres_.principal_generators.size();
    }
  }

  Letter parse_letter(const Token& t) const {
    std::string_view text = t.text;
    int exponent = 1;
    if (auto caret = text.find('^'); caret != std::string_view::npos) {
      std::string_view exp = text.substr(caret + 1);
      if (exp == "-1") exponent = -1;
      else if (exp == "1" || exp == "+1") exponent = 1;
      else throw ParseError(t.line, t.column + caret + 1, "exponent must be 1 or -1, got '" + std::string(exp) + "'");
      text = text.substr(0, caret);
    }
    auto it = base_index_.find(std::string(text));
    if (it == base_index_.end()) {
      if (principal_index_.contains(std::string(text)))
        throw ParseError(t.line, t.column, "'" + std::string(text) + "' is a principal generator, expected a base generator");
      throw ParseError(t.line, t.column, "undefined base generator '" + std::string(text) + "'");
    }
    return {it->second, exponent};
  }

  GroupWord parse_word(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) const {
    if (begin >= end) {
      const Token& last = tokens[begin - 1];
      throw ParseError(last.line, last.column, "missing group word (use '1' for the empty word)");
    }
    if (end - begin == 1 && tokens[begin].text == "1") return {};
    std::vector<Letter> letters;
    for (std::size_t i = begin; i < end; ++i) {
      if (tokens[i].text == "1")
        throw ParseError(tokens[i].line, tokens[i].column, "'1' may only appear alone as the empty word");
      letters.push_back(parse_letter(tokens[i]));
    }
    return GroupWord(std::move(letters));
  }

  /// Splits tokens at '(', ')', ';' and '^' so that both "( X ) e ^ +1" and
  /// "(X) e^+1" read the same.
  static std::vector<Token> split_relation_tokens(const std::vector<Token>& tokens) {
    std::vector<Token> out;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      std::string current;
      std::size_t current_col = t.column;
      auto flush = [&] {
        if (!current.empty()) out.push_back({current, t.line, current_col});
        current.clear();
      };
      for (std::size_t k = 0; k < t.text.size(); ++k) {
        char c = t.text[k];
        if (c == '(' || c == ')' || c == ';') {
          flush();
          out.push_back({std::string(1, c), t.line, t.column + k});
          current_col = t.column + k + 1;
        } else {
          if (current.empty()) current_col = t.column + k;
          current += c;
        }
      }
      flush();
    }
    return out;
  }

  TwoRelation parse_two_relation(const std::vector<Token>& line) {
    const std::vector<Token> tokens = split_relation_tokens(line);
    TwoRelation relation;
    std::size_t i = 0;
    auto at_end = [&](std::string_view what) {
      if (i >= tokens.size()) {
        const Token& last = tokens.empty() ? line.back() : tokens.back();
        throw ParseError(last.line, last.column + last.text.size(), "unexpected end of line, expected " + std::string(what));
      }
    };
    while (i < tokens.size()) {
      if (tokens[i].text != "(") throw ParseError(tokens[i].line, tokens[i].column, "expected '(' to open a conjugator");
      std::size_t close = i + 1;
      while (close < tokens.size() && tokens[close].text != ")") ++close;
      if (close >= tokens.size()) throw ParseError(tokens[i].line, tokens[i].column, "unclosed '('");
      if (close == i + 1) throw ParseError(tokens[i].line, tokens[i].column, "empty conjugator (use '( 1 )')");
      PrincipalTerm term;
      term.conjugator = parse_word(tokens, i + 1, close);
      i = close + 1;

      at_end("principal generator");
      std::string gen = tokens[i].text;
      std::string exp_text;
      const Token& gen_token = tokens[i];
      if (auto caret = gen.find('^'); caret != std::string::npos) {
        exp_text = gen.substr(caret + 1);
        gen = gen.substr(0, caret);
        ++i;
        if (exp_text.empty()) {
          at_end("exponent");
          exp_text = tokens[i++].text;
        }
      } else {
        ++i;
        at_end("'^'");
        if (tokens[i].text == "^") {
          ++i;
          at_end("exponent");
          exp_text = tokens[i++].text;
        } else if (tokens[i].text.starts_with("^")) {
          exp_text = tokens[i++].text.substr(1);
        } else {
          throw ParseError(tokens[i].line, tokens[i].column, "expected '^ <+1|-1>' after generator");
        }
      }
      auto it = principal_index_.find(gen);
      if (it == principal_index_.end()) {
        if (base_index_.contains(gen))
          throw ParseError(gen_token.line, gen_token.column, "'" + gen + "' is a base generator, expected a principal generator");
        throw ParseError(gen_token.line, gen_token.column, "undefined principal generator '" + gen + "'");
      }
      term.generator = it->second;
      if (exp_text == "+1" || exp_text == "1") term.exponent = 1;
      else if (exp_text == "-1") term.exponent = -1;
      else throw ParseError(gen_token.line, gen_token.column, "exponent must be +1 or -1, got '" + exp_text + "'");
      relation.terms.push_back(std::move(term));

      if (i < tokens.size()) {
        if (tokens[i].text != ";") throw ParseError(tokens[i].line, tokens[i].column, "expected ';' between terms");
        ++i;
        at_end("next term");
      }
    }
    return relation;
  }

  CrossedModulePresentation pres_;
  std::map<std::string, std::size_t> base_index_;
  std::map<std::string, std::size_t> principal_index_;
};

}  // namespace

std::string serialize(const CrossedModulePresentation& pres) {
  std::ostringstream os;
  os << "presentation v1\n";
  os << "base";
  for (const auto& n : pres.base_generators) os << ' ' << n;
  os << "\nb1 " << pres.rank_b1 << '\n';
  for (const auto& r : pres.base_relations) os << "rel " << format_word(r, pres.base_generators) << '\n';
  for (const auto& p : pres.principal_generators)
    os << "pgen " << p.name << " boundary " << format_word(p.boundary, pres.base_generators) << '\n';
  for (const auto& r : pres.two_relations) {
    os << "rel2";
    for (std::size_t t = 0; t < r.terms.size(); ++t) {
      const auto& term = r.terms[t];
      os << (t ? " ; " : " ") << "( " << format_word(term.conjugator, pres.base_generators) << " ) "
         << pres.principal_generators[term.generator].name << " ^ " << exponent_text(term.exponent);
    }
    os << '\n';
  }
  return os.str();
}

CrossedModulePresentation parse_presentation(std::string_view text) { return PresentationReader{}.read(text); }

}  // namespace crossmod
