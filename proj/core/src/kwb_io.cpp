#include <map>

#include "crossmod/detail/text.hpp"
#include "crossmod/kwb.hpp"

namespace crossmod {

namespace {

using detail::TextLine;
using detail::Token;

/// Value of one key=value token with the position of the value.
struct Field {
  std::string value;
  std::size_t line;
  std::size_t column;
};

class DiagramReader {
 public:
  KwbDiagram read(std::string_view text) {
    lines_ = detail::tokenize_lines(text);
    if (lines_.empty()) throw ParseError(1, 0, "empty input, expected header 'kwb v1'");
    const auto& header = lines_.front();
    if (header.tokens.size() != 2 || header.tokens[0].text != "kwb" || header.tokens[1].text != "v1")
      throw ParseError(header.number, 1, "expected header 'kwb v1'");

    // Declarations first so that references may point forward.
    for (std::size_t i = 1; i < lines_.size(); ++i) declare(lines_[i]);
    if (!have_circles_) throw ParseError(lines_.back().number, 0, "missing 'circles' line");
    for (std::size_t i = 0; i < d_.arcs.size(); ++i) {
      if (d_.arcs[i].circle >= d_.circles) {
        const Token& t = arc_circle_tokens_[i];
        throw ParseError(t.line, t.column,
                         "circle index " + t.text + " out of range; there are " + std::to_string(d_.circles) +
                             " circles");
      }
    }

    ends_seen_.assign(d_.bands.size(), {0, 0});
    events_.resize(d_.bands.size());
    for (std::size_t i = 1; i < lines_.size(); ++i) connect(lines_[i]);
    finish_bands();

    try {
      d_.validate();
    } catch (const DiagramError& e) {
      const std::size_t line = e.band() ? band_lines_[*e.band()] : lines_.back().number;
      throw ParseError(line, 0, e.what());
    }
    return std::move(d_);
  }

 private:
  void declare(const TextLine& line) {
    const auto& tokens = line.tokens;
    const Token& kw = tokens[0];
    if (kw.text == "circles") {
      if (have_circles_) throw ParseError(kw.line, kw.column, "'circles' declared twice");
      expect_size(line, 2, "circles <n>");
      d_.circles = detail::parse_count(tokens[1], "circle count");
      have_circles_ = true;
    } else if (kw.text == "arc") {
      expect_size(line, 4, "arc <name> circle <i>");
      if (tokens[2].text != "circle") throw ParseError(tokens[2].line, tokens[2].column, "expected 'circle'");
      const std::size_t circle = detail::parse_count(tokens[3], "circle index");
      if (auto existing = d_.find_arc(tokens[1].text)) {
        const std::size_t prev = d_.arcs[*existing].circle;
        if (prev != circle)
          throw ParseError(tokens[1].line, tokens[1].column,
                           "arc '" + tokens[1].text + "' declared on circles " + std::to_string(prev) + " and " +
                               std::to_string(circle));
        throw ParseError(tokens[1].line, tokens[1].column, "arc '" + tokens[1].text + "' declared twice");
      }
      check_name(tokens[1]);
      d_.arcs.push_back({tokens[1].text, circle});
      arc_circle_tokens_.push_back(tokens[3]);
    } else if (kw.text == "band") {
      expect_size(line, 4, "band <name> arcs <k>");
      if (tokens[2].text != "arcs") throw ParseError(tokens[2].line, tokens[2].column, "expected 'arcs'");
      check_name(tokens[1]);
      if (d_.find_arc(tokens[1].text) || d_.find_band(tokens[1].text))
        throw ParseError(tokens[1].line, tokens[1].column, "name '" + tokens[1].text + "' declared twice");
      const std::size_t k = detail::parse_count(tokens[3], "band arc count");
      if (k == 0) throw ParseError(tokens[3].line, tokens[3].column, "a band needs at least one arc");
      d_.bands.push_back({tokens[1].text, k, {}, {}, {}});
      band_lines_.push_back(line.number);
    } else if (kw.text != "crossing" && kw.text != "end" && kw.text != "under_thin" && kw.text != "under_band" &&
               kw.text != "maximal") {
      throw ParseError(kw.line, kw.column, "unknown directive '" + kw.text + "'");
    }
  }

  void connect(const TextLine& line) {
    const auto& tokens = line.tokens;
    const std::string& kw = tokens[0].text;
    if (kw == "crossing") {
      auto f = fields(line, 1, {"over", "under_in", "under_out", "sign"});
      ThinCrossing x{arc(f["over"]), arc(f["under_in"]), arc(f["under_out"]), sign(f["sign"])};
      if (d_.arcs[x.under_in].circle != d_.arcs[x.under_out].circle) {
        const Field& out = f["under_out"];
        throw ParseError(out.line, out.column,
                         "under_in '" + f["under_in"].value + "' and under_out '" + out.value +
                             "' lie on different circles");
      }
      d_.crossings.push_back(x);
    } else if (kw == "end") {
      if (tokens.size() < 3) throw ParseError(line.number, 0, "expected 'end <band> first|last case=.. x=.. y=..'");
      const std::size_t b = band(tokens[1]);
      const Token& which = tokens[2];
      if (which.text != "first" && which.text != "last")
        throw ParseError(which.line, which.column, "expected 'first' or 'last', got '" + which.text + "'");
      const bool first = which.text == "first";
      char& seen = first ? ends_seen_[b].first : ends_seen_[b].second;
      if (seen) throw ParseError(which.line, which.column, "band '" + tokens[1].text + "' " + which.text + " end given twice");
      seen = 1;
      auto f = fields(line, 3, {"case", "x", "y"});
      const Field& c = f["case"];
      if (c.value.size() != 1 || c.value[0] < '1' || c.value[0] > '4')
        throw ParseError(c.line, c.column, "end case must be 1, 2, 3 or 4, got '" + c.value + "'");
      BandEnd end{c.value[0] - '0', arc(f["x"]), arc(f["y"])};
      (first ? d_.bands[b].first : d_.bands[b].last) = end;
    } else if (kw == "under_thin" || kw == "under_band") {
      auto f = fields(line, 1, {"band", "step", "over", "sign"});
      const std::size_t b = band(f["band"]);
      BandEvent ev;
      ev.step = step(f["step"], b);
      ev.sign = sign(f["sign"]);
      if (kw == "under_thin") {
        ev.kind = BandEvent::Kind::UnderThin;
        ev.over_arc = arc(f["over"]);
      } else {
        ev.kind = BandEvent::Kind::UnderBand;
        std::tie(ev.over_band, ev.over_band_arc) = band_arc(f["over"]);
      }
      auto& slot = events_[b];
      if (slot.contains(ev.step))
        throw ParseError(f["step"].line, f["step"].column,
                         "band '" + d_.bands[b].name + "' has two events for step " + f["step"].value);
      slot.emplace(ev.step, ev);
    } else if (kw == "maximal") {
      if (tokens.size() < 3) throw ParseError(line.number, 0, "expected 'maximal <name> <band>.<arc>:<+1|-1> ...'");
      check_name(tokens[1]);
      for (const auto& m : d_.maximal)
        if (m.name == tokens[1].text)
          throw ParseError(tokens[1].line, tokens[1].column, "maximal circle '" + m.name + "' declared twice");
      MaximalCircle m{tokens[1].text, {}};
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        const Token& tok = tokens[t];
        const auto colon = tok.text.rfind(':');
        if (colon == std::string::npos)
          throw ParseError(tok.line, tok.column, "expected <band>.<arc>:<+1|-1>, got '" + tok.text + "'");
        const std::string exp = tok.text.substr(colon + 1);
        if (exp != "+1" && exp != "-1")
          throw ParseError(tok.line, tok.column + colon + 1, "exponent must be +1 or -1, got '" + exp + "'");
        auto [b, a] = band_arc({tok.text.substr(0, colon), tok.line, tok.column});
        m.terms.push_back({b, a, exp == "+1" ? 1 : -1});
      }
      d_.maximal.push_back(std::move(m));
    }
  }

  void finish_bands() {
    for (std::size_t b = 0; b < d_.bands.size(); ++b) {
      Band& band = d_.bands[b];
      if (!ends_seen_[b].first) throw ParseError(band_lines_[b], 0, "band '" + band.name + "' has no first end");
      if (!ends_seen_[b].second) throw ParseError(band_lines_[b], 0, "band '" + band.name + "' has no last end");
      for (std::size_t s = 0; s + 1 < band.arc_count; ++s) {
        auto it = events_[b].find(s);
        if (it == events_[b].end())
          throw ParseError(band_lines_[b], 0,
                           "band '" + band.name + "' has no event for step " + std::to_string(s + 1));
        band.events.push_back(it->second);
      }
    }
  }

  static void expect_size(const TextLine& line, std::size_t n, const char* usage) {
    if (line.tokens.size() != n) throw ParseError(line.number, 0, std::string("expected '") + usage + "'");
  }

  static void check_name(const Token& t) {
    if (!detail::is_identifier(t.text)) throw ParseError(t.line, t.column, "malformed name '" + t.text + "'");
  }

  static std::map<std::string, Field> fields(const TextLine& line, std::size_t from,
                                             std::initializer_list<const char*> keys) {
    std::map<std::string, Field> out;
    for (std::size_t i = from; i < line.tokens.size(); ++i) {
      const Token& t = line.tokens[i];
      const auto eq = t.text.find('=');
      if (eq == std::string::npos) throw ParseError(t.line, t.column, "expected key=value, got '" + t.text + "'");
      std::string key = t.text.substr(0, eq);
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) == keys.end())
        throw ParseError(t.line, t.column, "unexpected key '" + key + "'");
      if (out.contains(key)) throw ParseError(t.line, t.column, "key '" + key + "' given twice");
      out[key] = {t.text.substr(eq + 1), t.line, t.column + eq + 1};
    }
    for (const char* k : keys)
      if (!out.contains(k)) throw ParseError(line.number, 0, std::string("missing key '") + k + "'");
    return out;
  }

  std::size_t arc(const Field& f) const {
    if (auto i = d_.find_arc(f.value)) return *i;
    throw ParseError(f.line, f.column, "undefined arc '" + f.value + "'");
  }

  std::size_t band(const Field& f) const {
    if (auto i = d_.find_band(f.value)) return *i;
    throw ParseError(f.line, f.column, "undefined band '" + f.value + "'");
  }
  std::size_t band(const Token& t) const { return band(Field{t.text, t.line, t.column}); }

  std::pair<std::size_t, std::size_t> band_arc(const Field& f) const {
    const auto dot = f.value.rfind('.');
    if (dot == std::string::npos)
      throw ParseError(f.line, f.column, "expected <band>.<arc>, got '" + f.value + "'");
    const std::size_t b = band(Field{f.value.substr(0, dot), f.line, f.column});
    const Token num{f.value.substr(dot + 1), f.line, f.column + dot + 1};
    const std::size_t a = detail::parse_count(num, "band arc number");
    if (a < 1 || a > d_.bands[b].arc_count)
      throw ParseError(num.line, num.column,
                       "band '" + d_.bands[b].name + "' has arcs 1.." + std::to_string(d_.bands[b].arc_count) +
                           ", got " + num.text);
    return {b, a - 1};
  }

  std::size_t step(const Field& f, std::size_t b) const {
    const std::size_t s = detail::parse_count(Token{f.value, f.line, f.column}, "step");
    const std::size_t k = d_.bands[b].arc_count;
    if (s < 1 || s + 1 > k)
      throw ParseError(f.line, f.column,
                       "band '" + d_.bands[b].name + "' has " + std::to_string(k) + " arcs; step must lie in 1.." +
                           std::to_string(k - 1) + ", got " + f.value);
    return s - 1;
  }

  static int sign(const Field& f) {
    if (f.value == "+") return 1;
    if (f.value == "-") return -1;
    throw ParseError(f.line, f.column, "sign must be '+' or '-', got '" + f.value + "'");
  }

  std::vector<TextLine> lines_;
  KwbDiagram d_;
  bool have_circles_ = false;
  std::vector<Token> arc_circle_tokens_;
  std::vector<std::size_t> band_lines_;
  std::vector<std::pair<char, char>> ends_seen_;
  std::vector<std::map<std::size_t, BandEvent>> events_;
};

}  // namespace

KwbDiagram parse_diagram(std::string_view text) { return DiagramReader().read(text); }

}  // namespace crossmod
