#include "wpn/netfile.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace wpn {

namespace {

struct Token {
  enum class Kind { ident, nat, colon, equals, comma };
  Kind kind;
  std::string text;
  std::size_t column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-';
}

std::vector<Token> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (c == ':' || c == '=' || c == ',') {
      out.push_back({c == ':' ? Token::Kind::colon : c == '=' ? Token::Kind::equals : Token::Kind::comma, std::string(1, c), col});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && ident_start(line[j])) throw ParseError(lineno, col, "identifiers must not start with a digit");
      out.push_back({Token::Kind::nat, line.substr(i, j - i), col});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::Kind::ident, line.substr(i, j - i), col});
      i = j;
    } else {
      throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

Tokens to_nat(const Token& t, std::size_t lineno) {
  Tokens v = 0;
  for (char c : t.text) {
    if (__builtin_mul_overflow(v, Tokens{10}, &v) || __builtin_add_overflow(v, Tokens(c - '0'), &v))
      throw ParseError(lineno, t.column, "number too large");
  }
  return v;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t lineno, std::size_t line_len)
      : toks_(std::move(toks)), lineno_(lineno), end_col_(line_len + 1) {}

  bool done() const { return pos_ == toks_.size(); }
  const Token* peek() const { return done() ? nullptr : &toks_[pos_]; }
  std::size_t column() const { return done() ? end_col_ : toks_[pos_].column; }

  const Token& expect(Token::Kind k, const char* what) {
    if (done() || toks_[pos_].kind != k) throw ParseError(lineno_, column(), std::string("expected ") + what);
    return toks_[pos_++];
  }
  bool accept_keyword(const char* kw) {
    if (!done() && toks_[pos_].kind == Token::Kind::ident && toks_[pos_].text == kw) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_end() {
    if (!done()) throw ParseError(lineno_, column(), "unexpected '" + toks_[pos_].text + "'");
  }
  std::size_t line() const { return lineno_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
  std::size_t end_col_;
};

}  // namespace

ExtNet parse_net(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<LineParser> lines;
  std::size_t lineno = 0, last_len = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = tokenize(raw, lineno);
    last_len = raw.size();
    if (!toks.empty()) lines.emplace_back(std::move(toks), lineno, raw.size());
  }
  std::size_t at = 0;
  auto next_line = [&](const char* what) -> LineParser& {
    if (at == lines.size()) throw ParseError(lineno ? lineno : 1, last_len + 1, std::string("expected ") + what);
    return lines[at++];
  };

  ExtNet net;
  {
    LineParser& l = next_line("'net' header");
    if (!l.accept_keyword("net")) throw ParseError(l.line(), l.column(), "expected 'net'");
    net.name = l.expect(Token::Kind::ident, "net name").text;
    l.expect_end();
  }
  std::map<std::string, PlaceId> place_of;
  {
    LineParser& l = next_line("'places' line");
    if (!l.accept_keyword("places")) throw ParseError(l.line(), l.column(), "expected 'places'");
    do {
      std::size_t col = l.column();
      const Token& t = l.expect(Token::Kind::ident, "place name");
      if (!place_of.emplace(t.text, net.places.size()).second) throw ParseError(l.line(), col, "duplicate place '" + t.text + "'");
      net.places.push_back(t.text);
    } while (!l.done());
  }
  auto lookup = [&](LineParser& l, const Token& t) {
    auto it = place_of.find(t.text);
    if (it == place_of.end()) throw ParseError(l.line(), t.column, "unknown place '" + t.text + "'");
    return it->second;
  };
  net.initial = Marking(net.places.size());
  {
    LineParser& l = next_line("'init' line");
    if (!l.accept_keyword("init")) throw ParseError(l.line(), l.column(), "expected 'init'");
    std::vector<bool> seen(net.places.size());
    while (!l.done()) {
      const Token& p = l.expect(Token::Kind::ident, "place name");
      PlaceId id = lookup(l, p);
      if (seen[id]) throw ParseError(l.line(), p.column, "place '" + p.text + "' initialised twice");
      seen[id] = true;
      l.expect(Token::Kind::equals, "'='");
      net.initial[id] = to_nat(l.expect(Token::Kind::nat, "token count"), l.line());
    }
  }
  std::map<std::string, std::size_t> trans_line;
  while (at < lines.size()) {
    LineParser& l = lines[at++];
    if (!l.accept_keyword("trans")) throw ParseError(l.line(), l.column(), "expected 'trans'");
    std::size_t name_col = l.column();
    ExtTransition t;
    t.name = l.expect(Token::Kind::ident, "transition name").text;
    if (!trans_line.emplace(t.name, l.line()).second) throw ParseError(l.line(), name_col, "duplicate transition '" + t.name + "'");
    t.input.assign(net.places.size(), ArcLabel::num(0));
    t.output.assign(net.places.size(), ArcLabel::num(0));
    for (bool input : {true, false}) {
      if (!l.accept_keyword(input ? "in" : "out")) continue;
      std::vector<bool> seen(net.places.size());
      do {
        const Token& p = l.expect(Token::Kind::ident, "place name");
        PlaceId id = lookup(l, p);
        if (seen[id]) throw ParseError(l.line(), p.column, "duplicate arc on place '" + p.text + "'");
        seen[id] = true;
        l.expect(Token::Kind::colon, "':'");
        std::size_t wcol = l.column();
        const Token* w = l.peek();
        ArcLabel a;
        if (w && w->kind == Token::Kind::nat) {
          a = ArcLabel::num(to_nat(l.expect(Token::Kind::nat, "weight"), l.line()));
        } else if (w && w->kind == Token::Kind::ident && (w->text == "w" || w->text == "T" || w->text == "R")) {
          std::string s = l.expect(Token::Kind::ident, "weight").text;
          if (s == "R" && !input) throw ParseError(l.line(), wcol, "reset arcs are only allowed on inputs");
          a = s == "w" ? ArcLabel::omega() : s == "T" ? ArcLabel::transfer() : ArcLabel::reset();
        } else {
          throw ParseError(l.line(), wcol, "expected a weight (number, w, T or R)");
        }
        (input ? t.input : t.output)[id] = a;
      } while (!l.done() && !(l.peek()->kind == Token::Kind::ident && l.peek()->text == "out" && input));
    }
    l.expect_end();
    net.transitions.push_back(std::move(t));
  }
  try {
    net.validate();
  } catch (const WellFormednessError& e) {
    std::string msg = e.what();
    for (const auto& [name, line] : trans_line)
      if (msg.find("'" + name + "'") != std::string::npos) throw WellFormednessError("line " + std::to_string(line) + ": " + msg);
    throw;
  }
  return net;
}

namespace {

void emit_arcs(std::ostringstream& os, const char* kw, const std::vector<ArcLabel>& arcs, const std::vector<std::string>& places) {
  bool any = false;
  for (PlaceId p = 0; p < arcs.size(); ++p) {
    if (arcs[p].is_num() && arcs[p].weight == 0) continue;
    if (!any) os << ' ' << kw;
    any = true;
    os << ' ' << places[p] << ':' << to_string(arcs[p]);
  }
}

}  // namespace

std::string emit_net(const ExtNet& net) {
  std::ostringstream os;
  os << "net " << net.name << "\n";
  os << "places";
  for (const auto& p : net.places) os << ' ' << p;
  os << "\ninit";
  for (PlaceId p = 0; p < net.place_count(); ++p)
    if (net.initial[p]) os << ' ' << net.places[p] << '=' << net.initial[p];
  os << "\n";
  for (const auto& t : net.transitions) {
    os << "trans " << t.name;
    emit_arcs(os, "in", t.input, net.places);
    emit_arcs(os, "out", t.output, net.places);
    os << "\n";
  }
  return os.str();
}

std::string emit_net(const Net& net) { return emit_net(to_ext(net)); }

Marking parse_marking(const std::string& text, const std::vector<std::string>& places) {
  auto toks = tokenize(text, 1);
  Marking m(places.size());
  std::vector<bool> seen(places.size());
  LineParser l(std::move(toks), 1, text.size());
  while (!l.done()) {
    const Token& p = l.expect(Token::Kind::ident, "place name");
    PlaceId id = places.size();
    for (PlaceId i = 0; i < places.size(); ++i)
      if (places[i] == p.text) id = i;
    if (id == places.size()) throw ParseError(1, p.column, "unknown place '" + p.text + "'");
    if (seen[id]) throw ParseError(1, p.column, "place '" + p.text + "' listed twice");
    seen[id] = true;
    l.expect(Token::Kind::equals, "'='");
    m[id] = to_nat(l.expect(Token::Kind::nat, "token count"), 1);
    if (!l.done()) l.expect(Token::Kind::comma, "','");
  }
  return m;
}

std::string format_marking(const Marking& m, const std::vector<std::string>& places) {
  std::string s;
  for (PlaceId p = 0; p < m.size(); ++p) {
    if (!s.empty()) s += ',';
    s += places.at(p) + "=" + std::to_string(m[p]);
  }
  return s;
}

}  // namespace wpn
