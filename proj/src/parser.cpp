#include "gamebpa/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace gamebpa {

ParseError::ParseError(std::string message, SourceSpan s,
                       std::vector<std::string> exp)
    : std::runtime_error(std::move(message)), span(s), expected(std::move(exp)) {}

namespace {

enum class Tok { Ident, Delta, Dot, Plus, Dollar, Amp, LParen, RParen, End };

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Delta: return "'delta'";
    case Tok::Dot: return "'.'";
    case Tok::Plus: return "'+'";
    case Tok::Dollar: return "'$'";
    case Tok::Amp: return "'&'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws();
    SourceSpan span{line_, col_, 1};
    if (pos_ >= src_.size()) return {Tok::End, "", span};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        word += src_[pos_];
        advance();
      }
      span.length = static_cast<int>(word.size());
      if (word == "delta") return {Tok::Delta, word, span};
      return {Tok::Ident, word, span};
    }
    advance();
    switch (c) {
      case '.': return {Tok::Dot, ".", span};
      case '+': return {Tok::Plus, "+", span};
      case '$': return {Tok::Dollar, "$", span};
      case '&': return {Tok::Amp, "&", span};
      case '(': return {Tok::LParen, "(", span};
      case ')': return {Tok::RParen, ")", span};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", span);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class TermParser {
 public:
  explicit TermParser(std::string_view src) : lexer_(src) { bump(); }

  Term parse() {
    Term t = parse_play();
    expect(Tok::End);
    return t;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  void expect(Tok kind) {
    if (cur_.kind != kind)
      throw ParseError("expected " + std::string(tok_name(kind)) + ", found " +
                           std::string(tok_name(cur_.kind)),
                       cur_.span, {tok_name(kind)});
    if (kind != Tok::End) bump();
  }

  Term parse_play() {
    Term t = parse_alt();
    while (cur_.kind == Tok::Amp) {
      bump();
      t = Term::play(t, parse_alt());
    }
    return t;
  }

  Term parse_alt() {
    Term t = parse_seq();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Dollar) {
      bool opp = cur_.kind == Tok::Dollar;
      bump();
      Term rhs = parse_seq();
      t = opp ? Term::opp_alt(t, rhs) : Term::alt(t, rhs);
    }
    return t;
  }

  Term parse_seq() {
    Term t = parse_atom();
    if (cur_.kind == Tok::Dot) {
      bump();
      return Term::seq(t, parse_seq());
    }
    return t;
  }

  Term parse_atom() {
    switch (cur_.kind) {
      case Tok::Delta:
        bump();
        return Term::deadlock();
      case Tok::Ident: {
        Term t = Term::action(cur_.text);
        bump();
        return t;
      }
      case Tok::LParen: {
        bump();
        Term t = parse_play();
        expect(Tok::RParen);
        return t;
      }
      default:
        throw ParseError("expected a term, found " +
                             std::string(tok_name(cur_.kind)),
                         cur_.span,
                         {"identifier", "'delta'", "'('"});
    }
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", {}};
};

// Precedence levels used by both the parser and the printer.
constexpr int kPrecPlay = 0;
constexpr int kPrecAlt = 1;
constexpr int kPrecSeq = 2;
constexpr int kPrecAtom = 3;

void print_rec(const Term& t, int min_prec, std::string& out) {
  int prec;
  std::string body;
  switch (t.kind()) {
    case TermKind::Deadlock:
      out += "delta";
      return;
    case TermKind::Action:
      out += t.label().name;
      return;
    case TermKind::Seq: {
      prec = kPrecSeq;
      print_rec(t.left(), kPrecAtom, body);
      body += " . ";
      print_rec(t.right(), kPrecSeq, body);
      break;
    }
    case TermKind::Alt:
    case TermKind::OppAlt: {
      prec = kPrecAlt;
      print_rec(t.left(), kPrecAlt, body);
      body += t.kind() == TermKind::Alt ? " + " : " $ ";
      print_rec(t.right(), kPrecAlt + 1, body);
      break;
    }
    case TermKind::Play: {
      prec = kPrecPlay;
      print_rec(t.left(), kPrecPlay, body);
      body += " & ";
      print_rec(t.right(), kPrecPlay + 1, body);
      break;
    }
    default:
      throw std::logic_error("unhandled term kind");
  }
  if (prec < min_prec) {
    out += '(';
    out += body;
    out += ')';
  } else {
    out += body;
  }
}

}  // namespace

Term parse_term(std::string_view src) { return TermParser(src).parse(); }

std::string print_term(const Term& t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

namespace {

// One logical line of a declaration file with its position, comments stripped.
struct DeclLine {
  std::string text;
  int line;
};

std::vector<DeclLine> decl_lines(std::string_view src) {
  std::vector<DeclLine> out;
  int line = 1;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t end = src.find('\n', start);
    std::string_view raw = src.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    std::string text(raw);
    if (text.find_first_not_of(" \t\r") != std::string::npos)
      out.push_back({text, line});
    if (end == std::string_view::npos) break;
    start = end + 1;
    ++line;
  }
  return out;
}

std::vector<std::string> split_names(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

GameDeclaration parse_game_decl(std::string_view src) {
  GameDeclaration decl;
  auto lines = decl_lines(src);
  if (lines.empty())
    throw ParseError("empty game declaration", SourceSpan{1, 1, 1}, {"players"});

  std::size_t idx = 0;
  {
    const auto& first = lines[idx];
    std::istringstream iss(first.text);
    std::string keyword;
    iss >> keyword;
    if (keyword != "players")
      throw ParseError("expected 'players' header", SourceSpan{first.line, 1, 1},
                       {"players"});
    std::string rest;
    std::getline(iss, rest);
    for (const auto& name : split_names(rest, ',')) {
      if (!valid_identifier(name))
        throw ParseError("invalid role name '" + name + "'",
                         SourceSpan{first.line, 1, 1});
      Role role{name};
      if (decl.has_player(role))
        throw ParseError("duplicate role '" + name + "' in players list",
                         SourceSpan{first.line, 1, 1});
      decl.players.push_back(role);
    }
    if (decl.players.size() < 2)
      throw ParseError("a game needs at least two players",
                       SourceSpan{first.line, 1, 1});
    ++idx;
  }

  for (; idx < lines.size(); ++idx) {
    const auto& ln = lines[idx];
    auto colon = ln.text.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected ':' after the owning role",
                       SourceSpan{ln.line, 1, 1}, {"':'"});
    std::istringstream head(ln.text.substr(0, colon));
    std::string keyword, role_name, extra;
    head >> keyword >> role_name >> extra;
    if (keyword != "owner")
      throw ParseError("expected 'owner' line", SourceSpan{ln.line, 1, 1},
                       {"owner"});
    if (role_name.empty() || !extra.empty())
      throw ParseError("expected exactly one role after 'owner'",
                       SourceSpan{ln.line, 1, 1});
    std::string rest = ln.text.substr(colon + 1);
    if (!valid_identifier(role_name))
      throw ParseError("invalid role name '" + role_name + "'",
                       SourceSpan{ln.line, 1, 1});
    Role role{role_name};
    if (!decl.has_player(role))
      throw ParseError("role '" + role_name + "' is not in the players list",
                       SourceSpan{ln.line, 1, 1});
    for (const auto& name : split_names(rest, ',')) {
      if (!valid_identifier(name))
        throw ParseError("invalid action label '" + name + "'",
                         SourceSpan{ln.line, 1, 1});
      ActionLabel label{name};
      if (decl.ownership.count(label))
        throw ParseError("action '" + name + "' already has an owner",
                         SourceSpan{ln.line, 1, 1});
      decl.ownership.emplace(label, role);
    }
  }
  return decl;
}

}  // namespace gamebpa
