#include "fordc/syntax.hpp"

#include <cctype>
#include <set>

namespace fordc::syntax {

namespace {

enum class Tok {
  Ident,
  KwData,
  KwDef,
  KwAxiom,
  KwPartial,
  KwType,
  KwType1,
  KwId,
  KwRefl,
  KwJ,
  LParen,
  RParen,
  Colon,
  Arrow,
  FatArrow,
  Equals,
  Bar,
  Comma,
  Backslash,
  Dot,
  DotParen,
  Eof,
};

const char* tokName(Tok t) {
  switch (t) {
  case Tok::Ident: return "identifier";
  case Tok::KwData: return "'data'";
  case Tok::KwDef: return "'def'";
  case Tok::KwAxiom: return "'axiom'";
  case Tok::KwPartial: return "'partial'";
  case Tok::KwType: return "'Type'";
  case Tok::KwType1: return "'Type1'";
  case Tok::KwId: return "'Id'";
  case Tok::KwRefl: return "'refl'";
  case Tok::KwJ: return "'J'";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::Colon: return "':'";
  case Tok::Arrow: return "'->'";
  case Tok::FatArrow: return "'=>'";
  case Tok::Equals: return "'='";
  case Tok::Bar: return "'|'";
  case Tok::Comma: return "','";
  case Tok::Backslash: return "'\\'";
  case Tok::Dot: return "'.'";
  case Tok::DotParen: return "'.('";
  case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, size_t len) {
    Span s{line, col, line, col + static_cast<int>(len)};
    out.push_back({kind, std::string(src.substr(i, len)), s});
    advance(len);
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (identStart(c)) {
      size_t j = i;
      while (j < src.size() && identChar(src[j]))
        ++j;
      // Qualified constructor names: `Vec.cons`, no whitespace around the dot.
      while (j + 1 < src.size() && src[j] == '.' && identStart(src[j + 1])) {
        ++j;
        while (j < src.size() && identChar(src[j]))
          ++j;
      }
      std::string_view word = src.substr(i, j - i);
      Tok kind = Tok::Ident;
      if (word == "data") kind = Tok::KwData;
      else if (word == "def") kind = Tok::KwDef;
      else if (word == "axiom") kind = Tok::KwAxiom;
      else if (word == "partial") kind = Tok::KwPartial;
      else if (word == "Type") kind = Tok::KwType;
      else if (word == "Type1") kind = Tok::KwType1;
      else if (word == "Id") kind = Tok::KwId;
      else if (word == "refl") kind = Tok::KwRefl;
      else if (word == "J") kind = Tok::KwJ;
      push(kind, j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") { push(Tok::Arrow, 2); continue; }
    if (two == "=>") { push(Tok::FatArrow, 2); continue; }
    if (two == ".(") { push(Tok::DotParen, 2); continue; }
    switch (c) {
    case '(': push(Tok::LParen, 1); continue;
    case ')': push(Tok::RParen, 1); continue;
    case ':': push(Tok::Colon, 1); continue;
    case '=': push(Tok::Equals, 1); continue;
    case '|': push(Tok::Bar, 1); continue;
    case ',': push(Tok::Comma, 1); continue;
    case '\\': push(Tok::Backslash, 1); continue;
    case '.': push(Tok::Dot, 1); continue;
    default: break;
    }
    Span s{line, col, line, col + 1};
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string("'") + c + "'"
                            : "byte " + std::to_string(static_cast<unsigned char>(c));
    throw ParseError(s, {"a token"}, shown);
  }
  out.push_back({Tok::Eof, "", Span{line, col, line, col}});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceModule module() {
    SourceModule m;
    while (!at(Tok::Eof))
      m.decls.push_back(declaration());
    return m;
  }

  ExprPtr wholeExpr() {
    auto e = expr();
    expect(Tok::Eof);
    return e;
  }

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> ctorNames_;

  const Token& peek(size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.span, std::move(expected), found);
  }

  Token expect(Tok t) {
    if (!at(t))
      fail({tokName(t)});
    return take();
  }

  std::string ident() { return expect(Tok::Ident).text; }

  bool atDeclStart() const {
    return at(Tok::KwData) || at(Tok::KwDef) || at(Tok::KwAxiom) || at(Tok::KwPartial) ||
           at(Tok::Eof);
  }

  Declaration declaration() {
    if (at(Tok::KwData))
      return dataDecl();
    if (at(Tok::KwDef) || at(Tok::KwPartial))
      return funDecl();
    if (at(Tok::KwAxiom))
      return axiomDecl();
    fail({"'data'", "'def'", "'partial'", "'axiom'"});
  }

  // `(x y : A)` -> two binders
  void binderGroup(Telescope& out) {
    expect(Tok::LParen);
    std::vector<std::string> names;
    do {
      names.push_back(ident());
    } while (at(Tok::Ident));
    expect(Tok::Colon);
    auto type = expr();
    expect(Tok::RParen);
    for (auto& n : names)
      out.push_back({std::move(n), type});
  }

  DataDecl dataDecl() {
    DataDecl d;
    d.span = expect(Tok::KwData).span;
    d.name = ident();
    while (at(Tok::LParen))
      binderGroup(d.params);
    if (at(Tok::Colon)) {
      take();
      if (!at(Tok::LParen))
        fail({"'('"});
      while (at(Tok::LParen))
        binderGroup(d.indices);
    }
    while (at(Tok::Bar))
      d.ctors.push_back(ctorRow(d.name));
    if (!atDeclStart())
      fail({"'|'", "a declaration"});
    return d;
  }

  bool rowHasAvailability() const {
    int depth = 0;
    for (size_t k = pos_ + 1; k < toks_.size(); ++k) {
      Tok t = toks_[k].kind;
      if (t == Tok::LParen || t == Tok::DotParen)
        ++depth;
      else if (t == Tok::RParen)
        --depth;
      else if (depth == 0 && t == Tok::FatArrow)
        return true;
      else if (depth == 0 && (t == Tok::Bar || t == Tok::KwData || t == Tok::KwDef ||
                              t == Tok::KwAxiom || t == Tok::KwPartial || t == Tok::Eof))
        return false;
    }
    return false;
  }

  CtorDecl ctorRow(const std::string& dataName) {
    CtorDecl c;
    c.span = expect(Tok::Bar).span;
    if (rowHasAvailability()) {
      c.availability = patternRow();
      expect(Tok::FatArrow);
    }
    c.name = ident();
    ctorNames_.insert(c.name);
    ctorNames_.insert(dataName + "." + c.name);
    if (at(Tok::Colon)) {
      take();
      c.isPath = true;
      c.pathType = expr();
    } else {
      while (at(Tok::LParen))
        binderGroup(c.args);
    }
    return c;
  }

  FunDecl funDecl() {
    FunDecl f;
    if (at(Tok::KwPartial)) {
      f.span = take().span;
      f.partial = true;
      expect(Tok::KwDef);
    } else {
      f.span = expect(Tok::KwDef).span;
    }
    f.name = ident();
    while (at(Tok::LParen))
      binderGroup(f.params);
    expect(Tok::Colon);
    f.result = expr();
    if (at(Tok::Equals)) {
      take();
      f.body = expr();
    } else if (at(Tok::Bar)) {
      while (at(Tok::Bar)) {
        Clause cl;
        cl.span = take().span;
        cl.patterns = patternRow();
        expect(Tok::FatArrow);
        cl.rhs = expr();
        f.clauses.push_back(std::move(cl));
      }
    } else {
      fail({"'='", "'|'"});
    }
    if (!atDeclStart())
      fail({"'|'", "a declaration"});
    return f;
  }

  AxiomDecl axiomDecl() {
    AxiomDecl a;
    a.span = expect(Tok::KwAxiom).span;
    a.name = ident();
    expect(Tok::Colon);
    a.type = expr();
    if (!atDeclStart())
      fail({"a declaration"});
    return a;
  }

  // ---- patterns -------------------------------------------------------

  std::vector<Pattern> patternRow() {
    std::vector<Pattern> row;
    row.push_back(pattern());
    while (at(Tok::Comma)) {
      take();
      row.push_back(pattern());
    }
    return row;
  }

  bool isCtorName(const std::string& name) const {
    return ctorNames_.count(name) || name.find('.') != std::string::npos;
  }

  Pattern pattern() {
    if (at(Tok::Ident) && isCtorName(peek().text)) {
      auto name = take().text;
      std::vector<Pattern> args;
      while (at(Tok::Ident) || at(Tok::LParen) || at(Tok::DotParen) || at(Tok::KwRefl))
        args.push_back(atomPattern());
      return Pattern::ctor(std::move(name), std::move(args));
    }
    return atomPattern();
  }

  Pattern atomPattern() {
    if (at(Tok::Ident)) {
      auto name = take().text;
      if (isCtorName(name))
        return Pattern::ctor(std::move(name));
      return Pattern::variable(std::move(name));
    }
    if (at(Tok::KwRefl)) {
      take();
      return Pattern::ctor(std::string(kReflName));
    }
    if (at(Tok::DotParen)) {
      take();
      auto t = expr();
      expect(Tok::RParen);
      return Pattern::inaccessible(std::move(t));
    }
    if (at(Tok::LParen)) {
      take();
      auto p = pattern();
      expect(Tok::RParen);
      return p;
    }
    fail({"a pattern"});
  }

  // ---- expressions ----------------------------------------------------

  ExprPtr expr() {
    if (at(Tok::Backslash)) {
      take();
      std::vector<std::string> names;
      do {
        names.push_back(ident());
      } while (at(Tok::Ident));
      expect(Tok::Dot);
      auto body = expr();
      for (auto it = names.rbegin(); it != names.rend(); ++it)
        body = lam(*it, body);
      return body;
    }
    if (at(Tok::LParen) && binderAhead()) {
      take();
      std::vector<std::string> names;
      do {
        names.push_back(ident());
      } while (at(Tok::Ident));
      expect(Tok::Colon);
      auto type = expr();
      expect(Tok::RParen);
      if (at(Tok::Arrow)) {
        take();
        auto cod = expr();
        for (auto it = names.rbegin(); it != names.rend(); ++it)
          cod = pi(*it, type, cod);
        return cod;
      }
      if (names.size() != 1)
        fail({"'->'"});
      // It was an annotation `(x : T)`; keep parsing an application.
      auto head = ann(var(names.front()), type);
      return arrowTail(appTail(head));
    }
    return arrowTail(appExpr());
  }

  // `( Ident+ :` begins either a Pi binder or an annotated variable.
  bool binderAhead() const {
    size_t k = 1;
    if (peek(k).kind != Tok::Ident)
      return false;
    while (peek(k).kind == Tok::Ident)
      ++k;
    return peek(k).kind == Tok::Colon;
  }

  ExprPtr arrowTail(ExprPtr lhs) {
    if (at(Tok::Arrow)) {
      take();
      return arrow(std::move(lhs), expr());
    }
    return lhs;
  }

  bool atAtomStart() const {
    return at(Tok::Ident) || at(Tok::KwType) || at(Tok::KwType1) || at(Tok::KwRefl) ||
           at(Tok::LParen);
  }

  ExprPtr appExpr() {
    if (at(Tok::KwId)) {
      take();
      auto a = atom();
      auto x = atom();
      auto y = atom();
      return appTail(idType(a, x, y));
    }
    if (at(Tok::KwJ)) {
      take();
      auto m = atom();
      auto d = atom();
      auto p = atom();
      return appTail(jElim(m, d, p));
    }
    return appTail(atom());
  }

  ExprPtr appTail(ExprPtr head) {
    while (atAtomStart())
      head = app(head, atom());
    return head;
  }

  ExprPtr atom() {
    if (at(Tok::Ident))
      return var(take().text);
    if (at(Tok::KwType)) {
      take();
      return universe(0);
    }
    if (at(Tok::KwType1)) {
      take();
      return universe(1);
    }
    if (at(Tok::KwRefl)) {
      take();
      return refl();
    }
    if (at(Tok::LParen)) {
      take();
      if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
        // `(x : T)` in argument position is an annotation; a Pi type used
        // as an argument needs its own parentheses.
        auto name = take().text;
        take();
        auto t = expr();
        expect(Tok::RParen);
        return ann(var(std::move(name)), t);
      }
      auto e = expr();
      if (at(Tok::Colon)) {
        take();
        auto t = expr();
        expect(Tok::RParen);
        return ann(e, t);
      }
      expect(Tok::RParen);
      return e;
    }
    fail({"an expression"});
  }
};

} // namespace

SourceModule parse(std::string_view source) {
  Parser p(lex(source));
  return p.module();
}

ExprPtr parseExpr(std::string_view source) {
  Parser p(lex(source));
  return p.wholeExpr();
}

} // namespace fordc::syntax
