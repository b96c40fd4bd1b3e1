#include "lexer.hpp"

#include <set>

namespace lambdav {

ParseError::ParseError(SourceLoc loc, const std::string &msg)
    : std::runtime_error(std::to_string(loc.line) + ":" +
                         std::to_string(loc.column) + ": " + msg),
      loc_(loc) {}

namespace {

using detail::Tok;
using detail::Token;

SExprPtr mk(SExpr e) { return std::make_shared<const SExpr>(std::move(e)); }
SPatPtr mkp(SPat p) { return std::make_shared<const SPat>(std::move(p)); }

class Parser {
public:
  // `tokens` ends with an End token.
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool atEnd() const { return peek().kind == Tok::End; }
  const Token &peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }

  SurfaceDef parseDef() {
    SurfaceDef d;
    d.loc = expectKeyword("def").loc;
    if (peek().kind != Tok::Ident)
      fail("expected a definition name");
    d.name = next().text;
    while (!isPunct("="))
      d.params.push_back(atomPattern());
    next();
    d.body = expr();
    return d;
  }

  SExprPtr expr() {
    const Token &t = peek();
    if (isPunct("\\"))
      return lambda();
    if (t.kind == Tok::Keyword) {
      if (t.text == "let")
        return letExpr();
      if (t.text == "if")
        return ifExpr();
      if (t.text == "case")
        return caseExpr();
      if (t.text == "for")
        return forExpr();
    }
    return joinExpr();
  }

  [[noreturn]] void fail(const std::string &msg) const {
    const Token &t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.loc, msg + ", found " + found);
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token &next() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  bool isPunct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool isKeyword(std::string_view k) const {
    return peek().kind == Tok::Keyword && peek().text == k;
  }
  const Token &expectPunct(std::string_view p) {
    if (!isPunct(p))
      fail("expected '" + std::string(p) + "'");
    return next();
  }
  const Token &expectKeyword(std::string_view k) {
    if (!isKeyword(k))
      fail("expected '" + std::string(k) + "'");
    return next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident)
      fail("expected an identifier");
    return next().text;
  }

  // Binding forms.

  SExprPtr lambda() {
    SExpr e{.tag = SExpr::Tag::Lam, .loc = next().loc};
    do
      e.pats.push_back(atomPattern());
    while (!isPunct("."));
    next();
    e.args.push_back(expr());
    return mk(std::move(e));
  }

  SExprPtr letExpr() {
    SExpr e{.tag = SExpr::Tag::Let, .loc = next().loc};
    e.pats.push_back(pattern());
    expectPunct("=");
    e.args.push_back(expr());
    expectKeyword("in");
    e.args.push_back(expr());
    return mk(std::move(e));
  }

  SExprPtr ifExpr() {
    SExpr e{.tag = SExpr::Tag::If, .loc = next().loc};
    e.args.push_back(expr());
    expectKeyword("then");
    e.args.push_back(expr());
    expectKeyword("else");
    e.args.push_back(expr());
    return mk(std::move(e));
  }

  SExprPtr caseExpr() {
    SExpr e{.tag = SExpr::Tag::Case, .loc = next().loc};
    e.args.push_back(expr());
    expectKeyword("of");
    if (isPunct("|"))
      next();
    do {
      e.pats.push_back(pattern());
      expectPunct("->");
      e.args.push_back(expr());
    } while (isPunct("|") && (next(), true));
    return mk(std::move(e));
  }

  SExprPtr forExpr() {
    SExpr e{.tag = SExpr::Tag::For, .loc = next().loc};
    e.name = ident();
    expectKeyword("in");
    e.args.push_back(expr());
    expectKeyword("join");
    e.args.push_back(expr());
    return mk(std::move(e));
  }

  // Operators, lowest precedence first.

  SExprPtr binary(SExpr::Tag tag, std::string name, SExprPtr a, SExprPtr b,
                  SourceLoc loc) {
    SExpr e{.tag = tag, .name = std::move(name), .loc = loc};
    e.args = {std::move(a), std::move(b)};
    return mk(std::move(e));
  }

  // Operand that may also be an open binding form extending to the right.
  template <typename Sub> SExprPtr operand(Sub sub) {
    const Token &t = peek();
    if (isPunct("\\") ||
        (t.kind == Tok::Keyword &&
         (t.text == "let" || t.text == "if" || t.text == "case" || t.text == "for")))
      return expr();
    return (this->*sub)();
  }

  SExprPtr joinExpr() {
    SExprPtr lhs = orExpr();
    while (isPunct("\\/")) {
      SourceLoc loc = next().loc;
      lhs = binary(SExpr::Tag::Join, "", lhs, operand(&Parser::orExpr), loc);
    }
    return lhs;
  }

  SExprPtr orExpr() {
    SExprPtr lhs = andExpr();
    if (isPunct("||")) {
      SourceLoc loc = next().loc;
      return binary(SExpr::Tag::BinOp, "||", lhs, operand(&Parser::orExpr), loc);
    }
    return lhs;
  }

  SExprPtr andExpr() {
    SExprPtr lhs = cmpExpr();
    if (isPunct("&&")) {
      SourceLoc loc = next().loc;
      return binary(SExpr::Tag::BinOp, "&&", lhs, operand(&Parser::andExpr), loc);
    }
    return lhs;
  }

  SExprPtr cmpExpr() {
    SExprPtr lhs = consExpr();
    for (const char *op : {"==", "<=", ">=", "<", ">"}) {
      if (isPunct(op)) {
        SourceLoc loc = next().loc;
        return binary(SExpr::Tag::BinOp, op, lhs, operand(&Parser::consExpr), loc);
      }
    }
    return lhs;
  }

  SExprPtr consExpr() {
    SExprPtr lhs = addExpr();
    if (isPunct("::")) {
      SourceLoc loc = next().loc;
      return binary(SExpr::Tag::Cons, "", lhs, operand(&Parser::consExpr), loc);
    }
    return lhs;
  }

  SExprPtr addExpr() {
    SExprPtr lhs = appExpr();
    while (isPunct("+")) {
      SourceLoc loc = next().loc;
      lhs = binary(SExpr::Tag::BinOp, "+", lhs, operand(&Parser::appExpr), loc);
    }
    return lhs;
  }

  bool atomStart() const {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Ident:
    case Tok::Upper:
    case Tok::Nat:
    case Tok::Str:
    case Tok::SymLit:
      return true;
    case Tok::Keyword:
      return t.text == "bot" || t.text == "top" || t.text == "botv" ||
             t.text == "true" || t.text == "false" || t.text == "succ";
    case Tok::Punct:
      return t.text == "(" || t.text == "{" || t.text == "[";
    default:
      return false;
    }
  }

  SExprPtr appExpr() {
    SExprPtr f = argument();
    while (atomStart()) {
      SourceLoc loc = peek().loc;
      SExpr e{.tag = SExpr::Tag::App, .loc = loc};
      e.args = {f, argument()};
      f = mk(std::move(e));
    }
    return f;
  }

  // A constructor application, `succ e`, or a projected atom.
  SExprPtr argument() {
    const Token &t = peek();
    if (t.kind == Tok::Upper || (t.kind == Tok::Keyword && t.text == "succ")) {
      bool isSucc = t.kind == Tok::Keyword;
      SExpr e{.tag = isSucc ? SExpr::Tag::Succ : SExpr::Tag::Ctor,
              .name = t.text,
              .loc = t.loc};
      next();
      if (isSucc && !atomStart())
        fail("expected an argument for succ");
      if (atomStart())
        e.args.push_back(projected());
      return mk(std::move(e));
    }
    return projected();
  }

  SExprPtr projected() {
    SExprPtr a = atom();
    while (isPunct(".") && peek(1).kind == Tok::Ident) {
      SourceLoc loc = next().loc;
      SExpr e{.tag = SExpr::Tag::Proj, .name = next().text, .loc = loc};
      e.args.push_back(a);
      a = mk(std::move(e));
    }
    return a;
  }

  SExprPtr atom() {
    const Token &t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
    case Tok::Ident:
      return mk({.tag = SExpr::Tag::Var, .name = next().text, .loc = loc});
    case Tok::Nat: {
      SExpr e{.tag = SExpr::Tag::Nat, .loc = loc};
      e.nat = std::stoull(next().text);
      return mk(std::move(e));
    }
    case Tok::Str:
    case Tok::SymLit:
      return mk({.tag = SExpr::Tag::Sym, .name = next().text, .loc = loc});
    case Tok::Keyword:
      if (t.text == "bot" || t.text == "top" || t.text == "botv") {
        auto tag = t.text == "bot"   ? SExpr::Tag::Bot
                   : t.text == "top" ? SExpr::Tag::Top
                                     : SExpr::Tag::BotV;
        next();
        return mk({.tag = tag, .loc = loc});
      }
      if (t.text == "true" || t.text == "false")
        return mk({.tag = SExpr::Tag::Sym, .name = next().text, .loc = loc});
      break;
    case Tok::Punct:
      if (t.text == "(")
        return parenExpr();
      if (t.text == "{")
        return braceExpr();
      if (t.text == "[")
        return listExpr();
      break;
    default:
      break;
    }
    fail("expected an expression");
  }

  SExprPtr parenExpr() {
    SourceLoc loc = next().loc;
    if (isPunct(")")) {
      next();
      return mk({.tag = SExpr::Tag::Sym, .name = "()", .loc = loc});
    }
    std::vector<SExprPtr> items{expr()};
    while (isPunct(",")) {
      next();
      items.push_back(expr());
    }
    expectPunct(")");
    SExprPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;)
      acc = binary(SExpr::Tag::Tuple, "", items[i], acc, loc);
    return acc;
  }

  SExprPtr braceExpr() {
    SourceLoc loc = next().loc;
    if (isPunct("=") && isPunct("}", 1)) {
      next();
      next();
      return mk({.tag = SExpr::Tag::Record, .loc = loc});
    }
    if (peek().kind == Tok::Ident && isPunct("=", 1)) {
      SExpr e{.tag = SExpr::Tag::Record, .loc = loc};
      std::set<std::string> seen;
      do {
        if (!e.fields.empty())
          next();
        SourceLoc floc = peek().loc;
        std::string f = ident();
        if (!seen.insert(f).second)
          throw ParseError(floc, "duplicate record field '" + f + "'");
        expectPunct("=");
        e.fields.push_back(f);
        e.args.push_back(expr());
      } while (isPunct(","));
      expectPunct("}");
      return mk(std::move(e));
    }
    SExpr e{.tag = SExpr::Tag::Set, .loc = loc};
    if (!isPunct("}")) {
      e.args.push_back(expr());
      while (isPunct(",")) {
        next();
        e.args.push_back(expr());
      }
    }
    expectPunct("}");
    return mk(std::move(e));
  }

  SExprPtr listExpr() {
    SExpr e{.tag = SExpr::Tag::List, .loc = next().loc};
    if (!isPunct("]")) {
      e.args.push_back(expr());
      while (isPunct(",")) {
        next();
        e.args.push_back(expr());
      }
    }
    expectPunct("]");
    return mk(std::move(e));
  }

public:
  // Patterns.

  SPatPtr pattern() {
    SPatPtr lhs = appPattern();
    if (isPunct("::")) {
      SPat p{.tag = SPat::Tag::Cons, .loc = next().loc};
      p.args = {lhs, pattern()};
      return mkp(std::move(p));
    }
    return lhs;
  }

  bool atomPatternStart() const {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Ident:
    case Tok::Nat:
    case Tok::Str:
    case Tok::SymLit:
      return true;
    case Tok::Keyword:
      return t.text == "true" || t.text == "false";
    case Tok::Punct:
      return t.text == "(" || t.text == "[" || t.text == "{";
    default:
      return false;
    }
  }

  SPatPtr appPattern() {
    const Token &t = peek();
    if (t.kind == Tok::Upper) {
      SPat p{.tag = SPat::Tag::Ctor, .name = t.text, .loc = t.loc};
      next();
      if (atomPatternStart())
        p.args.push_back(atomPattern());
      return mkp(std::move(p));
    }
    if (t.kind == Tok::Keyword && t.text == "succ") {
      SPat p{.tag = SPat::Tag::Succ, .loc = t.loc};
      next();
      p.args.push_back(atomPattern());
      return mkp(std::move(p));
    }
    return atomPattern();
  }

  SPatPtr atomPattern() {
    const Token &t = peek();
    SourceLoc loc = t.loc;
    switch (t.kind) {
    case Tok::Ident: {
      std::string name = next().text;
      if (name == "_")
        return mkp({.tag = SPat::Tag::Wild, .loc = loc});
      return mkp({.tag = SPat::Tag::Var, .name = name, .loc = loc});
    }
    case Tok::Nat: {
      SPat p{.tag = SPat::Tag::Nat, .loc = loc};
      p.nat = std::stoull(next().text);
      return mkp(std::move(p));
    }
    case Tok::Str:
    case Tok::SymLit:
      return mkp({.tag = SPat::Tag::Sym, .name = next().text, .loc = loc});
    case Tok::Keyword:
      if (t.text == "true" || t.text == "false")
        return mkp({.tag = SPat::Tag::Sym, .name = next().text, .loc = loc});
      break;
    case Tok::Punct:
      if (t.text == "(") {
        next();
        if (isPunct(")")) {
          next();
          return mkp({.tag = SPat::Tag::Sym, .name = "()", .loc = loc});
        }
        std::vector<SPatPtr> items{pattern()};
        while (isPunct(",")) {
          next();
          items.push_back(pattern());
        }
        expectPunct(")");
        SPatPtr acc = items.back();
        for (std::size_t i = items.size() - 1; i-- > 0;) {
          SPat p{.tag = SPat::Tag::Tuple, .loc = loc};
          p.args = {items[i], acc};
          acc = mkp(std::move(p));
        }
        return acc;
      }
      if (t.text == "[") {
        next();
        expectPunct("]");
        return mkp({.tag = SPat::Tag::Nil, .loc = loc});
      }
      if (t.text == "{") {
        next();
        SPat p{.tag = SPat::Tag::Record, .loc = loc};
        p.fields.push_back(ident());
        while (isPunct(",")) {
          next();
          p.fields.push_back(ident());
        }
        expectPunct("}");
        return mkp(std::move(p));
      }
      break;
    default:
      break;
    }
    fail("expected a pattern");
  }
};

} // namespace

SurfaceProgram parseProgram(std::string_view text) {
  auto tokens = detail::lex(text);
  // Each top-level item starts at column 1.
  std::vector<std::vector<Token>> items;
  for (auto &t : tokens) {
    if (t.kind == Tok::End)
      break;
    if (t.loc.column == 1 || items.empty()) {
      if (t.loc.column != 1)
        throw ParseError(t.loc, "top-level items must start in column 1");
      items.emplace_back();
    }
    items.back().push_back(t);
  }
  SurfaceProgram prog;
  std::set<std::string> names;
  for (auto &item : items) {
    SourceLoc endLoc = item.back().loc;
    item.push_back({Tok::End, "", {endLoc.line, endLoc.column + 1}});
    Parser p(std::move(item));
    if (p.peek().kind == Tok::Keyword && p.peek().text == "def") {
      SurfaceDef d = p.parseDef();
      if (!names.insert(d.name).second)
        throw ParseError(d.loc, "duplicate definition of '" + d.name + "'");
      if (!p.atEnd())
        p.fail("unexpected token after definition");
      prog.defs.push_back(std::move(d));
    } else {
      SourceLoc loc = p.peek().loc;
      if (prog.main)
        throw ParseError(loc, "more than one main expression");
      prog.main = p.expr();
      if (!p.atEnd())
        p.fail("unexpected token after expression");
    }
  }
  return prog;
}

} // namespace lambdav
