#include "lambdav/formula.hpp"

#include <cctype>
#include <optional>

namespace lambdav {

namespace {

std::optional<std::uint64_t> natOf(const Formula &f) {
  std::uint64_t n = 0;
  const Formula *cur = &f;
  while (cur->kind() == FKind::Pair && cur->child(0).kind() == FKind::Sym) {
    Symbol tag = cur->child(0).symbol();
    if (tag == sym::zero())
      return cur->child(1).kind() == FKind::BotV ? std::optional(n) : std::nullopt;
    if (tag != sym::succ())
      return std::nullopt;
    ++n;
    cur = &cur->child(1);
  }
  return std::nullopt;
}

void print(const Formula &f, std::string &out) {
  switch (f.kind()) {
  case FKind::Bot: out += "bot"; return;
  case FKind::Top: out += "top"; return;
  case FKind::BotV: out += "botv"; return;
  case FKind::Sym: {
    const std::string &n = f.symbol().name();
    if (f.symbol().isString() || f.symbol().isUnit() || n == "true" || n == "false")
      out += n;
    else
      out += "'" + n;
    return;
  }
  case FKind::Pair:
    if (auto n = natOf(f)) {
      out += std::to_string(*n);
      return;
    }
    out += '(';
    print(f.child(0), out);
    out += ", ";
    print(f.child(1), out);
    out += ')';
    return;
  case FKind::Set:
    out += '{';
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      if (i)
        out += ", ";
      print(f.child(i), out);
    }
    out += '}';
    return;
  case FKind::Fun:
    out += "\\/ [";
    for (std::size_t i = 0; i < f.clauseCount(); ++i) {
      if (i)
        out += ", ";
      print(f.clause(i).input, out);
      out += " -> ";
      print(f.clause(i).output, out);
    }
    out += ']';
    return;
  }
}

class Reader {
public:
  explicit Reader(std::string_view s) : s_(s) {}

  Formula formula() {
    skip();
    if (eat("\\/") || eat("∨")) {
      expect("[");
      std::vector<std::pair<Formula, Formula>> clauses;
      if (!eat("]")) {
        do {
          Formula in = value("a clause input");
          expect("->");
          Formula out = formula();
          clauses.emplace_back(in, out);
        } while (eat(","));
        expect("]");
      }
      return fFun(std::move(clauses));
    }
    if (eat("(")) {
      if (eat(")"))
        return fSym(sym::unit());
      Formula a = value("a pair component");
      expect(",");
      Formula b = value("a pair component");
      expect(")");
      return fPair(a, b);
    }
    if (eat("{")) {
      std::vector<Formula> elems;
      if (!eat("}")) {
        do
          elems.push_back(value("a set element"));
        while (eat(","));
        expect("}");
      }
      return fSet(std::move(elems));
    }
    if (eat("'")) {
      std::string name = word();
      if (name.empty())
        fail("expected a symbol name");
      return fSym(name);
    }
    if (peek() == '"') {
      std::size_t j = pos_ + 1;
      while (j < s_.size() && s_[j] != '"')
        j += s_[j] == '\\' ? 2 : 1;
      if (j >= s_.size())
        fail("unterminated string");
      std::string lit(s_.substr(pos_, j - pos_ + 1));
      pos_ = j + 1;
      return fSym(lit);
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        digits += s_[pos_++];
      return fNat(std::stoull(digits));
    }
    std::string w = word();
    if (w == "bot")
      return fBot();
    if (w == "top")
      return fTop();
    if (w == "botv")
      return fBotV();
    if (w == "true" || w == "false")
      return fSym(w);
    fail(w.empty() ? "expected a formula" : "unknown word '" + w + "'");
  }

  void finish() {
    skip();
    if (pos_ != s_.size())
      fail("trailing input");
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string &msg) {
    throw FormulaParseError("formula column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok))
      fail("expected '" + std::string(tok) + "'");
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  Formula value(const char *what) {
    Formula f = formula();
    if (!f.isValue())
      fail(std::string("expected a value formula for ") + what);
    return f;
  }
};

} // namespace

std::string printFormula(const Formula &f) {
  std::string out;
  print(f, out);
  return out;
}

Formula parseFormula(std::string_view text) {
  Reader r(text);
  Formula f = r.formula();
  r.finish();
  return f;
}

} // namespace lambdav
