#include "lambdav/printer.hpp"

#include "lambdav/encoding.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace lambdav {

namespace {

std::string symbolText(Symbol s) {
  const std::string &n = s.name();
  if (s.isString() || s.isUnit() || n == "true" || n == "false")
    return n;
  return "'" + n;
}

bool isBinder(Kind k) {
  return k == Kind::Lam || k == Kind::LetPair || k == Kind::LetSym ||
         k == Kind::BigJoin;
}

// prec: 0 join operand, 1 application head, 2 argument.
void core(const Expr &e, int prec, bool tail, std::string &out) {
  bool open = isBinder(e.kind());
  bool parens = (open && (prec > 0 || !tail)) ||
                (e.kind() == Kind::Join && prec > 0) ||
                (e.kind() == Kind::App && prec > 1);
  if (parens) {
    out += '(';
    core(e, 0, true, out);
    out += ')';
    return;
  }
  switch (e.kind()) {
  case Kind::Bot: out += "bot"; break;
  case Kind::Top: out += "top"; break;
  case Kind::BotV: out += "botv"; break;
  case Kind::Var: out += e.name(); break;
  case Kind::Bound: out += "#" + std::to_string(e.index()); break;
  case Kind::Sym: out += symbolText(e.symbol()); break;
  case Kind::Lam: {
    auto o = openBinder(e, freeVars(e.child(0)));
    out += "\\" + o.name + ". ";
    core(o.body, 0, true, out);
    break;
  }
  case Kind::Pair:
    out += '(';
    core(e.child(0), 0, true, out);
    out += ", ";
    core(e.child(1), 0, true, out);
    out += ')';
    break;
  case Kind::Set:
    out += '{';
    for (std::size_t i = 0; i < e.arity(); ++i) {
      if (i)
        out += ", ";
      core(e.child(i), 0, true, out);
    }
    out += '}';
    break;
  case Kind::App:
    core(e.child(0), 1, false, out);
    out += ' ';
    core(e.child(1), 2, tail, out);
    break;
  case Kind::LetPair: {
    auto avoid = freeVars(e.child(1));
    std::string x1 = freshName(e.name(), avoid);
    avoid.insert(x1);
    std::string x2 = freshName(e.name2(), avoid);
    out += "let (" + x1 + ", " + x2 + ") = ";
    core(e.child(0), 0, true, out);
    out += " in ";
    core(instantiate2(e.child(1), var(x1), var(x2)), 0, true, out);
    break;
  }
  case Kind::LetSym:
    out += "let " + symbolText(e.symbol()) + " = ";
    core(e.child(0), 0, true, out);
    out += " in ";
    core(e.child(1), 0, true, out);
    break;
  case Kind::BigJoin: {
    auto avoid = freeVars(e.child(1));
    std::string x = freshName(e.name(), avoid);
    out += "for " + x + " in ";
    core(e.child(0), 0, true, out);
    out += " join ";
    core(instantiate(e.child(1), var(x)), 0, true, out);
    break;
  }
  case Kind::Join:
    core(e.child(0), 0, false, out);
    out += " \\/ ";
    core(e.child(1), 1, tail, out);
    break;
  }
}

std::string obs(const Expr &e, bool atom);

std::tuple<int, std::uint64_t, std::string> sortKey(const Expr &e) {
  if (auto n = decodeNat(e))
    return {0, *n, ""};
  return {1, 0, obs(e, false)};
}

std::string obs(const Expr &e, bool atom) {
  switch (e.kind()) {
  case Kind::Bot: return "⊥";
  case Kind::Top: return "⊤";
  case Kind::BotV: return "⊥_v";
  case Kind::Sym: return symbolText(e.symbol());
  case Kind::Var: return e.name();
  default: break;
  }
  if (auto n = decodeNat(e))
    return std::to_string(*n);
  if (auto l = decodeList(e)) {
    if (!l->tail) {
      std::string out = "[";
      for (std::size_t i = 0; i < l->elems.size(); ++i)
        out += (i ? ", " : "") + obs(l->elems[i], false);
      return out + "]";
    }
    std::string out;
    for (const auto &h : l->elems)
      out += obs(h, true) + " :: ";
    out += obs(*l->tail, true);
    return atom ? "(" + out + ")" : out;
  }
  if (auto fields = decodeRecord(e)) {
    std::vector<std::pair<std::string, std::string>> shown;
    for (const auto &[name, v] : *fields)
      shown.emplace_back(name, obs(v, false));
    std::sort(shown.begin(), shown.end());
    shown.erase(std::unique(shown.begin(), shown.end()), shown.end());
    if (shown.empty())
      return "{=}";
    std::string out = "{";
    for (std::size_t i = 0; i < shown.size(); ++i)
      out += (i ? ", " : "") + shown[i].first + " = " + shown[i].second;
    return out + "}";
  }
  switch (e.kind()) {
  case Kind::Pair:
    return "(" + obs(e.child(0), false) + ", " + obs(e.child(1), false) + ")";
  case Kind::Set: {
    std::vector<std::pair<std::tuple<int, std::uint64_t, std::string>, std::string>>
        elems;
    for (const auto &c : e.children())
      elems.emplace_back(sortKey(c), obs(c, false));
    std::sort(elems.begin(), elems.end());
    std::string out = "{";
    for (std::size_t i = 0; i < elems.size(); ++i)
      out += (i ? ", " : "") + elems[i].second;
    return out + "}";
  }
  default: {
    std::string out = printCore(e);
    return atom || isBinder(e.kind()) ? "(" + out + ")" : out;
  }
  }
}

} // namespace

std::string printCore(const Expr &e) {
  std::string out;
  core(e, 0, true, out);
  return out;
}

std::string printResult(const Expr &r) { return obs(r, false); }

std::ostream &operator<<(std::ostream &os, const Expr &e) {
  return os << printCore(e);
}

} // namespace lambdav
