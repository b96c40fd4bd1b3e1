#include "lambdav/stream_eval.hpp"

#include "lambdav/reduction.hpp"

#include <algorithm>

namespace lambdav {

StreamEvaluator::StreamEvaluator(const SymbolTable &table) : table_(table) {}

Expr StreamEvaluator::eval(const Expr &e, std::size_t fuel) {
  if (fuel == 0)
    return bot();
  switch (e.kind()) {
  case Kind::Bot:
  case Kind::Top:
  case Kind::BotV:
  case Kind::Var:
  case Kind::Sym:
  case Kind::Lam:
    return e;
  default:
    break;
  }
  if (e.isValue())
    return e;
  Key key{e, fuel};
  if (auto it = memo_.find(key); it != memo_.end())
    return it->second;
  Expr r = compute(e, fuel);
  memo_.emplace(std::move(key), r);
  return r;
}

Expr StreamEvaluator::compute(const Expr &e, std::size_t fuel) {
  auto stops = [](const Expr &r) {
    return r.kind() == Kind::Bot || r.kind() == Kind::Top;
  };
  switch (e.kind()) {
  case Kind::Pair: {
    Expr a = eval(e.child(0), fuel);
    if (stops(a))
      return a;
    return compLift(a, eval(e.child(1), fuel));
  }
  case Kind::Set: {
    std::vector<Expr> elems;
    for (const auto &c : e.children()) {
      Expr r = eval(c, fuel);
      if (r.kind() == Kind::Top)
        return top();
      if (r.kind() == Kind::Bot)
        continue;
      if (std::find(elems.begin(), elems.end(), r) == elems.end())
        elems.push_back(r);
    }
    return setLit(std::move(elems));
  }
  case Kind::App: {
    Expr f = eval(e.child(0), fuel);
    if (stops(f))
      return f;
    Expr a = eval(e.child(1), fuel);
    if (stops(a))
      return a;
    if (f.kind() == Kind::Lam)
      return eval(instantiate(f.child(0), a), fuel - 1);
    if (f.kind() == Kind::BotV)
      return bot();
    return top();
  }
  case Kind::LetPair: {
    Expr s = eval(e.child(0), fuel);
    if (s.kind() == Kind::Top)
      return s;
    if (s.kind() == Kind::Pair)
      return eval(instantiate2(e.child(1), s.child(0), s.child(1)), fuel);
    return bot();
  }
  case Kind::LetSym: {
    Expr s = eval(e.child(0), fuel);
    if (s.kind() == Kind::Top)
      return s;
    if (s.kind() == Kind::Sym && table_.leq(e.symbol(), s.symbol()))
      return eval(e.child(1), fuel);
    return bot();
  }
  case Kind::BigJoin: {
    Expr s = eval(e.child(0), fuel);
    if (s.kind() == Kind::Top)
      return s;
    if (s.kind() != Kind::Set)
      return bot();
    Expr acc = bot();
    for (const auto &v : s.children()) {
      acc = resultJoin(acc, eval(instantiate(e.child(1), v), fuel), table_);
      if (acc.kind() == Kind::Top)
        break;
    }
    return acc;
  }
  case Kind::Join: {
    Expr a = eval(e.child(0), fuel);
    if (a.kind() == Kind::Top)
      return a;
    return resultJoin(a, eval(e.child(1), fuel), table_);
  }
  default:
    return top();
  }
}

Expr streamEval(const Expr &e, std::size_t fuel, const SymbolTable &table) {
  StreamEvaluator ev(table);
  return ev.eval(e, fuel);
}

std::vector<Observation> observe(const Expr &e, std::size_t maxFuel,
                                 bool changePointsOnly, const SymbolTable &table) {
  StreamEvaluator ev(table);
  std::vector<Observation> out;
  Expr last;
  for (std::size_t n = 0; n <= maxFuel; ++n) {
    Expr r = ev.eval(e, n);
    Expr key = canonical(r);
    if (!changePointsOnly || out.empty() || key != last)
      out.push_back({n, r});
    last = key;
  }
  return out;
}

bool containsLambda(const Expr &e) {
  if (e.kind() == Kind::Lam)
    return true;
  return std::any_of(e.children().begin(), e.children().end(), containsLambda);
}

namespace {
bool leq(const Expr &a, const Expr &b, const SymbolTable &table) {
  if (a.kind() == Kind::Bot || b.kind() == Kind::Top)
    return true;
  if (a.kind() == Kind::Top || b.kind() == Kind::Bot)
    return false;
  if (a.kind() == Kind::BotV)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case Kind::Sym:
    return table.leq(a.symbol(), b.symbol());
  case Kind::Var:
    return a.name() == b.name();
  case Kind::Pair:
    return leq(a.child(0), b.child(0), table) && leq(a.child(1), b.child(1), table);
  case Kind::Set:
    return std::all_of(a.children().begin(), a.children().end(), [&](const Expr &x) {
      return std::any_of(b.children().begin(), b.children().end(),
                         [&](const Expr &y) { return leq(x, y, table); });
    });
  default:
    return false;
  }
}
} // namespace

std::optional<bool> obsLeq(const Expr &r1, const Expr &r2, const SymbolTable &table) {
  if (containsLambda(r1) || containsLambda(r2))
    return std::nullopt;
  return leq(r1, r2, table);
}

} // namespace lambdav
