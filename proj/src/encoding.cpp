#include "lambdav/encoding.hpp"

namespace lambdav {

Expr natExpr(std::uint64_t n) {
  Expr e = pair(symbol(sym::zero()), botv());
  for (std::uint64_t i = 0; i < n; ++i)
    e = pair(symbol(sym::succ()), e);
  return e;
}

std::optional<std::uint64_t> decodeNat(const Expr &e) {
  std::uint64_t n = 0;
  const Expr *cur = &e;
  while (cur->kind() == Kind::Pair && cur->child(0).kind() == Kind::Sym) {
    Symbol tag = cur->child(0).symbol();
    if (tag == sym::zero())
      return cur->child(1).kind() == Kind::BotV ? std::optional(n) : std::nullopt;
    if (tag != sym::succ())
      return std::nullopt;
    ++n;
    cur = &cur->child(1);
  }
  return std::nullopt;
}

Expr nilExpr() { return pair(symbol(sym::nil()), botv()); }

Expr consExpr(Expr head, Expr tail) {
  return pair(symbol(sym::cons()), pair(std::move(head), std::move(tail)));
}

Expr listExpr(const std::vector<Expr> &elems) {
  Expr e = nilExpr();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    e = consExpr(*it, e);
  return e;
}

namespace {
bool isNil(const Expr &e) {
  return e.kind() == Kind::Pair && e.child(0).kind() == Kind::Sym &&
         e.child(0).symbol() == sym::nil() && e.child(1).kind() == Kind::BotV;
}
bool isCons(const Expr &e) {
  return e.kind() == Kind::Pair && e.child(0).kind() == Kind::Sym &&
         e.child(0).symbol() == sym::cons() && e.child(1).kind() == Kind::Pair;
}
void flattenJoin(const Expr &e, std::vector<Expr> &out) {
  if (e.kind() == Kind::Join) {
    flattenJoin(e.child(0), out);
    flattenJoin(e.child(1), out);
  } else {
    out.push_back(e);
  }
}
} // namespace

std::optional<DecodedList> decodeList(const Expr &e) {
  if (!isNil(e) && !isCons(e))
    return std::nullopt;
  DecodedList out;
  const Expr *cur = &e;
  while (isCons(*cur)) {
    out.elems.push_back(cur->child(1).child(0));
    cur = &cur->child(1).child(1);
  }
  if (!isNil(*cur))
    out.tail = *cur;
  return out;
}

std::optional<Fields> decodeRecord(const Expr &e) {
  if (e.kind() != Kind::Lam)
    return std::nullopt;
  std::vector<Expr> arms;
  flattenJoin(e.child(0), arms);
  Fields fields;
  for (const auto &arm : arms) {
    if (arm.kind() == Kind::Bot)
      continue;
    if (arm.kind() != Kind::LetSym || arm.child(0).kind() != Kind::Bound ||
        arm.child(0).index() != 0)
      return std::nullopt;
    const Expr &v = arm.child(1);
    if (!v.isValue() || v.looseBound() != 0)
      return std::nullopt;
    fields.emplace_back(arm.symbol().name(), v);
  }
  return fields;
}

Expr stringExpr(const std::string &text) {
  return symbol(Symbol("\"" + text + "\""));
}

} // namespace lambdav
