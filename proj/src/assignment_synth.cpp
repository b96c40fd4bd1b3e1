#include "lambdav/assignment.hpp"

#include "lambdav/stream_eval.hpp"

#include <algorithm>

namespace lambdav {

namespace {

void symbolsOf(const Expr &e, std::vector<Symbol> &out) {
  if ((e.kind() == Kind::Sym || e.kind() == Kind::LetSym) &&
      std::find(out.begin(), out.end(), e.symbol()) == out.end())
    out.push_back(e.symbol());
  for (const auto &c : e.children())
    symbolsOf(c, out);
}

std::optional<Expr> valueOf(const Formula &f) {
  switch (f.kind()) {
  case FKind::BotV:
    return botv();
  case FKind::Sym:
    return symbol(f.symbol());
  case FKind::Pair: {
    auto a = valueOf(f.child(0));
    auto b = valueOf(f.child(1));
    if (!a || !b)
      return std::nullopt;
    return pair(*a, *b);
  }
  case FKind::Set: {
    std::vector<Expr> elems;
    for (const auto &c : f.children()) {
      auto v = valueOf(c);
      if (!v)
        return std::nullopt;
      elems.push_back(*v);
    }
    return setLit(std::move(elems));
  }
  default:
    return std::nullopt;
  }
}

constexpr std::size_t kMaxWitnesses = 24;

// First-order values of height <= h built from the term's own symbols
// (padded to two), smallest first.
std::vector<Expr> witnesses(const Expr &e, std::size_t h) {
  std::vector<Symbol> syms;
  symbolsOf(e, syms);
  std::sort(syms.begin(), syms.end(), nameLess);
  for (const char *pad : {"a", "b"})
    if (syms.size() < 2 && std::find(syms.begin(), syms.end(), Symbol(pad)) == syms.end())
      syms.push_back(Symbol(pad));
  if (syms.size() > 4)
    syms.resize(4);
  std::vector<Expr> out;
  for (const auto &f : enumerateForms(std::min<std::size_t>(h, 2), syms, {2, 0})) {
    if (!f.isValue() || formSize(f) > h)
      continue;
    if (auto v = valueOf(f))
      out.push_back(*v);
    if (out.size() == kMaxWitnesses)
      break;
  }
  return out;
}

} // namespace

Formula evidentForm(const Expr &r, std::size_t fuel, std::size_t height,
                    const SymbolTable &table) {
  if (height == 0)
    return fBot();
  switch (r.kind()) {
  case Kind::Bot:
    return fBot();
  case Kind::Top:
    return fTop();
  case Kind::Sym:
    return fSym(r.symbol());
  default:
    break;
  }
  if (!r.isValue())
    return fBot();
  if (height == 1)
    return fBotV();
  switch (r.kind()) {
  case Kind::Pair:
    return fPair(evidentForm(r.child(0), fuel, height - 1, table),
                 evidentForm(r.child(1), fuel, height - 1, table));
  case Kind::Set: {
    std::vector<Formula> elems;
    for (const auto &c : r.children())
      elems.push_back(evidentForm(c, fuel, height - 1, table));
    return fSet(std::move(elems));
  }
  case Kind::Lam: {
    std::vector<std::pair<Formula, Formula>> clauses;
    for (const auto &w : witnesses(r, height - 1)) {
      Formula out = evidentForm(streamEval(app(r, w), fuel, table), fuel, height - 1, table);
      if (out.kind() != FKind::Bot)
        clauses.emplace_back(evidentForm(w, fuel, height - 1, table), out);
    }
    return fFun(std::move(clauses));
  }
  default:
    return fBotV();
  }
}

std::vector<Formula> synthesizeForms(const Expr &e, std::size_t fuel, std::size_t height,
                                     const SymbolTable &table) {
  Expr r = streamEval(e, fuel, table);
  std::vector<Formula> cands{fBot()};
  if (r.kind() == Kind::Top)
    cands.push_back(fTop());
  if (r.isValue()) {
    cands.push_back(fBotV());
    Formula full = evidentForm(r, fuel, height, table);
    cands.push_back(full);
    if (full.kind() == FKind::Fun)
      for (std::size_t i = 0; i < full.clauseCount(); ++i)
        cands.push_back(fFun({{full.clause(i).input, full.clause(i).output}}));
  }
  std::sort(cands.begin(), cands.end(),
            [](const Formula &a, const Formula &b) { return compare(a, b) < 0; });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<Formula> out;
  for (const auto &phi : cands)
    if (formSize(phi) <= height && checkAssign({}, e, phi, fuel + 1, table))
      out.push_back(phi);
  return out;
}

LogLeqReport logLeqBounded(const Expr &e1, const Expr &e2, std::size_t fuel,
                           std::size_t height, const SymbolTable &table) {
  LogLeqReport rep;
  for (const auto &phi : synthesizeForms(e1, fuel, height, table)) {
    ++rep.checked;
    if (!checkAssign({}, e2, phi, fuel + 1, table)) {
      rep.holds = false;
      rep.witness = phi;
      break;
    }
  }
  return rep;
}

} // namespace lambdav
