#include "lambdav/formula.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace lambdav {

struct FNode {
  FKind kind = FKind::Bot;
  Symbol sym;
  // Pair: two components. Set: elements. Fun: input0, output0, input1, ...
  std::vector<Formula> children;
  std::size_t hash = 0;
  std::size_t height = 1;
};

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}
} // namespace

Formula makeFormula(FKind kind, Symbol sym, std::vector<Formula> children) {
  auto n = std::make_shared<FNode>();
  n->kind = kind;
  n->sym = sym;
  std::size_t h = mix(0x51ed, static_cast<std::size_t>(kind));
  if (kind == FKind::Sym)
    h = mix(h, sym.stableHash());
  std::size_t tallest = 0;
  for (const auto &c : children) {
    h = mix(h, c.hash());
    tallest = std::max(tallest, c.raw()->height);
  }
  n->hash = h;
  if (kind == FKind::Pair)
    n->height = 1 + tallest;
  else if (kind == FKind::Set || kind == FKind::Fun)
    n->height = 1 + std::max<std::size_t>(1, tallest);
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula::Formula() : Formula(fBot()) {}

FKind Formula::kind() const { return node_->kind; }
std::size_t Formula::hash() const { return node_->hash; }
Symbol Formula::symbol() const { return node_->sym; }
std::span<const Formula> Formula::children() const { return node_->children; }
const Formula &Formula::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Formula::clauseCount() const {
  return node_->kind == FKind::Fun ? node_->children.size() / 2 : 0;
}
Formula::Clause Formula::clause(std::size_t i) const {
  return {node_->children.at(2 * i), node_->children.at(2 * i + 1)};
}

bool operator==(const Formula &a, const Formula &b) {
  const FNode *x = a.raw();
  const FNode *y = b.raw();
  if (x == y)
    return true;
  if (x->hash != y->hash || x->kind != y->kind || x->sym != y->sym ||
      x->children.size() != y->children.size())
    return false;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (x->children[i] != y->children[i])
      return false;
  return true;
}

int compare(const Formula &a, const Formula &b) {
  const FNode *x = a.raw();
  const FNode *y = b.raw();
  if (x == y)
    return 0;
  if (x->kind != y->kind)
    return x->kind < y->kind ? -1 : 1;
  if (x->sym != y->sym)
    return x->sym.name() < y->sym.name() ? -1 : 1;
  if (x->children.size() != y->children.size())
    return x->children.size() < y->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (int c = compare(x->children[i], y->children[i]))
      return c;
  return 0;
}

Formula fBot() {
  static const Formula f = makeFormula(FKind::Bot, {}, {});
  return f;
}
Formula fTop() {
  static const Formula f = makeFormula(FKind::Top, {}, {});
  return f;
}
Formula fBotV() {
  static const Formula f = makeFormula(FKind::BotV, {}, {});
  return f;
}
Formula fSym(Symbol s) { return makeFormula(FKind::Sym, s, {}); }
Formula fSym(std::string_view name) { return fSym(Symbol(name)); }

Formula fPair(Formula a, Formula b) {
  assert(a.isValue() && b.isValue());
  return makeFormula(FKind::Pair, {}, {std::move(a), std::move(b)});
}

Formula fSet(std::vector<Formula> elems) {
  std::sort(elems.begin(), elems.end(),
            [](const Formula &a, const Formula &b) { return compare(a, b) < 0; });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return makeFormula(FKind::Set, {}, std::move(elems));
}

Formula fFun(std::vector<std::pair<Formula, Formula>> clauses) {
  std::sort(clauses.begin(), clauses.end(), [](const auto &a, const auto &b) {
    int c = compare(a.first, b.first);
    return c != 0 ? c < 0 : compare(a.second, b.second) < 0;
  });
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  std::vector<Formula> flat;
  flat.reserve(clauses.size() * 2);
  for (auto &[in, out] : clauses) {
    flat.push_back(std::move(in));
    flat.push_back(std::move(out));
  }
  return makeFormula(FKind::Fun, {}, std::move(flat));
}

Formula fNat(std::uint64_t n) {
  Formula f = fPair(fSym(sym::zero()), fBotV());
  for (std::uint64_t i = 0; i < n; ++i)
    f = fPair(fSym(sym::succ()), f);
  return f;
}

std::size_t formSize(const Formula &f) { return f.raw()->height; }

Formula formLiftPair(const Formula &a, const Formula &b) {
  if (a.kind() == FKind::Bot || a.kind() == FKind::Top)
    return a;
  if (b.kind() == FKind::Bot || b.kind() == FKind::Top)
    return b;
  return fPair(a, b);
}

Formula formLiftSet(const Formula &a) {
  if (!a.isValue())
    return a;
  return fSet({a});
}

Formula formJoin(const Formula &a, const Formula &b, const SymbolTable &table) {
  if (a.kind() == FKind::Bot)
    return b;
  if (b.kind() == FKind::Bot)
    return a;
  if (a.kind() == FKind::Top || b.kind() == FKind::Top)
    return fTop();
  if (a.kind() == FKind::BotV)
    return b;
  if (b.kind() == FKind::BotV)
    return a;
  if (a.kind() != b.kind())
    return fTop();
  switch (a.kind()) {
  case FKind::Sym: {
    auto s = table.join(a.symbol(), b.symbol());
    return s ? fSym(*s) : fTop();
  }
  case FKind::Pair:
    return formLiftPair(formJoin(a.child(0), b.child(0), table),
                        formJoin(a.child(1), b.child(1), table));
  case FKind::Set: {
    std::vector<Formula> elems(a.children().begin(), a.children().end());
    elems.insert(elems.end(), b.children().begin(), b.children().end());
    return fSet(std::move(elems));
  }
  case FKind::Fun: {
    std::vector<std::pair<Formula, Formula>> clauses;
    for (const auto *f : {&a, &b})
      for (std::size_t i = 0; i < f->clauseCount(); ++i)
        clauses.emplace_back(f->clause(i).input, f->clause(i).output);
    return fFun(std::move(clauses));
  }
  default:
    return fTop();
  }
}

Formula formJoinAll(std::span<const Formula> fs, const SymbolTable &table) {
  Formula acc = fBot();
  for (const auto &f : fs)
    acc = formJoin(acc, f, table);
  return acc;
}

namespace {

struct PairKey {
  Formula a, b;
  const SymbolTable *table;
  bool operator==(const PairKey &o) const {
    return table == o.table && a == o.a && b == o.b;
  }
};
struct PairKeyHash {
  std::size_t operator()(const PairKey &k) const {
    return mix(k.a.hash(), k.b.hash()) ^ reinterpret_cast<std::uintptr_t>(k.table);
  }
};

// Clause i of `a` is covered by some subset J' of b's clauses: the join of
// their inputs is below input i and output i is below the join of outputs.
bool clauseCovered(const Formula::Clause &ci, const Formula &b, const SymbolTable &table) {
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < b.clauseCount(); ++j)
    if (formLeq(b.clause(j).input, ci.input, table))
      cand.push_back(j);
  if (ci.output.kind() == FKind::Bot)
    return true;
  std::size_t n = cand.size();
  if (n == 0)
    return false;
  // Larger subsets first: the output join grows with J'. Past 10
  // candidates only the full set is tried.
  if (n > 10) {
    Formula ins = fBot();
    Formula outs = fBot();
    for (auto j : cand) {
      ins = formJoin(ins, b.clause(j).input, table);
      outs = formJoin(outs, b.clause(j).output, table);
    }
    return formLeq(ins, ci.input, table) && formLeq(ci.output, outs, table);
  }
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << n); ++m)
    masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t x, std::uint32_t y) {
    return __builtin_popcount(x) > __builtin_popcount(y);
  });
  for (auto m : masks) {
    Formula ins = fBot();
    Formula outs = fBot();
    for (std::size_t k = 0; k < n; ++k) {
      if (m & (1u << k)) {
        ins = formJoin(ins, b.clause(cand[k]).input, table);
        outs = formJoin(outs, b.clause(cand[k]).output, table);
      }
    }
    if (formLeq(ins, ci.input, table) && formLeq(ci.output, outs, table))
      return true;
  }
  return false;
}

bool leqFun(const Formula &a, const Formula &b, const SymbolTable &table) {
  thread_local std::unordered_map<PairKey, bool, PairKeyHash> memo;
  PairKey key{a, b, &table};
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  bool ok = true;
  for (std::size_t i = 0; i < a.clauseCount() && ok; ++i)
    ok = clauseCovered(a.clause(i), b, table);
  if (memo.size() > 1'000'000)
    memo.clear();
  memo.emplace(std::move(key), ok);
  return ok;
}

} // namespace

bool formLeq(const Formula &a, const Formula &b, const SymbolTable &table) {
  if (a.kind() == FKind::Bot || b.kind() == FKind::Top)
    return true;
  if (a.kind() == FKind::Top || b.kind() == FKind::Bot)
    return false;
  if (a.kind() == FKind::BotV)
    return true;
  if (a.kind() != b.kind())
    return false;
  switch (a.kind()) {
  case FKind::Sym:
    return table.leq(a.symbol(), b.symbol());
  case FKind::Pair:
    return formLeq(a.child(0), b.child(0), table) && formLeq(a.child(1), b.child(1), table);
  case FKind::Set:
    return std::all_of(a.children().begin(), a.children().end(), [&](const Formula &x) {
      return std::any_of(b.children().begin(), b.children().end(),
                         [&](const Formula &y) { return formLeq(x, y, table); });
    });
  case FKind::Fun:
    return a == b || leqFun(a, b, table);
  default:
    return false;
  }
}

bool formEquiv(const Formula &a, const Formula &b, const SymbolTable &table) {
  return formLeq(a, b, table) && formLeq(b, a, table);
}

} // namespace lambdav
