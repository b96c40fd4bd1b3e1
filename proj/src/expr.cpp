#include "lambdav/expr.hpp"

#include <algorithm>
#include <cassert>

namespace lambdav {

struct Node {
  Kind kind = Kind::Bot;
  std::vector<Expr> children;
  Symbol sym;
  std::string name;
  std::string name2;
  std::uint32_t index = 0;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::uint32_t loose = 0;
  bool value = false;
  bool hasFree = false;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::uint32_t bindersOf(Kind k, std::size_t childIndex) {
  switch (k) {
  case Kind::Lam:
    return 1;
  case Kind::LetPair:
    return childIndex == 1 ? 2 : 0;
  case Kind::BigJoin:
    return childIndex == 1 ? 1 : 0;
  default:
    return 0;
  }
}

} // namespace

const char *kindName(Kind k) {
  switch (k) {
  case Kind::Bot: return "Bot";
  case Kind::Top: return "Top";
  case Kind::BotV: return "BotV";
  case Kind::Var: return "Var";
  case Kind::Bound: return "Bound";
  case Kind::Lam: return "Lam";
  case Kind::Pair: return "Pair";
  case Kind::Sym: return "Sym";
  case Kind::Set: return "Set";
  case Kind::App: return "App";
  case Kind::LetPair: return "LetPair";
  case Kind::LetSym: return "LetSym";
  case Kind::BigJoin: return "BigJoin";
  case Kind::Join: return "Join";
  }
  return "?";
}

Expr makeNode(Kind kind, std::vector<Expr> children, Symbol sym,
              std::string name, std::string name2, std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->sym = sym;
  n->name = std::move(name);
  n->name2 = std::move(name2);
  n->index = index;
  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  switch (kind) {
  case Kind::Var:
    h = mix(h, std::hash<std::string>{}(n->name));
    n->hasFree = true;
    break;
  case Kind::Bound:
    h = mix(h, index);
    n->loose = index + 1;
    break;
  case Kind::Sym:
  case Kind::LetSym:
    h = mix(h, sym.stableHash());
    break;
  default:
    break;
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    const Node *c = children[i].raw();
    h = mix(h, c->hash);
    n->size += c->size;
    n->hasFree = n->hasFree || c->hasFree;
    std::uint32_t b = bindersOf(kind, i);
    if (c->loose > b)
      n->loose = std::max(n->loose, c->loose - b);
  }
  n->hash = h;
  n->children = std::move(children);
  switch (kind) {
  case Kind::Var:
  case Kind::BotV:
  case Kind::Lam:
  case Kind::Sym:
    n->value = true;
    break;
  case Kind::Pair:
  case Kind::Set:
    n->value = std::all_of(n->children.begin(), n->children.end(),
                           [](const Expr &c) { return c.isValue(); });
    break;
  default:
    n->value = false;
  }
  return Expr(std::move(n));
}

Expr::Expr() : Expr(bot()) {}

Kind Expr::kind() const { return node_->kind; }
std::size_t Expr::hash() const { return node_->hash; }
const std::string &Expr::name() const { return node_->name; }
const std::string &Expr::name2() const { return node_->name2; }
std::uint32_t Expr::index() const { return node_->index; }
Symbol Expr::symbol() const { return node_->sym; }
std::span<const Expr> Expr::children() const { return node_->children; }
const Expr &Expr::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Expr::arity() const { return node_->children.size(); }
bool Expr::isValue() const { return node_->value; }
bool Expr::isResult() const {
  return node_->value || node_->kind == Kind::Bot || node_->kind == Kind::Top;
}
bool Expr::hasFreeVars() const { return node_->hasFree; }
std::uint32_t Expr::looseBound() const { return node_->loose; }
std::size_t Expr::size() const { return node_->size; }

bool operator==(const Expr &a, const Expr &b) {
  const Node *x = a.raw();
  const Node *y = b.raw();
  if (x == y)
    return true;
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size ||
      x->children.size() != y->children.size())
    return false;
  switch (x->kind) {
  case Kind::Var:
    if (x->name != y->name)
      return false;
    break;
  case Kind::Bound:
    if (x->index != y->index)
      return false;
    break;
  case Kind::Sym:
  case Kind::LetSym:
    if (x->sym != y->sym)
      return false;
    break;
  default:
    break;
  }
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (!(x->children[i] == y->children[i]))
      return false;
  return true;
}

int compare(const Expr &a, const Expr &b) {
  const Node *x = a.raw();
  const Node *y = b.raw();
  if (x == y)
    return 0;
  if (x->kind != y->kind)
    return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
  case Kind::Var:
    if (int c = x->name.compare(y->name))
      return c < 0 ? -1 : 1;
    break;
  case Kind::Bound:
    if (x->index != y->index)
      return x->index < y->index ? -1 : 1;
    break;
  case Kind::Sym:
  case Kind::LetSym:
    if (x->sym != y->sym)
      return x->sym.name() < y->sym.name() ? -1 : 1;
    break;
  default:
    break;
  }
  if (x->children.size() != y->children.size())
    return x->children.size() < y->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (int c = compare(x->children[i], y->children[i]))
      return c;
  return 0;
}

Expr bot() {
  static const Expr e = makeNode(Kind::Bot, {}, {}, {}, {}, 0);
  return e;
}
Expr top() {
  static const Expr e = makeNode(Kind::Top, {}, {}, {}, {}, 0);
  return e;
}
Expr botv() {
  static const Expr e = makeNode(Kind::BotV, {}, {}, {}, {}, 0);
  return e;
}
Expr var(std::string name) {
  return makeNode(Kind::Var, {}, {}, std::move(name), {}, 0);
}
Expr boundVar(std::uint32_t index) {
  return makeNode(Kind::Bound, {}, {}, {}, {}, index);
}
Expr lamRaw(std::string hint, Expr body) {
  return makeNode(Kind::Lam, {std::move(body)}, {}, std::move(hint), {}, 0);
}
Expr lam(const std::string &x, const Expr &body) {
  return lamRaw(x, abstractVar(body, x, 0));
}
Expr pair(Expr a, Expr b) {
  return makeNode(Kind::Pair, {std::move(a), std::move(b)}, {}, {}, {}, 0);
}
Expr symbol(Symbol s) { return makeNode(Kind::Sym, {}, s, {}, {}, 0); }
Expr symbol(std::string_view name) { return symbol(Symbol(name)); }
Expr setLit(std::vector<Expr> elems) {
  return makeNode(Kind::Set, std::move(elems), {}, {}, {}, 0);
}
Expr app(Expr f, Expr a) {
  return makeNode(Kind::App, {std::move(f), std::move(a)}, {}, {}, {}, 0);
}
Expr letPairRaw(std::string h1, std::string h2, Expr scrutinee, Expr body) {
  return makeNode(Kind::LetPair, {std::move(scrutinee), std::move(body)}, {},
                  std::move(h1), std::move(h2), 0);
}
Expr letPair(const std::string &x1, const std::string &x2, Expr scrutinee,
             const Expr &body) {
  // x1 -> index 1, x2 -> index 0; when both names coincide the inner one wins.
  Expr b = abstractVar(body, x2, 0);
  if (x1 != x2)
    b = abstractVar(b, x1, 1);
  return letPairRaw(x1, x2, std::move(scrutinee), std::move(b));
}
Expr letSym(Symbol s, Expr scrutinee, Expr body) {
  return makeNode(Kind::LetSym, {std::move(scrutinee), std::move(body)}, s, {},
                  {}, 0);
}
Expr bigJoinRaw(std::string hint, Expr source, Expr body) {
  return makeNode(Kind::BigJoin, {std::move(source), std::move(body)}, {},
                  std::move(hint), {}, 0);
}
Expr bigJoin(const std::string &x, Expr source, const Expr &body) {
  return bigJoinRaw(x, std::move(source), abstractVar(body, x, 0));
}
Expr join(Expr a, Expr b) {
  return makeNode(Kind::Join, {std::move(a), std::move(b)}, {}, {}, {}, 0);
}
Expr joinAll(std::span<const Expr> parts) {
  if (parts.empty())
    return bot();
  Expr acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;)
    acc = join(parts[i], acc);
  return acc;
}

Expr withChildren(const Expr &e, std::vector<Expr> children) {
  const Node *n = e.raw();
  return makeNode(n->kind, std::move(children), n->sym, n->name, n->name2,
                  n->index);
}

namespace {

template <typename Leaf>
Expr rewrite(const Expr &e, std::uint32_t depth, const Leaf &leaf,
             bool (*descend)(const Expr &, std::uint32_t)) {
  if (!descend(e, depth))
    return e;
  if (auto r = leaf(e, depth))
    return *r;
  if (e.arity() == 0)
    return e;
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  bool changed = false;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    Expr c = rewrite(e.child(i), depth + bindersOf(e.kind(), i), leaf, descend);
    changed = changed || c.raw() != e.child(i).raw();
    kids.push_back(std::move(c));
  }
  return changed ? withChildren(e, std::move(kids)) : e;
}

} // namespace

Expr abstractVar(const Expr &body, const std::string &x, std::uint32_t depth) {
  return rewrite(
      body, depth,
      [&](const Expr &e, std::uint32_t d) -> std::optional<Expr> {
        if (e.kind() == Kind::Var && e.name() == x)
          return boundVar(d);
        return std::nullopt;
      },
      +[](const Expr &e, std::uint32_t) { return e.hasFreeVars(); });
}

Expr substitute(const Expr &e, const std::string &x, const Expr &v) {
  return rewrite(
      e, 0,
      [&](const Expr &n, std::uint32_t) -> std::optional<Expr> {
        if (n.kind() == Kind::Var && n.name() == x)
          return v;
        return std::nullopt;
      },
      +[](const Expr &n, std::uint32_t) { return n.hasFreeVars(); });
}

Expr instantiate(const Expr &body, const Expr &v) {
  assert(v.looseBound() == 0);
  return rewrite(
      body, 0,
      [&](const Expr &n, std::uint32_t d) -> std::optional<Expr> {
        if (n.kind() == Kind::Bound && n.index() == d)
          return v;
        return std::nullopt;
      },
      +[](const Expr &n, std::uint32_t d) { return n.looseBound() > d; });
}

Expr instantiate2(const Expr &body, const Expr &first, const Expr &second) {
  assert(first.looseBound() == 0 && second.looseBound() == 0);
  return rewrite(
      body, 0,
      [&](const Expr &n, std::uint32_t d) -> std::optional<Expr> {
        if (n.kind() == Kind::Bound && n.index() == d)
          return second;
        if (n.kind() == Kind::Bound && n.index() == d + 1)
          return first;
        return std::nullopt;
      },
      +[](const Expr &n, std::uint32_t d) { return n.looseBound() > d; });
}

bool alphaEq(const Expr &a, const Expr &b) { return a == b; }

namespace {
void collectFree(const Expr &e, std::set<std::string> &out) {
  if (!e.hasFreeVars())
    return;
  if (e.kind() == Kind::Var) {
    out.insert(e.name());
    return;
  }
  for (const auto &c : e.children())
    collectFree(c, out);
}
} // namespace

std::set<std::string> freeVars(const Expr &e) {
  std::set<std::string> out;
  collectFree(e, out);
  return out;
}

std::string freshName(const std::string &hint, const std::set<std::string> &avoid) {
  std::string base = hint.empty() ? "x" : hint;
  if (base == "_")
    base = "u";
  if (!avoid.count(base))
    return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate))
      return candidate;
  }
}

Opened openBinder(const Expr &binder, const std::set<std::string> &avoid) {
  assert(binder.kind() == Kind::Lam || binder.kind() == Kind::BigJoin);
  std::string x = freshName(binder.name(), avoid);
  const Expr &body = binder.kind() == Kind::Lam ? binder.child(0) : binder.child(1);
  return {x, instantiate(body, var(x))};
}

} // namespace lambdav
