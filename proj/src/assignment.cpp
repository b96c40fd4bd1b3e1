#include "lambdav/assignment.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lambdav {

namespace {

// Checking runs an evaluator over abstract values that mirrors streamEval.
// A lambda value carries flows: every copy of the value (variable lookup,
// binding) is a child flow, and each application records its clause on the
// applied flow and all of its ancestors. After evaluation a flow's formula
// is the join of the clauses demanded below it, so the creation site's TFUN
// premises are exactly the bodies that were evaluated.

struct AVal;
using AV = std::shared_ptr<const AVal>;
struct Flow;
struct PNode;

enum class AK : std::uint8_t { Bot, Top, BotV, Sym, Pair, Set, Fun };

struct AVal {
  AK kind;
  Symbol sym;
  std::vector<AV> kids;
  std::vector<Flow *> funs;
  bool hasFun = false;
};

struct Scope {
  const Scope *parent;
  std::string name;
  AV value;
};

struct Clause {
  AV input;
  PNode *body; // body->out is the clause output
};

struct Flow {
  Flow *parent = nullptr;
  bool opaque = false;
  Formula formula;       // opaque flows
  Expr lam;              // closures
  const Scope *scope = nullptr;
  std::vector<Clause *> clauses;
};

struct PNode {
  AssignRule rule;
  Expr expr;
  const Scope *scope;
  AV out;
  std::vector<PNode *> premises;
  Flow *funRoot = nullptr;           // TFun
  AV clauseIn;                       // TSub towards a one-clause function
  std::optional<Formula> fixed;      // TSub towards a given formula
};

struct Cyclic {};

AV mkAV(AK k) {
  auto a = std::make_shared<AVal>();
  a->kind = k;
  return a;
}

const AV &avBot() {
  static const AV v = mkAV(AK::Bot);
  return v;
}
const AV &avTop() {
  static const AV v = mkAV(AK::Top);
  return v;
}
const AV &avBotV() {
  static const AV v = mkAV(AK::BotV);
  return v;
}

AV avSym(Symbol s) {
  auto a = std::make_shared<AVal>();
  a->kind = AK::Sym;
  a->sym = s;
  return a;
}

AV avCompound(AK k, std::vector<AV> kids) {
  auto a = std::make_shared<AVal>();
  a->kind = k;
  for (const auto &c : kids)
    a->hasFun = a->hasFun || c->hasFun;
  a->kids = std::move(kids);
  return a;
}

AV avFun(std::vector<Flow *> flows) {
  auto a = std::make_shared<AVal>();
  a->kind = AK::Fun;
  a->funs = std::move(flows);
  a->hasFun = true;
  return a;
}

bool stops(const AV &a) { return a->kind == AK::Bot || a->kind == AK::Top; }

AV liftPair(const AV &a, const AV &b) {
  if (stops(a))
    return a;
  if (stops(b))
    return b;
  return avCompound(AK::Pair, {a, b});
}

class Machine {
public:
  explicit Machine(const SymbolTable &table) : table_(table) {}

  const Scope *push(const Scope *parent, std::string name, AV value) {
    scopes_.push_back({parent, std::move(name), std::move(value)});
    return &scopes_.back();
  }

  AV fromFormula(const Formula &f) {
    switch (f.kind()) {
    case FKind::Bot: return avBot();
    case FKind::Top: return avTop();
    case FKind::BotV: return avBotV();
    case FKind::Sym: return avSym(f.symbol());
    case FKind::Pair: return avCompound(AK::Pair, {fromFormula(f.child(0)), fromFormula(f.child(1))});
    case FKind::Set: {
      std::vector<AV> kids;
      for (const auto &c : f.children())
        kids.push_back(fromFormula(c));
      return avCompound(AK::Set, std::move(kids));
    }
    case FKind::Fun: {
      Flow &fl = flows_.emplace_back();
      fl.opaque = true;
      fl.formula = f;
      return avFun({&fl});
    }
    }
    return avBot();
  }

  PNode *eval(const Expr &e, const Scope *sc, std::size_t fuel) {
    if (fuel == 0)
      return node(AssignRule::TBot, e, sc, avBot());
    switch (e.kind()) {
    case Kind::Bot:
      return node(AssignRule::TBot, e, sc, avBot());
    case Kind::Top:
      return node(AssignRule::TTop, e, sc, avTop());
    case Kind::BotV:
      return node(AssignRule::TBotV, e, sc, avBotV());
    case Kind::Sym:
      return node(AssignRule::TSym, e, sc, avSym(e.symbol()));
    case Kind::Var: {
      const AV &bound = lookup(sc, e.name());
      PNode *v = node(AssignRule::TVar, e, sc, bound);
      return sub(v, view(bound));
    }
    case Kind::Lam: {
      Flow &root = flows_.emplace_back();
      root.lam = e;
      root.scope = sc;
      PNode *n = node(AssignRule::TFun, e, sc, avFun({&root}));
      n->funRoot = &root;
      return n;
    }
    case Kind::Pair: {
      PNode *a = eval(e.child(0), sc, fuel);
      PNode *b = stops(a->out) ? node(AssignRule::TBot, e.child(1), sc, avBot())
                               : eval(e.child(1), sc, fuel);
      return node(AssignRule::TPair, e, sc, liftPair(a->out, b->out), {a, b});
    }
    case Kind::Set: {
      std::vector<PNode *> ps;
      std::vector<AV> elems;
      bool sawTop = false;
      for (const auto &c : e.children()) {
        if (sawTop) {
          ps.push_back(node(AssignRule::TBot, c, sc, avBot()));
          continue;
        }
        PNode *p = eval(c, sc, fuel);
        ps.push_back(p);
        if (p->out->kind == AK::Top)
          sawTop = true;
        else if (p->out->kind != AK::Bot)
          elems.push_back(p->out);
      }
      AV out = sawTop ? avTop() : avCompound(AK::Set, std::move(elems));
      return node(AssignRule::TSet, e, sc, out, std::move(ps));
    }
    case Kind::App:
      return evalApp(e, sc, fuel);
    case Kind::LetPair: {
      PNode *s = eval(e.child(0), sc, fuel);
      if (s->out->kind == AK::Top)
        return node(AssignRule::TLetPairTop, e, sc, avTop(), {s});
      if (s->out->kind != AK::Pair)
        return node(AssignRule::TBot, e, sc, avBot());
      AV b1 = view(s->out->kids[0]);
      AV b2 = view(s->out->kids[1]);
      auto avoid = names(sc);
      std::string x1 = freshName(e.name(), avoid);
      avoid.insert(x1);
      std::string x2 = freshName(e.name2(), avoid);
      const Scope *inner = push(push(sc, x1, b1), x2, b2);
      PNode *body = eval(instantiate2(e.child(1), var(x1), var(x2)), inner, fuel);
      PNode *t = sub(s, avCompound(AK::Pair, {b1, b2}));
      return node(AssignRule::TLetPair, e, sc, body->out, {t, body});
    }
    case Kind::LetSym: {
      PNode *s = eval(e.child(0), sc, fuel);
      if (s->out->kind == AK::Top)
        return node(AssignRule::TLetSymTop, e, sc, avTop(), {s});
      if (s->out->kind != AK::Sym || !table_.leq(e.symbol(), s->out->sym))
        return node(AssignRule::TBot, e, sc, avBot());
      PNode *t = subFixed(s, fSym(e.symbol()));
      PNode *body = eval(e.child(1), sc, fuel);
      return node(AssignRule::TLetSym, e, sc, body->out, {t, body});
    }
    case Kind::BigJoin: {
      PNode *s = eval(e.child(0), sc, fuel);
      if (s->out->kind == AK::Top)
        return node(AssignRule::TForInTop, e, sc, avTop(), {s});
      if (s->out->kind != AK::Set)
        return node(AssignRule::TBot, e, sc, avBot());
      std::vector<PNode *> ps{nullptr};
      std::vector<AV> bindings;
      AV acc = avBot();
      auto avoid = names(sc);
      for (const auto &elem : s->out->kids) {
        AV b = view(elem);
        std::string x = freshName(e.name(), avoid);
        PNode *body = eval(instantiate(e.child(1), var(x)), push(sc, x, b), fuel);
        bindings.push_back(b);
        ps.push_back(body);
        acc = join(acc, body->out);
        if (acc->kind == AK::Top)
          break;
      }
      ps[0] = sub(s, avCompound(AK::Set, std::move(bindings)));
      return node(AssignRule::TForIn, e, sc, acc, std::move(ps));
    }
    case Kind::Join: {
      PNode *a = eval(e.child(0), sc, fuel);
      PNode *b = a->out->kind == AK::Top ? node(AssignRule::TBot, e.child(1), sc, avBot())
                                         : eval(e.child(1), sc, fuel);
      return node(AssignRule::TJoin, e, sc, join(a->out, b->out), {a, b});
    }
    case Kind::Bound:
      break;
    }
    throw std::logic_error("checkAssign: dangling bound variable");
  }

  // Adds demands until the value's eventual formula is at least phi.
  bool consume(const AV &a, const Formula &phi, std::size_t fuel) {
    if (phi.kind() == FKind::Bot || a->kind == AK::Top)
      return true;
    if (phi.kind() == FKind::Top || a->kind == AK::Bot)
      return false;
    switch (phi.kind()) {
    case FKind::BotV:
      return true;
    case FKind::Sym:
      return a->kind == AK::Sym && table_.leq(phi.symbol(), a->sym);
    case FKind::Pair:
      return a->kind == AK::Pair && consume(a->kids[0], phi.child(0), fuel) &&
             consume(a->kids[1], phi.child(1), fuel);
    case FKind::Set:
      if (a->kind != AK::Set)
        return false;
      for (const auto &want : phi.children()) {
        bool found = false;
        for (const auto &k : a->kids)
          if ((found = consume(k, want, fuel)))
            break;
        if (!found)
          return false;
      }
      return true;
    case FKind::Fun:
      if (a->kind != AK::Fun)
        return false;
      for (std::size_t i = 0; i < phi.clauseCount(); ++i) {
        AV out = apply(a, fromFormula(phi.clause(i).input), fuel);
        if (!consume(out, phi.clause(i).output, fuel))
          return false;
      }
      return true;
    default:
      return false;
    }
  }

  DerivationPtr build(PNode *root) { return toDeriv(root); }

  Formula formulaOf(const AV &a) { return fin(a); }

private:
  PNode *node(AssignRule r, const Expr &e, const Scope *sc, AV out,
              std::vector<PNode *> premises = {}) {
    PNode &n = nodes_.emplace_back();
    n.rule = r;
    n.expr = e;
    n.scope = sc;
    n.out = std::move(out);
    n.premises = std::move(premises);
    return &n;
  }

  PNode *sub(PNode *p, AV target) {
    return node(AssignRule::TSub, p->expr, p->scope, std::move(target), {p});
  }
  PNode *subFixed(PNode *p, Formula f) {
    PNode *n = sub(p, p->out);
    n->fixed = std::move(f);
    return n;
  }

  static std::set<std::string> names(const Scope *sc) {
    std::set<std::string> out;
    for (; sc; sc = sc->parent)
      out.insert(sc->name);
    return out;
  }

  static const AV &lookup(const Scope *sc, const std::string &x) {
    for (; sc; sc = sc->parent)
      if (sc->name == x)
        return sc->value;
    throw std::logic_error("checkAssign: unbound variable " + x);
  }

  AV view(const AV &a) {
    if (!a->hasFun)
      return a;
    if (a->kind == AK::Fun) {
      std::vector<Flow *> fs;
      for (Flow *f : a->funs) {
        if (f->opaque) {
          fs.push_back(f);
          continue;
        }
        Flow &c = flows_.emplace_back();
        c.parent = f;
        c.lam = f->lam;
        c.scope = f->scope;
        fs.push_back(&c);
      }
      return avFun(std::move(fs));
    }
    std::vector<AV> kids;
    for (const auto &k : a->kids)
      kids.push_back(view(k));
    return avCompound(a->kind, std::move(kids));
  }

  AV join(const AV &a, const AV &b) {
    if (a->kind == AK::Bot)
      return b;
    if (b->kind == AK::Bot)
      return a;
    if (a->kind == AK::Top || b->kind == AK::Top)
      return avTop();
    if (a->kind == AK::BotV)
      return b;
    if (b->kind == AK::BotV)
      return a;
    if (a->kind != b->kind)
      return avTop();
    switch (a->kind) {
    case AK::Sym: {
      auto s = table_.join(a->sym, b->sym);
      return s ? avSym(*s) : avTop();
    }
    case AK::Pair:
      return liftPair(join(a->kids[0], b->kids[0]), join(a->kids[1], b->kids[1]));
    case AK::Set: {
      std::vector<AV> kids = a->kids;
      kids.insert(kids.end(), b->kids.begin(), b->kids.end());
      return avCompound(AK::Set, std::move(kids));
    }
    case AK::Fun: {
      std::vector<Flow *> fs = a->funs;
      fs.insert(fs.end(), b->funs.begin(), b->funs.end());
      return avFun(std::move(fs));
    }
    default:
      return avTop();
    }
  }

  PNode *evalApp(const Expr &e, const Scope *sc, std::size_t fuel) {
    PNode *f = eval(e.child(0), sc, fuel);
    if (f->out->kind == AK::Bot)
      return node(AssignRule::TBot, e, sc, avBot());
    if (f->out->kind == AK::Top)
      return node(AssignRule::TAppLTop, e, sc, avTop(), {f});
    PNode *a = eval(e.child(1), sc, fuel);
    if (a->out->kind == AK::Bot)
      return node(AssignRule::TBot, e, sc, avBot());
    if (a->out->kind == AK::Top)
      return node(AssignRule::TAppRTop, e, sc, avTop(), {f, a});
    if (f->out->kind != AK::Fun)
      return node(AssignRule::TBot, e, sc, avBot());
    AV out = apply(f->out, a->out, fuel);
    PNode *t = sub(f, out);
    t->clauseIn = a->out;
    return node(AssignRule::TApp, e, sc, out, {t, a});
  }

  AV apply(const AV &fn, const AV &arg, std::size_t fuel) {
    AV acc = avBot();
    for (Flow *f : fn->funs) {
      if (f->opaque) {
        for (std::size_t i = 0; i < f->formula.clauseCount(); ++i)
          if (consume(arg, f->formula.clause(i).input, fuel))
            acc = join(acc, fromFormula(f->formula.clause(i).output));
        continue;
      }
      AV binding = view(arg);
      std::string x = freshName(f->lam.name(), names(f->scope));
      PNode *body = eval(instantiate(f->lam.child(0), var(x)), push(f->scope, x, binding),
                         fuel - 1);
      Clause &c = clauses_.emplace_back(Clause{binding, body});
      for (Flow *g = f; g; g = g->parent)
        g->clauses.push_back(&c);
      acc = join(acc, body->out);
    }
    return acc;
  }

  Formula fin(const Flow *f) {
    if (f->opaque)
      return f->formula;
    if (auto it = flowMemo_.find(f); it != flowMemo_.end()) {
      if (!it->second)
        throw Cyclic{};
      return *it->second;
    }
    flowMemo_[f] = std::nullopt;
    std::vector<std::pair<Formula, Formula>> cs;
    for (const Clause *c : f->clauses)
      cs.emplace_back(fin(c->input), fin(c->body->out));
    Formula r = fFun(std::move(cs));
    flowMemo_[f] = r;
    return r;
  }

  Formula fin(const AV &a) {
    if (auto it = avMemo_.find(a.get()); it != avMemo_.end())
      return it->second;
    Formula r;
    switch (a->kind) {
    case AK::Bot: r = fBot(); break;
    case AK::Top: r = fTop(); break;
    case AK::BotV: r = fBotV(); break;
    case AK::Sym: r = fSym(a->sym); break;
    case AK::Pair: r = fPair(fin(a->kids[0]), fin(a->kids[1])); break;
    case AK::Set: {
      std::vector<Formula> elems;
      for (const auto &k : a->kids)
        elems.push_back(fin(k));
      r = fSet(std::move(elems));
      break;
    }
    case AK::Fun: {
      std::vector<Formula> parts;
      for (const Flow *f : a->funs)
        parts.push_back(fin(f));
      r = formJoinAll(parts, table_);
      break;
    }
    }
    avMemo_.emplace(a.get(), r);
    return r;
  }

  std::shared_ptr<const FormEnv> envOf(const Scope *sc) {
    if (auto it = envMemo_.find(sc); it != envMemo_.end())
      return it->second;
    std::shared_ptr<const FormEnv> r;
    if (!sc) {
      r = std::make_shared<const FormEnv>();
    } else {
      auto m = std::make_shared<FormEnv>(*envOf(sc->parent));
      (*m)[sc->name] = fin(sc->value);
      r = m;
    }
    envMemo_.emplace(sc, r);
    return r;
  }

  DerivationPtr toDeriv(PNode *n) {
    if (auto it = derivMemo_.find(n); it != derivMemo_.end())
      return it->second;
    auto d = std::make_shared<Derivation>();
    d->env = envOf(n->scope);
    d->expr = n->expr;
    d->rule = n->rule;
    if (n->rule == AssignRule::TSub) {
      DerivationPtr p = toDeriv(n->premises[0]);
      if (n->fixed)
        d->formula = *n->fixed;
      else if (n->clauseIn)
        d->formula = fFun({{fin(n->clauseIn), fin(n->out)}});
      else
        d->formula = fin(n->out);
      if (d->formula == p->formula) {
        derivMemo_.emplace(n, p);
        return p;
      }
      d->premises.push_back(std::move(p));
    } else {
      d->formula = fin(n->out);
      if (n->rule == AssignRule::TFun) {
        std::vector<std::pair<Formula, Formula>> seen;
        for (const Clause *c : n->funRoot->clauses) {
          std::pair<Formula, Formula> key{fin(c->input), fin(c->body->out)};
          if (std::find(seen.begin(), seen.end(), key) != seen.end())
            continue;
          seen.push_back(key);
          d->premises.push_back(toDeriv(c->body));
        }
      } else {
        for (PNode *p : n->premises)
          d->premises.push_back(toDeriv(p));
      }
    }
    DerivationPtr out = d;
    derivMemo_.emplace(n, out);
    return out;
  }

  const SymbolTable &table_;
  std::deque<Scope> scopes_;
  std::deque<Flow> flows_;
  std::deque<PNode> nodes_;
  std::deque<Clause> clauses_;
  std::unordered_map<const Flow *, std::optional<Formula>> flowMemo_;
  std::unordered_map<const AVal *, Formula> avMemo_;
  std::unordered_map<const Scope *, std::shared_ptr<const FormEnv>> envMemo_;
  std::unordered_map<const PNode *, DerivationPtr> derivMemo_;
};

DerivationPtr leaf(const FormEnv &env, const Expr &e, Formula phi, AssignRule r) {
  auto d = std::make_shared<Derivation>();
  d->env = std::make_shared<const FormEnv>(env);
  d->expr = e;
  d->formula = std::move(phi);
  d->rule = r;
  return d;
}

} // namespace

CheckResult checkAssign(const FormEnv &env, const Expr &e, const Formula &phi,
                        std::size_t depth, const SymbolTable &table) {
  if (phi.kind() == FKind::Bot)
    return {leaf(env, e, fBot(), AssignRule::TBot), 0};
  if (phi.kind() == FKind::BotV && e.isValue())
    return {leaf(env, e, fBotV(), AssignRule::TBotV), 0};
  if (e.looseBound() != 0)
    return {nullptr, depth};
  for (const auto &x : freeVars(e))
    if (!env.count(x))
      return {nullptr, depth};
  for (const auto &[x, tau] : env)
    if (!tau.isValue())
      return {nullptr, depth};

  for (std::size_t fuel = 1; fuel <= depth; ++fuel) {
    Machine m(table);
    const Scope *sc = nullptr;
    for (const auto &[x, tau] : env)
      sc = m.push(sc, x, m.fromFormula(tau));
    try {
      PNode *root = m.eval(e, sc, fuel);
      if (!m.consume(root->out, phi, fuel))
        continue;
      DerivationPtr d = m.build(root);
      if (d->formula != phi) {
        auto s = std::make_shared<Derivation>();
        s->env = d->env;
        s->expr = e;
        s->formula = phi;
        s->rule = AssignRule::TSub;
        s->premises.push_back(d);
        d = s;
      }
      if (validateDerivation(*d, table))
        continue;
      return {d, fuel};
    } catch (const Cyclic &) {
      continue;
    }
  }
  return {nullptr, depth};
}

} // namespace lambdav
