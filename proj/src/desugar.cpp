#include "lambdav/encoding.hpp"
#include "lambdav/surface.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lambdav {

namespace {

using Scope = std::set<std::string>;

// Fixed-point combinator Z = \f. (\x. f (\y. x x y)) (\x. f (\y. x x y)).
Expr zCombinator() {
  Expr half = lam("x", app(var("f"), lam("y", app(app(var("x"), var("x")), var("y")))));
  return lam("f", app(half, half));
}

const char *operatorDef(const std::string &op) {
  static const std::map<std::string, const char *> table = {
      {"+", "plus"}, {"==", "eq"}, {"<", "lt"},   {"<=", "le"},
      {">", "gt"},   {">=", "ge"}, {"&&", "and"}, {"||", "or"}};
  auto it = table.find(op);
  return it == table.end() ? nullptr : it->second;
}

SPatPtr mkp(SPat p) { return std::make_shared<const SPat>(std::move(p)); }

SPatPtr symPat(const std::string &name) {
  return mkp({.tag = SPat::Tag::Sym, .name = name});
}
SPatPtr wildPat() { return mkp({.tag = SPat::Tag::Wild}); }
SPatPtr tuplePat(SPatPtr a, SPatPtr b) {
  SPat p{.tag = SPat::Tag::Tuple};
  p.args = {std::move(a), std::move(b)};
  return mkp(std::move(p));
}

// Rewrites data patterns to tuples of symbol tags.
SPatPtr lowerPattern(const SPatPtr &p) {
  switch (p->tag) {
  case SPat::Tag::Nat: {
    SPatPtr acc = tuplePat(symPat(sym::zero().name()), wildPat());
    for (std::uint64_t i = 0; i < p->nat; ++i)
      acc = tuplePat(symPat(sym::succ().name()), acc);
    return acc;
  }
  case SPat::Tag::Nil:
    return tuplePat(symPat(sym::nil().name()), wildPat());
  case SPat::Tag::Cons:
    return tuplePat(symPat(sym::cons().name()), tuplePat(p->args[0], p->args[1]));
  case SPat::Tag::Ctor:
    return tuplePat(symPat(p->name), p->args.empty() ? wildPat() : p->args[0]);
  case SPat::Tag::Succ:
    return tuplePat(symPat(sym::succ().name()), p->args[0]);
  default:
    return p;
  }
}

void patternVars(const SPatPtr &p, Scope &out) {
  if (p->tag == SPat::Tag::Var)
    out.insert(p->name);
  for (const auto &f : p->fields)
    out.insert(f);
  for (const auto &a : p->args)
    patternVars(a, out);
}

class Desugarer {
public:
  explicit Desugarer(const std::set<std::string> &globals) : globals_(globals) {}

  std::set<std::string> referenced;

  Expr expr(const SExprPtr &e, const Scope &scope) {
    using T = SExpr::Tag;
    switch (e->tag) {
    case T::Var:
      if (!scope.count(e->name)) {
        if (!globals_.count(e->name))
          throw ParseError(e->loc, "unbound identifier '" + e->name + "'");
        referenced.insert(e->name);
      }
      return var(e->name);
    case T::Nat:
      return natExpr(e->nat);
    case T::Sym:
      return symbol(e->name);
    case T::Bot:
      return bot();
    case T::Top:
      return top();
    case T::BotV:
      return botv();
    case T::Lam:
      return lambda(e->pats, e->args[0], scope);
    case T::App:
      return app(expr(e->args[0], scope), expr(e->args[1], scope));
    case T::Tuple:
      return pair(expr(e->args[0], scope), expr(e->args[1], scope));
    case T::Set: {
      std::vector<Expr> elems;
      for (const auto &a : e->args)
        elems.push_back(expr(a, scope));
      return setLit(std::move(elems));
    }
    case T::List: {
      std::vector<Expr> elems;
      for (const auto &a : e->args)
        elems.push_back(expr(a, scope));
      return listExpr(elems);
    }
    case T::Cons:
      return consExpr(expr(e->args[0], scope), expr(e->args[1], scope));
    case T::Ctor:
      return pair(symbol(e->name), e->args.empty() ? botv() : expr(e->args[0], scope));
    case T::Succ:
      return pair(symbol(sym::succ()), expr(e->args[0], scope));
    case T::Record:
      return record(*e, scope);
    case T::Let: {
      Scope inner = scope;
      patternVars(e->pats[0], inner);
      return match(e->pats[0], expr(e->args[0], scope), expr(e->args[1], inner));
    }
    case T::If: {
      Expr thenE = expr(e->args[1], scope);
      Expr elseE = expr(e->args[2], scope);
      return bindScrutinee(expr(e->args[0], scope), "c", [&](const Expr &x) {
        return join(letSym(sym::trueSym(), x, thenE),
                    letSym(sym::falseSym(), x, elseE));
      });
    }
    case T::Case: {
      std::vector<std::pair<SPatPtr, Expr>> arms;
      for (std::size_t i = 0; i < e->pats.size(); ++i) {
        Scope inner = scope;
        patternVars(e->pats[i], inner);
        arms.emplace_back(e->pats[i], expr(e->args[i + 1], inner));
      }
      return bindScrutinee(expr(e->args[0], scope), "s", [&](const Expr &x) {
        std::vector<Expr> parts;
        for (auto &[p, body] : arms)
          parts.push_back(match(p, x, body));
        return joinAll(parts);
      });
    }
    case T::For: {
      Scope inner = scope;
      inner.insert(e->name);
      return bigJoin(e->name, expr(e->args[0], scope), expr(e->args[1], inner));
    }
    case T::Join:
      return join(expr(e->args[0], scope), expr(e->args[1], scope));
    case T::BinOp: {
      const char *fn = operatorDef(e->name);
      if (!fn || !globals_.count(fn))
        throw ParseError(e->loc, "operator '" + e->name + "' is not available");
      referenced.insert(fn);
      return app(app(var(fn), expr(e->args[0], scope)), expr(e->args[1], scope));
    }
    case T::Proj:
      return app(expr(e->args[0], scope), symbol(e->name));
    }
    throw ParseError(e->loc, "unsupported expression");
  }

  Expr lambda(const std::vector<SPatPtr> &params, const SExprPtr &body,
              const Scope &scope) {
    Scope inner = scope;
    for (const auto &p : params)
      patternVars(p, inner);
    Expr acc = expr(body, inner);
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      const SPatPtr &p = *it;
      if (p->tag == SPat::Tag::Var) {
        acc = lam(p->name, acc);
      } else {
        std::string x = internal();
        acc = binder(x, hintFor(*p), match(p, var(x), acc));
      }
    }
    return acc;
  }

private:
  const std::set<std::string> &globals_;
  int counter_ = 0;

  // Names no surface identifier can spell.
  std::string internal() { return "%" + std::to_string(++counter_); }

  static std::string hintFor(const SPat &p) {
    if (p.tag == SPat::Tag::Var)
      return p.name;
    if (p.tag == SPat::Tag::Wild)
      return "_";
    return "p";
  }

  static Expr binder(const std::string &x, const std::string &hint, const Expr &body) {
    return lamRaw(hint, abstractVar(body, x, 0));
  }

  Expr bindScrutinee(const Expr &s, const std::string &hint,
                     const std::function<Expr(const Expr &)> &k) {
    if (s.kind() == Kind::Var)
      return k(s);
    std::string x = internal();
    return app(binder(x, hint, k(var(x))), s);
  }

  Expr match(const SPatPtr &raw, const Expr &scrut, const Expr &body) {
    SPatPtr p = lowerPattern(raw);
    switch (p->tag) {
    case SPat::Tag::Var:
      if (scrut.kind() == Kind::Var)
        return substitute(body, p->name, scrut);
      return app(lam(p->name, body), scrut);
    case SPat::Tag::Wild:
      if (scrut.isValue())
        return body;
      return app(lamRaw("_", body), scrut);
    case SPat::Tag::Sym:
      return letSym(Symbol(p->name), scrut, body);
    case SPat::Tag::Tuple: {
      const SPatPtr &p1 = p->args[0];
      const SPatPtr &p2 = p->args[1];
      std::string n1 = p1->tag == SPat::Tag::Var ? p1->name : internal();
      std::string n2 = p2->tag == SPat::Tag::Var ? p2->name : internal();
      Expr inner = body;
      if (p2->tag != SPat::Tag::Var)
        inner = match(p2, var(n2), inner);
      if (p1->tag != SPat::Tag::Var)
        inner = match(p1, var(n1), inner);
      Expr abstracted = abstractVar(inner, n2, 0);
      if (n1 != n2)
        abstracted = abstractVar(abstracted, n1, 1);
      return letPairRaw(hintFor(*p1), hintFor(*p2), scrut, abstracted);
    }
    case SPat::Tag::Record:
      return bindScrutinee(scrut, "r", [&](const Expr &x) {
        Expr acc = body;
        for (auto it = p->fields.rbegin(); it != p->fields.rend(); ++it)
          acc = app(lam(*it, acc), app(x, symbol(*it)));
        return acc;
      });
    default:
      throw ParseError(p->loc, "unsupported pattern");
    }
  }

  Expr record(const SExpr &e, const Scope &scope) {
    std::vector<std::pair<std::string, Expr>> lets;
    std::vector<Expr> arms;
    std::string x = internal();
    for (std::size_t i = 0; i < e.fields.size(); ++i) {
      Expr v = expr(e.args[i], scope);
      if (!v.isValue()) {
        std::string y = internal();
        lets.emplace_back(y, v);
        v = var(y);
      }
      arms.push_back(letSym(Symbol(e.fields[i]), var(x), v));
    }
    Expr acc = binder(x, "x", joinAll(arms));
    for (auto it = lets.rbegin(); it != lets.rend(); ++it)
      acc = app(binder(it->first, "y", acc), it->second);
    return acc;
  }
};

struct DefInfo {
  const SurfaceDef *def = nullptr;
  Expr core;
  std::set<std::string> deps;
};

const SurfaceProgram &prelude() {
  static const SurfaceProgram p = parseProgram(preludeSource());
  return p;
}

} // namespace

Expr desugar(const SurfaceProgram &program) {
  if (!program.main)
    throw ParseError({1, 1}, "program has no main expression");
  std::map<std::string, const SurfaceDef *> defs;
  for (const auto &d : prelude().defs)
    defs[d.name] = &d;
  for (const auto &d : program.defs)
    defs[d.name] = &d;
  std::set<std::string> globals;
  for (const auto &[name, _] : defs)
    globals.insert(name);

  Desugarer main(globals);
  Expr mainCore = main.expr(program.main, {});

  // Desugar every definition reachable from main.
  std::map<std::string, DefInfo> infos;
  std::vector<std::string> work(main.referenced.begin(), main.referenced.end());
  while (!work.empty()) {
    std::string name = work.back();
    work.pop_back();
    if (infos.count(name))
      continue;
    const SurfaceDef *d = defs.at(name);
    Desugarer ds(globals);
    Scope scope;
    Expr core = d->params.empty() ? ds.expr(d->body, scope)
                                  : ds.lambda(d->params, d->body, scope);
    infos[name] = {d, core, ds.referenced};
    for (const auto &dep : ds.referenced)
      work.push_back(dep);
  }

  // Dependency order; only direct self-recursion is supported.
  std::vector<std::string> order;
  std::map<std::string, int> state;
  std::function<void(const std::string &, std::vector<std::string> &)> visit =
      [&](const std::string &n, std::vector<std::string> &stack) {
        if (state[n] == 2)
          return;
        if (state[n] == 1) {
          std::string cycle;
          for (auto it = std::find(stack.begin(), stack.end(), n); it != stack.end(); ++it)
            cycle += *it + " -> ";
          throw ParseError(infos[n].def->loc,
                           "mutual recursion is not supported: " + cycle + n);
        }
        state[n] = 1;
        stack.push_back(n);
        for (const auto &dep : infos[n].deps)
          if (dep != n)
            visit(dep, stack);
        stack.pop_back();
        state[n] = 2;
        order.push_back(n);
      };
  for (const auto &[name, _] : infos) {
    std::vector<std::string> stack;
    visit(name, stack);
  }

  // Close each definition over its dependencies.
  std::map<std::string, Expr> closed;
  std::set<std::string> valueDefs;
  for (const auto &name : order) {
    DefInfo &info = infos[name];
    Expr core = info.core;
    for (const auto &dep : info.deps)
      if (dep != name && valueDefs.count(dep))
        core = substitute(core, dep, closed.at(dep));
    if (info.deps.count(name)) {
      if (info.def->params.empty())
        throw ParseError(info.def->loc,
                         "recursive definition '" + name + "' needs a parameter");
      // \a. Z (\name. core) a
      Expr fixed = app(zCombinator(), lam(name, core));
      core = lamRaw("a", app(fixed, boundVar(0)));
    }
    closed[name] = core;
    if (core.isValue())
      valueDefs.insert(name);
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Expr &core = closed.at(*it);
    if (valueDefs.count(*it))
      mainCore = substitute(mainCore, *it, core);
    else if (freeVars(mainCore).count(*it))
      mainCore = app(lam(*it, mainCore), core);
  }
  return mainCore;
}

Expr compile(std::string_view text) { return desugar(parseProgram(text)); }

Expr compileFile(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError({0, 0}, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return compile(buf.str());
}

} // namespace lambdav
