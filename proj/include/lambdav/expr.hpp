#pragma once

#include "lambdav/symbol.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lambdav {

// Bound variables are de Bruijn indices, free variables are names
// (locally nameless). Binder names are kept only as printing hints, so
// structural equality is alpha-equivalence.
enum class Kind : std::uint8_t {
  Bot,
  Top,
  BotV,
  Var,   // free variable, by name
  Bound, // bound variable, by index
  Lam,
  Pair,
  Sym,
  Set,
  App,
  LetPair, // children: scrutinee, body (binds two: first component is index 1)
  LetSym,  // children: scrutinee, body
  BigJoin, // children: source, body (binds one)
  Join,
};

const char *kindName(Kind k);

class Expr;

struct Node;

class Expr {
public:
  Expr(); // Bot

  Kind kind() const;
  std::size_t hash() const;

  // Free-variable name (Var) or binder hints (Lam, LetPair, BigJoin).
  const std::string &name() const;
  const std::string &name2() const;
  std::uint32_t index() const; // Bound
  Symbol symbol() const;       // Sym, LetSym threshold

  std::span<const Expr> children() const;
  const Expr &child(std::size_t i) const;
  std::size_t arity() const;

  bool isValue() const;
  bool isResult() const;
  bool hasFreeVars() const;
  // 1 + the largest dangling de Bruijn index, 0 when locally closed.
  std::uint32_t looseBound() const;
  bool isClosed() const { return !hasFreeVars() && looseBound() == 0; }
  std::size_t size() const;

  // Structural equality; because binders are nameless this is alphaEq.
  friend bool operator==(const Expr &a, const Expr &b);
  friend bool operator!=(const Expr &a, const Expr &b) { return !(a == b); }

  // Deterministic total order (does not depend on interning order).
  friend int compare(const Expr &a, const Expr &b);

  const Node *raw() const { return node_.get(); }

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend Expr makeNode(Kind, std::vector<Expr>, Symbol, std::string,
                       std::string, std::uint32_t);
};

// Constructors. Binding constructors take the *name* of a free variable in
// the body and abstract it.
Expr bot();
Expr top();
Expr botv();
Expr var(std::string name);
Expr boundVar(std::uint32_t index);
Expr lam(const std::string &x, const Expr &body);
Expr pair(Expr a, Expr b);
Expr symbol(Symbol s);
Expr symbol(std::string_view name);
Expr setLit(std::vector<Expr> elems);
Expr app(Expr f, Expr a);
Expr letPair(const std::string &x1, const std::string &x2, Expr scrutinee,
             const Expr &body);
Expr letSym(Symbol s, Expr scrutinee, Expr body);
Expr bigJoin(const std::string &x, Expr source, const Expr &body);
Expr join(Expr a, Expr b);
// Right-nested join of all elements; bot() when empty.
Expr joinAll(std::span<const Expr> parts);

// Raw constructors on already-abstracted bodies (used by rewriting code).
Expr lamRaw(std::string hint, Expr body);
Expr letPairRaw(std::string h1, std::string h2, Expr scrutinee, Expr body);
Expr bigJoinRaw(std::string hint, Expr source, Expr body);

// Rebuild `e` with new children, keeping kind and annotations.
Expr withChildren(const Expr &e, std::vector<Expr> children);

// Replace free variable x by v. v must be locally closed; capture cannot
// occur because bound variables are nameless.
Expr substitute(const Expr &e, const std::string &x, const Expr &v);

// Instantiate the outermost bound variables of a binder body.
// For one binder: index 0 := v. For LetPair: index 1 := first, 0 := second.
Expr instantiate(const Expr &body, const Expr &v);
Expr instantiate2(const Expr &body, const Expr &first, const Expr &second);

// Abstract free variable x into bound index `depth` (used by the binders).
Expr abstractVar(const Expr &body, const std::string &x, std::uint32_t depth = 0);

bool alphaEq(const Expr &a, const Expr &b);

std::set<std::string> freeVars(const Expr &e);

// A name that does not occur free in any of `avoid`.
std::string freshName(const std::string &hint, const std::set<std::string> &avoid);

// Binder-body opening with a fresh free name (for inspection under binders).
struct Opened {
  std::string name;
  Expr body;
};
Opened openBinder(const Expr &binder, const std::set<std::string> &avoid);

} // namespace lambdav

template <> struct std::hash<lambdav::Expr> {
  std::size_t operator()(const lambdav::Expr &e) const noexcept {
    return e.hash();
  }
};
