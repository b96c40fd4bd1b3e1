#pragma once

#include "lambdav/expr.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambdav {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourceLoc loc, const std::string &msg);
  SourceLoc loc() const { return loc_; }

private:
  SourceLoc loc_;
};

struct SPat;
using SPatPtr = std::shared_ptr<const SPat>;

struct SPat {
  enum class Tag { Wild, Var, Nat, Sym, Tuple, Nil, Cons, Record, Ctor, Succ };
  Tag tag = Tag::Wild;
  std::string name; // Var, Sym (strings keep their quotes), Ctor
  std::uint64_t nat = 0;
  std::vector<SPatPtr> args;       // Tuple: 2, Cons: 2, Ctor: 0 or 1, Succ: 1
  std::vector<std::string> fields; // Record puns
  SourceLoc loc;
};

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SExpr {
  enum class Tag {
    Var, Nat, Sym, Bot, Top, BotV,
    Lam,    // pats: params, args: body
    App,    // args: f, a
    Tuple,  // args: 2 (nested right for longer tuples)
    Set,    // args: elements
    Record, // fields + args
    List,   // args: elements
    Cons,   // args: head, tail
    Ctor,   // name, args: 0 or 1
    Succ,   // args: 1
    Let,    // pats: 1, args: bound, body
    If,     // args: cond, then, else
    Case,   // args: scrutinee, arm bodies; pats: arm patterns
    For,    // name: binder, args: source, body
    Join,   // args: 2
    BinOp,  // name: operator, args: 2
    Proj,   // name: field, args: 1
  };
  Tag tag = Tag::Bot;
  std::string name;
  std::uint64_t nat = 0;
  std::vector<SExprPtr> args;
  std::vector<SPatPtr> pats;
  std::vector<std::string> fields;
  SourceLoc loc;
};

struct SurfaceDef {
  std::string name;
  std::vector<SPatPtr> params;
  SExprPtr body;
  SourceLoc loc;
};

struct SurfaceProgram {
  std::vector<SurfaceDef> defs;
  SExprPtr main; // null when the text has only definitions
};

SurfaceProgram parseProgram(std::string_view text);

// Core term of a program. Definitions from the standard prelude are
// available unless shadowed. Throws ParseError on unbound identifiers,
// duplicate definitions, mutual recursion or a missing main expression.
Expr desugar(const SurfaceProgram &program);

// parseProgram + desugar.
Expr compile(std::string_view text);
Expr compileFile(const std::string &path);

// Source text of the prelude (plus, diff, comparisons, booleans, head).
std::string_view preludeSource();

} // namespace lambdav
