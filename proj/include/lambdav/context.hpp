#pragma once

#include "lambdav/expr.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdav {

// One-hole evaluation context, represented by the child-index path from the
// root to the hole. Only paths that follow the ECtx grammar are valid.
struct EvalCtx {
  std::vector<std::uint32_t> path;

  bool isHole() const { return path.empty(); }
  EvalCtx extended(std::uint32_t i) const;
  EvalCtx prefixed(std::uint32_t i) const;

  friend bool operator==(const EvalCtx &, const EvalCtx &) = default;
  friend auto operator<=>(const EvalCtx &, const EvalCtx &) = default;
};

// "/0/1" style; the hole at the root is "/".
std::string formatPath(const EvalCtx &c);
EvalCtx parsePath(std::string_view text);

// Child positions of `e` that are evaluation-context positions.
std::vector<std::uint32_t> evalChildren(const Expr &e);

bool isEvalCtx(const Expr &e, const EvalCtx &c);
const Expr &subtermAt(const Expr &e, const EvalCtx &c);
Expr plug(const Expr &e, const EvalCtx &c, const Expr &filler);

// Every evaluation-context position of e, root first (preorder).
std::vector<EvalCtx> evalPositions(const Expr &e);

bool isRedex(const Expr &e, const SymbolTable &table = SymbolTable::discrete());

// Every E, e' with E[e'] = e where e' is a redex, or ⊤ under a non-empty E.
std::vector<std::pair<EvalCtx, Expr>>
decompose(const Expr &e, const SymbolTable &table = SymbolTable::discrete());

} // namespace lambdav
