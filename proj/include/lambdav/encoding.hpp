#pragma once

#include "lambdav/expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lambdav {

// Data encodings shared by the desugarer and the printers.
//   0     = ('zero, ⊥_v)       n + 1   = ('succ, n)
//   []    = ('nil, ⊥_v)        h :: t  = ('cons, (h, t))
//   C e   = ('C, e)            {f = v} = \x. let 'f = x in v
Expr natExpr(std::uint64_t n);
std::optional<std::uint64_t> decodeNat(const Expr &e);

Expr nilExpr();
Expr consExpr(Expr head, Expr tail);
Expr listExpr(const std::vector<Expr> &elems);

struct DecodedList {
  std::vector<Expr> elems;
  std::optional<Expr> tail; // empty when the list ends in nil
};
// Succeeds on cons cells and nil; `tail` holds whatever ends a partial list.
std::optional<DecodedList> decodeList(const Expr &e);

// Field name and value, in the order they appear in the join.
using Fields = std::vector<std::pair<std::string, Expr>>;
std::optional<Fields> decodeRecord(const Expr &e);

Expr stringExpr(const std::string &text); // symbol named "\"text\""

} // namespace lambdav
